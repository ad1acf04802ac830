import math

import pytest
import sympy

from surfsplit.weilquartic import (Classification, SplitClass, WeilQuartic,
                                   base_extend, classify, elliptic_admissible,
                                   is_geometrically_split,
                                   is_supersingular_quartic,
                                   quartic_from_counts, res_scalars_quartic)

T = sympy.Symbol("T")


def _poly(q, a1, a2):
    return sympy.Poly(T**4 - a1 * T**3 + a2 * T**2 - q * a1 * T + q * q, T)


def _all_quartics(q):
    lim = math.isqrt(16 * q)
    for a1 in range(-lim, lim + 1):
        for a2 in range(-2 * q - 1, a1 * a1 // 4 + 2 * q + 1):
            try:
                yield WeilQuartic(q, a1, a2)
            except ValueError:
                continue


def test_roots_on_weil_circle():
    """Every accepted quartic has all roots of absolute value sqrt(q)."""
    for q in (5, 9, 13):
        for wq in _all_quartics(q):
            import numpy as np
            roots = np.roots([1, -wq.a1, wq.a2, -q * wq.a1, q * q])
            for r in roots:
                # quadruple roots limit double-precision accuracy to ~eps^(1/4)
                assert abs(abs(r) - math.sqrt(q)) < 1e-3


def test_rejects_non_weil():
    with pytest.raises(ValueError):
        WeilQuartic(7, 11, 0)     # |a1| > 4 sqrt(q)
    with pytest.raises(ValueError):
        WeilQuartic(7, 0, 100)    # a2 too large
    with pytest.raises(ValueError):
        WeilQuartic(7, 10, -13)   # below the lower a2 bound


def _split_oracle(q, a1, a2):
    """Split iff the quartic factors as (T^2 - sT + q)(T^2 - tT + q) over Z.

    Integer polynomial division against every candidate s; for prime q every
    such factor is automatically the Weil polynomial of an elliptic curve."""
    P = _poly(q, a1, a2)
    for s in range(-math.isqrt(4 * q), math.isqrt(4 * q) + 1):
        quo, rem = sympy.div(P, sympy.Poly(T**2 - s * T + q, T))
        if rem.is_zero and quo == sympy.Poly(T**2 - (a1 - s) * T + q, T):
            return True
    return False


def test_classify_split_iff_elliptic_factorization_prime_field():
    for q in (5, 7, 11, 13):
        for wq in _all_quartics(q):
            cl = classify(q, wq.a1, wq.a2)
            want = _split_oracle(q, wq.a1, wq.a2)
            assert (cl.tag is not SplitClass.SIMPLE) == want, (q, wq.a1, wq.a2)
            if cl.tag is not SplitClass.SIMPLE:
                s, t = cl.factors
                assert s >= t and s + t == wq.a1 and s * t == wq.a2 - 2 * q


def test_classify_tags():
    assert classify(17, 6, 18).tag is SplitClass.ORDINARY_NONISOTYPIC
    assert classify(17, 1, 1).tag is SplitClass.SIMPLE  # disc 133 non-square
    # (s, t) = (1, 1): isotypic ordinary
    assert classify(5, 2, 1 + 10).tag is SplitClass.ORDINARY_ISOTYPIC
    # s ordinary, t = 0 supersingular
    assert classify(7, 3, 14).tag is SplitClass.ALMOST_ORDINARY
    # s = t = 0
    assert classify(7, 0, 14).tag is SplitClass.SUPERSINGULAR_SPLIT


def test_elliptic_admissible_prime_vs_enumeration():
    from surfsplit.ellipt import enumerate_curves
    for q in (5, 7, 13, 25):
        traces = {E.trace for E, _ in enumerate_curves(q)}
        lim = math.isqrt(4 * q)
        for s in range(-lim - 1, lim + 2):
            assert elliptic_admissible(q, s) == (s in traces), (q, s)


def test_quartic_from_counts_roundtrip():
    for q in (5, 11):
        for wq in _all_quartics(q):
            n1 = q + 1 - wq.a1
            n2 = q * q + 1 - (wq.a1 * wq.a1 - 2 * wq.a2)
            back = quartic_from_counts(q, n1, n2)
            assert (back.a1, back.a2) == (wq.a1, wq.a2)


def test_base_extend_newton_vs_roots():
    import numpy as np
    for q, a1, a2 in [(5, 2, 3), (7, 1, -2), (11, -4, 8), (13, 0, 0)]:
        roots = np.roots([1, -a1, a2, -q * a1, q * q])
        for k in (2, 3, 4):
            ext = base_extend(q, a1, a2, k)
            want_a1 = sum(r**k for r in roots)
            want_a2 = sum((roots[i] * roots[j]) ** k
                          for i in range(4) for j in range(i + 1, 4))
            assert abs(want_a1 - ext.a1) < 1e-6
            assert abs(want_a2 - ext.a2) < 1e-5


def test_res_scalars_and_supersingular():
    wq = res_scalars_quartic(5, 3)
    assert (wq.q, wq.a1, wq.a2) == (5, 0, -3)
    assert is_supersingular_quartic(5, 0, -10)        # b = 2q
    assert not is_supersingular_quartic(5, 1, 1)


def test_geometric_splitting():
    # a simple ordinary quartic that splits after base extension
    ok, k = is_geometrically_split(17, 6, 18)
    assert ok and k == 1
    # supersingular simple quartics are geometrically split
    for q, a1, a2 in [(7, 7, 21), (5, 5, 15)]:
        if is_supersingular_quartic(q, a1, a2):
            assert is_geometrically_split(q, a1, a2)[0]
