import math
import random
from fractions import Fraction

import pytest

from surfsplit.ellipt import (EllipticCurve, count_anti_isometries,
                              enumerate_curves, frobenius_matrix,
                              frobenius_matrix_model, hurwitz_weighted_count,
                              point_count, relative_conductor, strata,
                              sum_relcond_closed_form,
                              supersingular_trace0_count, symplectic_type,
                              torsion_aut_size, torsion_basis,
                              torsion_extension_degree, weil_pairing)
from surfsplit.gf import make_field
from surfsplit.numth import factorize, psi
from surfsplit.quadorders import kronecker_class_number

rng = random.Random(20260826)


def _random_curves(q, n):
    F = make_field(*factorize(q).factors[0])
    out = []
    while len(out) < n:
        a4, a6 = rng.randrange(q), rng.randrange(q)
        try:
            out.append(EllipticCurve(F, a4, a6))
        except ValueError:
            continue
    return out


def test_point_count_exhaustive_cross():
    """point_count vs direct quadratic-character sum."""
    for q in (5, 13, 49, 101):
        for E in _random_curves(q, 3):
            n = 1 + sum(1 + _chi(E.rhs(x)) for x in E.field.elements())
            assert point_count(E) == n


def _chi(v):
    if not v:
        return 0
    return 1 if v.is_square() else -1


def test_group_law_and_order_annihilation():
    for q in (7, 125):
        for E in _random_curves(q, 2):
            n = point_count(E)
            pts = [P for P in _some_points(E, 5)]
            for P in pts:
                assert E.mul(n, P) is None
            if len(pts) >= 2:
                P, Q = pts[0], pts[1]
                assert E.add(P, Q) == E.add(Q, P)


def _some_points(E, k):
    out = []
    for x in E.field.elements():
        v = E.rhs(x)
        if v.is_square():
            from surfsplit.gf import sqrt_fq
            y = sqrt_fq(v)
            if y is not None and y:
                out.append((x, y))
        if len(out) == k:
            break
    return out


def test_enumeration_mass_and_trace_bound():
    for q in (5, 7, 25, 49):
        curves = enumerate_curves(q)
        assert sum(w for _, w in curves) == q
        for E, _ in curves:
            assert E.trace**2 <= 4 * q


def test_isogeny_class_sizes_are_kronecker_class_numbers():
    """Ordinary classes of trace a have H(a^2 - 4q) isomorphism classes."""
    for q in (5, 11, 13, 49):
        p = factorize(q).factors[0][0]
        by_trace = {}
        for E, _ in enumerate_curves(q):
            by_trace[E.trace] = by_trace.get(E.trace, 0) + 1
        for a, cnt in by_trace.items():
            if math.gcd(a, p) == 1:
                assert cnt == kronecker_class_number(a * a - 4 * q), (q, a)


def test_strata_partition_isogeny_class():
    for q in (7, 13):
        lim = math.isqrt(4 * q)
        for a in range(-lim, lim + 1):
            if math.gcd(a, q) != 1:
                continue
            st = strata(q, a)
            assert sum(s.size for s in st) == kronecker_class_number(a * a - 4 * q)
            # relcond values are exactly the divisors of cond(Z[pi]) prime to p
            conds = sorted(s.relcond for s in st)
            d = st[0].order_disc  # any; fundamental part shared
            assert len(set(conds)) == len(conds)


def test_relative_conductor_matches_strata():
    """relcond(E) over an enumeration covers each stratum h(O) times."""
    for q in (5, 7, 11):
        tally = {}
        for E, _ in enumerate_curves(q):
            if E.is_ordinary:
                tally[(E.trace, relative_conductor(E))] = \
                    tally.get((E.trace, relative_conductor(E)), 0) + 1
        for a in sorted({a for a, _ in tally}):
            for s in strata(q, a):
                assert tally.get((a, s.relcond), 0) == s.size, (q, a, s)


def test_sum_relcond_closed_form_vs_enumeration():
    for q in (5, 7, 11, 13, 25):
        brute = sum(relative_conductor(E) for E, _ in enumerate_curves(q)
                    if E.is_ordinary)
        assert sum_relcond_closed_form(q) == brute


def test_hurwitz_weighted_count_vs_enumeration():
    for q in (5, 13):
        masses = {}
        for E, w in enumerate_curves(q):
            masses[E.trace] = masses.get(E.trace, Fraction(0)) + w
        p = factorize(q).factors[0][0]
        for a, m in masses.items():
            if math.gcd(a, p) == 1:
                assert hurwitz_weighted_count(q, a) == m


def test_supersingular_trace0_twist_doubling():
    for p in (5, 7, 11, 13, 23):
        cnt = sum(1 for E, _ in enumerate_curves(p) if E.trace == 0)
        assert cnt == 2 * supersingular_trace0_count(p)


def test_weil_pairing_invariants():
    checked = 0
    for q in (7, 11, 13):
        for E in _random_curves(q, 4):
            for n in (2, 3, 4, 5):
                if point_count(E) % n or torsion_extension_degree(E, n) > 12:
                    continue
                tb = torsion_basis(E, n)
                Ek, P, Q = tb.curve, tb.P, tb.Q
                z = weil_pairing(Ek, P, Q, n)
                # primitive n-th root of unity
                acc = z
                for i in range(1, n):
                    assert not (acc == Ek.field.one and i < n)
                    acc = acc * z
                assert z**n == Ek.field.one and z != Ek.field.one
                # alternating + bilinear spot checks
                assert weil_pairing(Ek, Q, P, n) * z == Ek.field.one
                assert weil_pairing(Ek, Ek.mul(2, P), Q, n) == z * z
                checked += 1
    assert checked >= 6


def test_frobenius_matrix_charpoly():
    for q in (5, 11, 13):
        for E in _random_curves(q, 3):
            a = E.trace
            for n in (2, 3, 5):
                if math.gcd(n, q) > 1 or torsion_extension_degree(E, n) > 24:
                    continue
                m = frobenius_matrix(E, n)
                tr = (m[0][0] + m[1][1]) % n
                det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % n
                assert tr == a % n and det == q % n, (q, n)


def test_frobenius_matrix_model_conjugate():
    """Model matrix and honest matrix have equal charpoly and equal
    order/centralizer data mod n."""
    from surfsplit.ellipt import matrix_order_mod
    for q in (7, 13):
        for E in _random_curves(q, 2):
            if not E.is_ordinary:
                continue
            for n in (3, 4):
                if torsion_extension_degree(E, n) > 24:
                    continue
                hon = frobenius_matrix(E, n)
                mod = frobenius_matrix_model(q, E.trace,
                                             math.gcd(relative_conductor(E), n**2), n)
                assert matrix_order_mod(hon, n) == matrix_order_mod(mod, n)


def test_torsion_aut_sandwich_sample():
    for q in (5, 7, 11):
        for E, _ in enumerate_curves(q)[:6]:
            for n in (2, 3, 4):
                if math.gcd(n, q) > 1 or torsion_extension_degree(E, n) > 24:
                    continue
                g = math.gcd(n, relative_conductor(E) or n)
                aut = torsion_aut_size(E, n)
                phi = _phi(n)
                assert phi**2 * g**2 <= aut <= phi * psi(n) * g**2, (q, n)


def _phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_anti_isometry_count_is_symmetric():
    # the >= ell-1 lower bound needs ell = 1 mod 4 and lives in the
    # acceptance suite (ell = 5); here just structural sanity at ell = 3
    ell = 3
    curves = [E for E, _ in enumerate_curves(7)
              if E.is_ordinary and E.trace % ell and
              torsion_extension_degree(E, ell) <= 8][:4]
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            n_ij = count_anti_isometries(curves[i], curves[j], ell)
            n_ji = count_anti_isometries(curves[j], curves[i], ell)
            assert n_ij == n_ji >= 0


def test_symplectic_type_constant_on_torsion_conjugates():
    ell = 3
    types = {}
    for E, _ in enumerate_curves(7):
        if E.is_ordinary and E.trace % ell and torsion_extension_degree(E, ell) <= 8:
            types.setdefault(E.trace % ell, set()).add(symplectic_type(E, ell))
    # every ordinary trace class exhibits at least one type label
    assert all(len(v) >= 1 for v in types.values()) and types
