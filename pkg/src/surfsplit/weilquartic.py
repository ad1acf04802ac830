"""Quartic Weil polynomials T^4 - a1 T^3 + a2 T^2 - q a1 T + q^2 of abelian
surfaces over F_q, and their split/simple classification.

A surface is split iff its quartic factors into two elliptic-admissible
quadratics (T^2 - s T + q)(T^2 - t T + q); the integer factor traces are the
roots of y^2 - a1 y + (a2 - 2q). Admissibility of a quadratic trace is the
Waterhouse criterion (ordinary traces coprime to p, plus the finite list of
supersingular trace shapes). The split classes carry the four tags used for
census bookkeeping; everything here is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import gmpy2

from .numth import factorize


class SplitClass(Enum):
    SIMPLE = "Simple"
    ORDINARY_NONISOTYPIC = "OrdinaryNonisotypic"
    ORDINARY_ISOTYPIC = "OrdinaryIsotypic"
    ALMOST_ORDINARY = "AlmostOrdinary"
    SUPERSINGULAR_SPLIT = "SupersingularSplit"


@dataclass(frozen=True)
class WeilQuartic:
    q: int
    a1: int
    a2: int

    def __post_init__(self):
        ok, reason = _valid_quartic(self.q, self.a1, self.a2)
        if not ok:
            raise ValueError(reason)

    def coefficients(self) -> tuple[int, int, int, int, int]:
        """(1, -a1, a2, -q a1, q^2), the monic coefficient vector."""
        return (1, -self.a1, self.a2, -self.q * self.a1, self.q**2)


@dataclass(frozen=True)
class Classification:
    tag: SplitClass
    factors: tuple[int, int] | None  # (s, t) with s >= t when split


def _char_and_e(q: int) -> tuple[int, int]:
    f = factorize(q).factors
    if len(f) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return f[0]


def _valid_quartic(q: int, a1: int, a2: int) -> tuple[bool, str]:
    if q < 2:
        return False, "q must be a prime power >= 2"
    # real-rootedness of the associated real Weil polynomial:
    # |a1| <= 4 sqrt(q) and 2|a1| sqrt(q) - 2q <= a2 <= a1^2/4 + 2q
    if a1 * a1 > 16 * q:
        return False, f"|a1| = {abs(a1)} exceeds 4*sqrt(q)"
    if 4 * a2 > a1 * a1 + 8 * q:
        return False, f"a2 = {a2} exceeds a1^2/4 + 2q"
    # 2|a1|sqrt(q) <= a2 + 2q, both sides may be compared squared when rhs >= 0
    rhs = a2 + 2 * q
    if rhs < 0 or 4 * a1 * a1 * q > rhs * rhs:
        return False, f"a2 = {a2} below 2|a1|sqrt(q) - 2q"
    return True, ""


def elliptic_admissible(q: int, s: int) -> bool:
    """True iff T^2 - sT + q is the Weil polynomial of an elliptic curve/F_q."""
    p, e = _char_and_e(q)
    if s * s > 4 * q:
        return False
    if math.gcd(s, p) == 1:
        return True
    square = e % 2 == 0
    if s == 0:
        return (not square) or (p % 4 != 1)
    if s * s == q:
        return square and p % 3 != 1
    if s * s == 4 * q:
        return square
    if s * s == 2 * q:
        return p == 2 and not square
    if s * s == 3 * q:
        return p == 3 and not square
    return False


def _is_ordinary_trace(q: int, s: int) -> bool:
    p, _ = _char_and_e(q)
    return math.gcd(s, p) == 1


def classify(q: int, a1: int, a2: int) -> Classification:
    """Split/simple decision with the split tag and factor traces (s, t)."""
    WeilQuartic(q, a1, a2)  # validate
    disc = a1 * a1 - 4 * (a2 - 2 * q)
    if disc < 0 or not gmpy2.is_square(disc):
        return Classification(SplitClass.SIMPLE, None)
    r = math.isqrt(disc)
    if (a1 + r) % 2 != 0:
        return Classification(SplitClass.SIMPLE, None)
    s, t = (a1 + r) // 2, (a1 - r) // 2
    if not (elliptic_admissible(q, s) and elliptic_admissible(q, t)):
        return Classification(SplitClass.SIMPLE, None)
    s_ord, t_ord = _is_ordinary_trace(q, s), _is_ordinary_trace(q, t)
    if s_ord and t_ord:
        tag = SplitClass.ORDINARY_ISOTYPIC if s == t else SplitClass.ORDINARY_NONISOTYPIC
    elif s_ord or t_ord:
        tag = SplitClass.ALMOST_ORDINARY
    else:
        tag = SplitClass.SUPERSINGULAR_SPLIT
    return Classification(tag, (s, t))


def quartic_from_counts(q: int, n1: int, n2: int) -> WeilQuartic:
    """Recover (a1, a2) from #C(F_q) and #C(F_{q^2})."""
    a1 = q + 1 - n1
    num = a1 * a1 - (q * q + 1 - n2)
    if num % 2:
        raise ValueError(f"counts ({n1}, {n2}) have wrong parity for a Weil quartic")
    a2 = num // 2
    ok, reason = _valid_quartic(q, a1, a2)
    if not ok:
        raise ValueError(f"counts ({n1}, {n2}) are not consistent: {reason}")
    return WeilQuartic(q, a1, a2)


def base_extend(q: int, a1: int, a2: int, k: int) -> WeilQuartic:
    """The quartic whose roots are the k-th powers of the original roots.

    Newton power sums p_i of the roots, then the power sums of the k-th powers
    via the recursion on the original coefficients; implemented by running
    Newton's identities up to degree 4k and reading off p_k, p_2k, p_3k, p_4k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return WeilQuartic(q, a1, a2)
    e = [1, a1, a2, q * a1, q * q]  # e0..e4 (signs folded: f = sum (-1)^i e_i T^(4-i))
    n = 4 * k
    p = [0] * (n + 1)  # p[i] = power sum of roots, i >= 1
    for i in range(1, n + 1):
        acc = 0
        for j in range(1, min(i, 4) + 1):
            sign = -1 if j % 2 == 0 else 1
            acc += sign * e[j] * (p[i - j] if i > j else 0)
        if i <= 4:
            acc += (-1) ** (i + 1) * i * e[i]
        p[i] = acc
    # elementary symmetric functions of the k-th powers from p_k, p_2k, ...
    pk = [p[k * i] for i in range(1, 5)]
    E = [1, 0, 0, 0, 0]
    for i in range(1, 5):
        acc = 0
        for j in range(1, i + 1):
            sign = -1 if j % 2 == 0 else 1
            acc += sign * E[i - j] * pk[j - 1]
        E[i] = acc // i
    qk = q**k
    assert E[3] == qk * E[1] and E[4] == qk * qk, "power-sum bookkeeping broke"
    return WeilQuartic(qk, E[1], E[2])


def is_supersingular_quartic(q: int, a1: int, a2: int) -> bool:
    """All Frobenius roots have p-adic valuation e/2 (Newton slopes all 1/2):
    for q = p^e this is v_p(a1) >= e/2 and v_p(a2) >= e."""
    p, e = _char_and_e(q)
    def vp(n: int) -> float:
        if n == 0:
            return math.inf
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return v
    return 2 * vp(a1) >= e and vp(a2) >= e


GEOM_SPLIT_SWEEP = 24


def is_geometrically_split(q: int, a1: int, a2: int, kmax: int = GEOM_SPLIT_SWEEP) -> tuple[bool, int | None]:
    """(split over some F_{q^k}?, smallest witness k <= kmax).

    Supersingular quartics are geometrically split with no sweep needed; the
    witness reported for those is the smallest k at which classify() sees it,
    or None if the sweep misses (still True). The k <= 24 sweep bound is a
    heuristic stand-in for the exact root-of-unity criterion.
    """
    ss = is_supersingular_quartic(q, a1, a2)
    for k in range(1, kmax + 1):
        try:
            ext = base_extend(q, a1, a2, k)
        except ValueError:
            break
        if classify(ext.q, ext.a1, ext.a2).tag != SplitClass.SIMPLE:
            return True, k
    if ss:
        return True, None
    return False, None


def res_scalars_quartic(q: int, b: int) -> WeilQuartic:
    """Weil quartic x^4 - b x^2 + q^2 of the restriction of scalars of an
    elliptic curve over F_{q^2} with trace b; stored as (a1, a2) = (0, -b)."""
    if abs(b) > 2 * q:
        raise ValueError(f"|b| = {abs(b)} exceeds 2q")
    return WeilQuartic(q, 0, -b)
