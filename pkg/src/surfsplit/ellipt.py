"""Elliptic curves over F_q (p >= 5): point counting, isomorphism-class
enumeration, strata and relative conductors, Frobenius matrices on torsion,
torsion automorphism counts, symplectic types, and anti-isometry counts.

Frobenius on E[n] is available through two routes:

* `frobenius_matrix(E, n)` — honest: build a torsion basis over the minimal
  extension and solve for the matrix of (x, y) -> (x^q, y^q);
* `frobenius_matrix_model(E, n)` — structural: for commutative End E = O',
  the prime-to-p torsion is a free rank-1 O'/nO'-module, so Frobenius is
  conjugate to multiplication by pi = u + r*w on a Z-basis (1, w) of O',
  where r = relcond(E). This gives an exact integer matrix representing the
  conjugacy class of Frobenius mod every n coprime to p at once, without
  large extension fields. The two routes are cross-validated in the tests.

relcond(E) itself is always computed honestly, by the division-polynomial
scalar test (Frobenius acts as an integer on E[r]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import gmpy2

from .gf import Field, FieldElement, FPoly, make_field, poly_roots, sqrt_fq
from .numth import divisors, factorize, kronecker_symbol, mobius_phi_sigma
from .quadorders import Discriminant, class_number, decompose, hurwitz_weighted_h

Point = tuple[FieldElement, FieldElement] | None  # None = point at infinity


# ------------------------------------------------------------------ the curve

class EllipticCurve:
    """y^2 = x^3 + a4 x + a6 over a Field with p >= 5."""

    def __init__(self, field: Field, a4, a6):
        self.field = field
        self.a4 = field.element(a4)
        self.a6 = field.element(a6)
        if not (4 * self.a4**3 + 27 * self.a6**2):
            raise ValueError("singular curve: 4a4^3 + 27a6^2 = 0")
        self._trace: int | None = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    def __repr__(self):
        return f"E(y^2=x^3+{self.a4}x+{self.a6} / {self.field})"

    def rhs(self, x: FieldElement) -> FieldElement:
        return x**3 + self.a4 * x + self.a6

    def f_poly(self) -> FPoly:
        return FPoly(self.field, [self.a6, self.a4, 0, 1])

    def j_invariant(self) -> FieldElement:
        num = 6912 * self.a4**3
        den = 4 * self.a4**3 + 27 * self.a6**2
        return num / den

    def is_on(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return y * y == self.rhs(x)

    # --- affine group law ---
    def neg(self, P: Point) -> Point:
        return None if P is None else (P[0], -P[1])

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 == -y2:
                return None
            lam = (3 * x1 * x1 + self.a4) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        return (x3, lam * (x1 - x3) - y1)

    def mul(self, n: int, P: Point) -> Point:
        if n < 0:
            return self.mul(-n, self.neg(P))
        R: Point = None
        while n:
            if n & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            n >>= 1
        return R

    @property
    def trace(self) -> int:
        if self._trace is None:
            self._trace = self.q + 1 - point_count(self)
        return self._trace

    @property
    def is_ordinary(self) -> bool:
        return math.gcd(self.trace, self.q) == 1

    def frobenius_point(self, P: Point, power: int = 1) -> Point:
        """(x, y) -> (x^(q^power), y^(q^power)) — for points over extensions."""
        if P is None:
            return None
        e = self.q**power
        return (P[0] ** e, P[1] ** e)

    def extension_curve(self, k: int) -> tuple["EllipticCurve", Field]:
        """The same curve viewed over F_{q^k} (deterministic embedding)."""
        F = self.field
        K = make_field(F.p, F.k * k)
        if F.k == 1:
            a4 = K.element(self.a4.coeffs[0])
            a6 = K.element(self.a6.coeffs[0])
        else:
            mod = FPoly(K, [K.element(c) for c in F.modulus])
            root = poly_roots(mod)[0]  # lex-smallest root: deterministic
            a4 = K.embed(self.a4, root)
            a6 = K.embed(self.a6, root)
        return EllipticCurve(K, a4, a6), K


# ------------------------------------------------------------- point counting

def _exhaustive_count(E: EllipticCurve) -> int:
    F = E.field
    sq = set()
    for e in F.elements():
        sq.add((e * e).coeffs)
    n = 1  # infinity
    for x in F.elements():
        v = E.rhs(x)
        if not v:
            n += 1
        elif v.coeffs in sq:
            n += 2
    return n


def _point_order(E: EllipticCurve, P: Point, bound: int) -> int:
    """Exact order of P given a multiple `bound` >= the group exponent."""
    # find some m <= bound with mP = O by BSGS, then reduce to exact order
    m = _bsgs_annihilator(E, P, bound)
    for pr, _ in factorize(m).factors:
        while m % pr == 0 and E.mul(m // pr, P) is None:
            m //= pr
    return m


def _bsgs_annihilator(E: EllipticCurve, P: Point, bound: int) -> int:
    """Smallest m in [1, bound] with mP = O (exists if bound >= order)."""
    s = math.isqrt(bound) + 1
    baby: dict[tuple, int] = {}
    R: Point = None
    for j in range(s + 1):
        key = (None,) if R is None else (R[0].coeffs, R[1].coeffs)
        if key not in baby:
            baby[key] = j
        R = E.add(R, P)
    gs = E.neg(E.mul(s, P))
    Q: Point = None
    best = None
    for i in range(s + 2):
        key = (None,) if Q is None else (Q[0].coeffs, Q[1].coeffs)
        if key in baby:
            m = i * s + baby[key]
            if m > 0:
                best = m
                break
        Q = E.add(Q, gs)
    if best is None:
        raise AssertionError("no annihilator found below bound")
    return best


def _random_point(E: EllipticCurve, rng) -> Point:
    F = E.field
    while True:
        x = F.element([rng.randrange(F.p) for _ in range(F.k)])
        y = sqrt_fq(E.rhs(x))
        if y is not None:
            return (x, y)


def point_count(E: EllipticCurve) -> int:
    """#E(F_q): exhaustive character sum for q <= 4096, BSGS above."""
    q = E.q
    if q <= 4096:
        return _exhaustive_count(E)
    if q > 10**8:
        raise ValueError("q too large")
    import random

    rng = random.Random(0xE11)
    s = math.isqrt(4 * q)
    lo, hi = q + 1 - s, q + 1 + s
    # twist by a deterministic nonsquare
    d = next(e for e in E.field.elements() if e and not e.is_square())
    Et = EllipticCurve(E.field, E.a4 * d * d, E.a6 * d * d * d)
    L, Lt = 1, 1
    for attempt in range(40):
        o = _point_order(E, _random_point(E, rng), hi)
        L = L * o // math.gcd(L, o)
        ot = _point_order(Et, _random_point(Et, rng), hi)
        Lt = Lt * ot // math.gcd(Lt, ot)
        cands = [N for N in range(lo + (-lo) % L, hi + 1, L)
                 if (2 * q + 2 - N) % Lt == 0]
        if len(cands) == 1:
            return cands[0]
    if q <= 10**6:
        return _exhaustive_count(E)
    raise RuntimeError("point_count: ambiguous BSGS order")


# ------------------------------------------------------- class enumeration

def _power_coset_reps(F: Field, d: int) -> list[FieldElement]:
    """Coset representatives of (F^x)^d in F^x."""
    sub = {(e**d).coeffs for e in F.elements() if e}
    subg = [e for e in F.elements() if e and e.coeffs in sub]
    reps, seen = [], set()
    for e in F.elements():
        if not e or e.coeffs in seen:
            continue
        reps.append(e)
        for s in subg:
            seen.add((e * s).coeffs)
    return reps


def enumerate_curves(q: int) -> list[tuple[EllipticCurve, Fraction]]:
    """One representative per F_q-isomorphism class with weight 1/#Aut.

    j-invariant loop: for j != 0, 1728 the two quadratic twists of
    y^2 = x^3 + 3kx + 2k, k = j/(1728 - j), have #Aut = 2; for j = 0 the
    gcd(6, q-1) sextic twists have #Aut = gcd(6, q-1); for j = 1728 the
    gcd(4, q-1) quartic twists have #Aut = gcd(4, q-1). Total mass = q.
    """
    if q > 10**4:
        raise ValueError("q too large for full enumeration")
    fac = factorize(q).factors
    if len(fac) != 1 or fac[0][0] < 5:
        raise ValueError("q must be a power of a prime >= 5")
    p, e = fac[0]
    F = make_field(p, e)
    d = next(x for x in F.elements() if x and not x.is_square())
    out: list[tuple[EllipticCurve, Fraction]] = []
    for j in F.elements():
        if not j:  # j = 0
            n_tw = math.gcd(6, q - 1)
            for b in _power_coset_reps(F, 6):
                out.append((EllipticCurve(F, 0, b), Fraction(1, n_tw)))
        elif j == F.element(1728):
            n_tw = math.gcd(4, q - 1)
            for a in _power_coset_reps(F, 4):
                out.append((EllipticCurve(F, a, 0), Fraction(1, n_tw)))
        else:
            k = j / (F.element(1728) - j)
            E = EllipticCurve(F, 3 * k, 2 * k)
            out.append((E, Fraction(1, 2)))
            out.append((EllipticCurve(F, 3 * k * d * d, 2 * k * d * d * d), Fraction(1, 2)))
    assert sum(w for _, w in out) == q, "mass formula violated"
    return out


def supersingular_trace0_count(p: int) -> int:
    """Number of trace-0 classes over F_p up to quadratic twist.

    Equals (p + 6 - 4(-3|p) - 3(-4|p))/12, the count of distinct
    j-invariants among the supersingular trace-0 curves; each j carries
    two quadratic twists, both of trace 0, so the number of isomorphism
    classes is twice this.
    """
    if p < 5 or not gmpy2.is_prime(p):
        raise ValueError("p must be a prime >= 5")
    n = p + 6 - 4 * kronecker_symbol(-3, p) - 3 * kronecker_symbol(-4, p)
    assert n % 12 == 0
    return n // 12


# ------------------------------------------------- division polynomials (x-only)

def division_polys(E: EllipticCurve, nmax: int) -> list[FPoly]:
    """P[0..nmax] with psi_n = P_n(x) * (y if n even): the x-only division
    polynomials of y^2 = x^3 + Ax + B."""
    F = E.field
    A, B = E.a4, E.a6
    f = E.f_poly()
    P = [FPoly(F, [0]), FPoly(F, [1]), FPoly(F, [2])]
    # P3 = 3x^4 + 6Ax^2 + 12Bx - A^2
    P.append(FPoly(F, [-(A * A), 12 * B, 6 * A, F.zero, F.element(3)]))
    # P4 = 4(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
    P.append(FPoly(F, [(-8 * B * B - A**3) * 4, (-4 * A * B) * 4, (-5 * A * A) * 4,
                       (20 * B) * 4, (5 * A) * 4, F.zero, F.element(4)]))
    half = F.element(pow(2, -1, F.p))
    f2 = f * f
    for n in range(5, nmax + 1):
        m = n // 2
        if n % 2:  # n = 2m+1
            t1 = P[m + 2] * (P[m] * P[m] * P[m])
            t2 = P[m - 1] * (P[m + 1] * P[m + 1] * P[m + 1])
            if m % 2 == 0:
                P.append(t1 * f2 - t2)
            else:
                P.append(t1 - t2 * f2)
        else:  # n = 2m
            t1 = P[m + 2] * (P[m - 1] * P[m - 1])
            t2 = P[m - 2] * (P[m + 1] * P[m + 1])
            P.append((P[m] * (t1 - t2)) * half)
    return P[: nmax + 1]


def torsion_x_poly(E: EllipticCurve, r: int) -> FPoly:
    """Monic polynomial whose roots are exactly the x-coordinates of the
    nonzero r-torsion: P_r for odd r, f * P_r for even r."""
    P = division_polys(E, r)
    g = P[r] if r % 2 else E.f_poly() * P[r]
    return g.monic()


def frobenius_is_scalar(E: EllipticCurve, r: int, b: int) -> bool:
    """Division-polynomial test: does Frobenius act as b on E[r]?

    Works over the base field only: the x-part is
    (x^q - x) psi_b^2 + psi_{b-1} psi_{b+1} = 0 mod Psi_r, and the y-part is
    2 f^((q-1)/2) psi_b^4 = P_{2b} mod P_r, with y^2 -> f substitutions
    resolved by parity.
    """
    if r == 1:
        return True
    b %= r
    if math.gcd(b, r) != 1:
        return False
    q = E.q
    F = E.field
    f = E.f_poly()
    P = division_polys(E, max(2 * b, b + 1, r))
    M = torsion_x_poly(E, r)
    x = FPoly(F, [0, 1])
    xq = x.powmod(q, M)
    # x-part
    A = (P[b] * P[b]) % M
    if b % 2 == 0:
        A = (A * f) % M
    Bt = (P[b - 1] * P[b + 1]) % M if b >= 1 else FPoly(F, [0])
    if b % 2 == 1:
        Bt = (Bt * f) % M
    if not (((xq - x) * A + Bt) % M).is_zero():
        return False
    # y-part, tested away from the 2-torsion factor (where it is vacuous)
    My = P[r].monic()
    if My.degree == 0:
        return True
    fq = f.powmod((q - 1) // 2, My)
    B4 = (P[b] * P[b]) % My
    B4 = (B4 * B4) % My
    if b % 2 == 0:
        B4 = (B4 * ((f * f) % My)) % My
    lhs = (fq * B4 * 2) % My
    return ((lhs - P[2 * b]) % My).is_zero()


# --------------------------------------------------------------- conductors

def frobenius_order_disc(q: int, a: int) -> Discriminant:
    """Discriminant a^2 - 4q of Z[pi], decomposed."""
    return decompose(a * a - 4 * q)


def relative_conductor(E: EllipticCurve) -> int:
    """relcond(E) = cond(Z[pi]) / cond(End E).

    The p-part of cond (supersingular only) always divides relcond (End is
    maximal at p); the prime-to-p part is found by the scalar ladder of the
    division-polynomial test. Quaternionic End (q square, a^2 = 4q) returns 0.
    """
    q, a = E.q, E.trace
    if a * a == 4 * q:
        return 0
    d = frobenius_order_disc(q, a)
    cond = d.conductor
    p = E.p
    ppart = 1
    while cond % p == 0:
        cond //= p
        ppart *= p
    r = ppart
    for ell, c in factorize(cond).factors:
        j = 0
        while j < c and _scalar_on_prime_power(E, ell, j + 1):
            j += 1
        r *= ell**j
    return r


def _scalar_on_prime_power(E: EllipticCurve, ell: int, j: int) -> bool:
    q, a = E.q, E.trace
    m = ell**j
    if ell != 2:
        b = (a * pow(2, -1, m)) % m
        return frobenius_is_scalar(E, m, b)
    if j == 1:
        return frobenius_is_scalar(E, 2, 1)
    # 2b = a mod 2^j pins b mod 2^(j-1); two lifts
    b0 = (a // 2) % (m // 2) if a % 2 == 0 else None
    if b0 is None:
        return False
    return frobenius_is_scalar(E, m, b0) or frobenius_is_scalar(E, m, b0 + m // 2)


@dataclass(frozen=True)
class Stratum:
    q: int
    trace: int
    order_disc: Discriminant
    relcond: int
    size: int


def strata(q: int, a: int) -> list[Stratum]:
    """Strata of the isogeny class of trace a: one per order between Z[pi]
    and the maximal order that is maximal at p, with size h(O)."""
    fac = factorize(q).factors
    if len(fac) != 1:
        raise ValueError("q must be a prime power")
    p, e = fac[0]
    if a * a > 4 * q:
        raise ValueError(f"a = {a} is not a Weil trace for q = {q}")
    ordinary = math.gcd(a, p) == 1
    if not ordinary and not (a == 0 and e % 2 == 1):
        raise ValueError("strata supported for ordinary a, or a = 0 with q nonsquare")
    d = frobenius_order_disc(q, a)
    out = []
    for g in divisors(d.conductor):
        if g % p == 0:
            continue  # orders not maximal at p carry no curves
        disc = decompose(g * g * d.fundamental)
        out.append(Stratum(q, a, disc, d.conductor // g, class_number(disc.delta)))
    return out


def sum_relcond_closed_form(q: int) -> int:
    """S(q) = sum of relcond(E) over all ordinary E/F_q, via class numbers:
    each ordinary trace a contributes sum_{g | cond} (cond/g) h(g^2 D*)."""
    fac = factorize(q).factors
    if len(fac) != 1 or fac[0][0] < 5:
        raise ValueError("q must be a power of a prime >= 5")
    p = fac[0][0]
    total = 0
    bound = math.isqrt(4 * q)
    for a in range(-bound, bound + 1):
        if a == 0 or math.gcd(a, p) != 1 or a * a == 4 * q:
            continue
        d = frobenius_order_disc(q, a)
        for g in divisors(d.conductor):
            total += (d.conductor // g) * class_number(g * g * d.fundamental)
    return total


def hurwitz_weighted_count(q: int, a: int) -> Fraction:
    """Sum of 1/#Aut over elliptic classes of trace a, for ordinary a (or
    a = 0 with q nonsquare): (1/2) * sum over strata of the Hurwitz-weighted
    class number."""
    d = frobenius_order_disc(q, a)
    p = factorize(q).factors[0][0]
    tot = Fraction(0)
    for g in divisors(d.conductor):
        if g % p == 0:
            continue
        tot += hurwitz_weighted_h(g * g * d.fundamental)
    return tot / 2


# ---------------------------------------------------------- torsion machinery

@dataclass
class TorsionBasis:
    n: int
    extension_degree: int
    curve: EllipticCurve  # over the extension
    P: Point
    Q: Point


def frobenius_matrix_model(q: int, a: int, relcond: int, n: int):
    """Integer matrix conjugate to Frobenius on E[n] for any curve of trace a
    with relative conductor relcond (commutative End; see module docstring).

    Returns entries of [[u, -r*m], [r, u + r*t]] reduced mod n, where
    pi = u + r*w on the Z-basis (1, w) of End E, t = tr(w), m = N(w).
    """
    if relcond == 0:
        raise ValueError("quaternionic endomorphisms: no 2x2 model")
    d = frobenius_order_disc(q, a)
    c = d.conductor
    if c % relcond:
        raise ValueError("relcond must divide the conductor of Z[pi]")
    gp = c // relcond  # conductor of End E
    dstar = d.fundamental
    if dstar % 4 == 1:
        tw, nw = gp, (gp * gp * (1 - dstar)) // 4  # w = gp*(1+sqrt(D*))/2
        u = (a - gp * relcond) // 2
    else:
        tw, nw = 0, gp * gp * (-dstar) // 4  # w = gp*sqrt(D*/4)
        u = a // 2
    r = relcond
    g = [[u % n, (-r * nw) % n], [r % n, (u + r * tw) % n]]
    assert (g[0][0] + g[1][1]) % n == a % n
    assert (g[0][0] * g[1][1] - g[0][1] * g[1][0]) % n == q % n
    return g


def matrix_order_mod(M, n: int, cap: int = 10**5) -> int:
    """Multiplicative order of M in GL2(Z/n)."""
    def mul(A, B):
        return [[(A[0][0] * B[0][0] + A[0][1] * B[1][0]) % n,
                 (A[0][0] * B[0][1] + A[0][1] * B[1][1]) % n],
                [(A[1][0] * B[0][0] + A[1][1] * B[1][0]) % n,
                 (A[1][0] * B[0][1] + A[1][1] * B[1][1]) % n]]
    ident = [[1 % n, 0], [0, 1 % n]]
    A = [row[:] for row in M]
    A = [[x % n for x in row] for row in A]
    k = 1
    while A != ident:
        A = mul(A, M)
        k += 1
        if k > cap:
            raise RuntimeError("matrix order exceeds cap")
    return k


def torsion_extension_degree(E: EllipticCurve, n: int) -> int:
    """Smallest k with E[n] defined over F_{q^k} (order of Frobenius mod n)."""
    if n == 1:
        return 1
    g = frobenius_matrix_model(E.q, E.trace, relative_conductor(E), n)
    return matrix_order_mod(g, n)


MAX_TORSION_N = 12
MAX_TORSION_DEGREE = 48


def torsion_basis(E: EllipticCurve, n: int) -> TorsionBasis:
    """Honest basis of E[n] over the minimal extension, via division
    polynomial roots and square roots; n <= 12, extension degree <= 48."""
    if n > MAX_TORSION_N:
        raise ValueError(f"n = {n} exceeds the supported bound {MAX_TORSION_N}")
    if math.gcd(n, E.q) != 1:
        raise ValueError("n must be coprime to q")
    if n == 1:
        return TorsionBasis(1, 1, E, None, None)
    k = torsion_extension_degree(E, n)
    if k > MAX_TORSION_DEGREE:
        raise ValueError(f"extension degree {k} exceeds {MAX_TORSION_DEGREE} (undetermined)")
    Ek, K = E.extension_curve(k)
    # collect E[n] points prime-power by prime-power, then CRT-combine bases
    P: Point = None
    Q: Point = None
    for ell, c in factorize(n).factors:
        m = ell**c
        pts = _full_torsion_points(Ek, m)
        Pm, Qm = _basis_from_points(Ek, pts, m)
        # cross-pairings between coprime parts are trivial, so summing the
        # prime-power bases gives a basis of E[n]
        P = Ek.add(P, Pm)
        Q = Ek.add(Q, Qm)
    return TorsionBasis(n, k, Ek, P, Q)


def _full_torsion_points(Ek: EllipticCurve, m: int) -> list[Point]:
    g = torsion_x_poly(Ek, m)
    pts: list[Point] = []
    for x0 in poly_roots(g):
        y0 = sqrt_fq(Ek.rhs(x0))
        if y0 is None:
            raise AssertionError("torsion x-coordinate without rational y in split field")
        pts.append((x0, y0))
        if y0:
            pts.append((x0, -y0))
    if len(pts) != m * m - 1:
        raise AssertionError(f"expected {m*m-1} points of E[{m}], got {len(pts)}")
    return pts


def _basis_from_points(Ek: EllipticCurve, pts: list[Point], m: int) -> tuple[Point, Point]:
    def order(P):
        o = m
        for pr, _ in factorize(m).factors:
            while o % pr == 0 and Ek.mul(o // pr, P) is None:
                o //= pr
        return o
    P = next(pt for pt in pts if order(pt) == m)
    for cand in pts:
        if order(cand) != m:
            continue
        z = weil_pairing(Ek, P, cand, m)
        if _element_order(z, m) == m:
            return P, cand
    raise AssertionError("no pairing-independent second generator found")


def _element_order(z: FieldElement, m: int) -> int:
    o = m
    for pr, _ in factorize(m).factors:
        while o % pr == 0 and z ** (o // pr) == z.field.one:
            o //= pr
    return o if z**o == z.field.one else 0


# ------------------------------------------------------------- Weil pairing

def _line(E: EllipticCurve, P: Point, Q: Point, X: Point) -> FieldElement:
    """Evaluate at X the line through P and Q (tangent if P = Q)."""
    F = E.field
    x, y = X
    if P is None or Q is None:
        S = Q if P is None else P
        if S is None:
            return F.one
        return x - S[0]  # vertical through S
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and y1 == -y2:
        return x - x1
    if P == Q:
        lam = (3 * x1 * x1 + E.a4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    return y - y1 - lam * (x - x1)


def _miller(E: EllipticCurve, P: Point, n: int, X: Point) -> FieldElement:
    """f_{n,P}(X) by Miller's loop; raises ZeroDivisionError on degeneracy."""
    F = E.field
    f = F.one
    T = P
    for bit in bin(n)[3:]:
        l = _line(E, T, T, X)
        T2 = E.add(T, T)
        v = _line(E, T2, E.neg(T2), X)
        f = f * f * l / v
        T = T2
        if bit == "1":
            l = _line(E, T, P, X)
            T2 = E.add(T, P)
            v = _line(E, T2, E.neg(T2), X)
            f = f * l / v
            T = T2
    if not f:
        raise ZeroDivisionError
    return f


def weil_pairing(E: EllipticCurve, P: Point, Q: Point, n: int) -> FieldElement:
    """e_n(P, Q) via Miller functions with deterministic auxiliary shifts."""
    F = E.field
    if P is None or Q is None:
        return F.one
    if P == Q or P == E.neg(Q):
        return F.one
    if n == 2:
        # distinct points of order 2 always pair to -1; avoids the degenerate
        # case E(F) = E[2] where no auxiliary point exists
        return -F.one
    import random

    rng = random.Random(0xA11CE)
    for _ in range(64):
        S = _random_point(E, rng)
        try:
            QS = E.add(Q, S)
            if QS is None or QS == P or S == P:
                continue
            PmS = E.add(P, E.neg(S))
            if PmS is None:
                continue
            a = _miller(E, P, n, QS) / _miller(E, P, n, S)
            b = _miller(E, Q, n, PmS) / _miller(E, Q, n, E.neg(S))
            return a / b
        except ZeroDivisionError:
            continue
    # E(F) may consist of little more than <P, Q> itself; redo the evaluation
    # over a quadratic extension, where auxiliary points abound, and map back
    E2, emb = _quadratic_lift(E)
    z2 = weil_pairing(E2, (emb(P[0]), emb(P[1])), (emb(Q[0]), emb(Q[1])), n)
    for z in poly_roots(FPoly(F, [-1] + [0] * (n - 1) + [1])):
        if emb(z) == z2:
            return z
    raise RuntimeError("Weil pairing: extension value not an n-th root of unity below")


def _quadratic_lift(E: EllipticCurve):
    """(curve over the degree-2 extension, field embedding)."""
    F = E.field
    K = make_field(F.p, F.k * 2)
    if F.k == 1:
        emb = lambda x: K.element(x.coeffs[0])
    else:
        mod = FPoly(K, [K.element(c) for c in F.modulus])
        root = poly_roots(mod)[0]
        emb = lambda x: K.embed(x, root)
    return EllipticCurve(K, emb(E.a4), emb(E.a6)), emb


# ------------------------------------------------- Frobenius matrix (honest)

def _point_dlog2(Ek: EllipticCurve, R: Point, P: Point, Q: Point, n: int) -> tuple[int, int]:
    """(x, y) with R = xP + yQ, brute force over (Z/n)^2."""
    xP: Point = None
    for x in range(n):
        T = xP
        for y in range(n):
            if T == R:
                return x, y
            T = Ek.add(T, Q)
        xP = Ek.add(xP, P)
    raise AssertionError("dlog failed: R not in <P, Q>")


def frobenius_matrix(E: EllipticCurve, n: int):
    """Matrix of the q-power Frobenius on an honest torsion basis of E[n]."""
    if n == 1:
        return [[0, 0], [0, 0]]
    tb = torsion_basis(E, n)
    Ek = tb.curve
    piP = (tb.P[0] ** E.q, tb.P[1] ** E.q)
    piQ = (tb.Q[0] ** E.q, tb.Q[1] ** E.q)
    a11, a21 = _point_dlog2(Ek, piP, tb.P, tb.Q, n)
    a12, a22 = _point_dlog2(Ek, piQ, tb.P, tb.Q, n)
    g = [[a11, a12], [a21, a22]]
    assert (a11 + a22) % n == E.trace % n, "trace mismatch"
    assert (a11 * a22 - a12 * a21) % n == E.q % n, "det mismatch"
    return g


# --------------------------------------------------- centralizers / Aut E[n]

def _centralizer_size_prime_power(g, m: int) -> int:
    cnt = 0
    a_, b_, c_, d_ = g[0][0] % m, g[0][1] % m, g[1][0] % m, g[1][1] % m
    for x, y, z, w in product(range(m), repeat=4):
        if math.gcd(x * w - y * z, m) != 1:
            continue
        # M g = g M
        if ((x * a_ + y * c_ - (a_ * x + b_ * z)) % m or
                (x * b_ + y * d_ - (a_ * y + b_ * w)) % m or
                (z * a_ + w * c_ - (c_ * x + d_ * z)) % m or
                (z * b_ + w * d_ - (c_ * y + d_ * w)) % m):
            continue
        cnt += 1
    return cnt


def torsion_aut_size(E: EllipticCurve, n: int) -> int:
    """#Aut E[n] = centralizer of Frobenius in GL2(Z/n), CRT over prime
    powers; the p-part (ordinary only) contributes phi(p^j)^2."""
    if n == 1:
        return 1
    total = 1
    r = relative_conductor(E)
    for ell, c in factorize(n).factors:
        m = ell**c
        if ell == E.p:
            if not E.is_ordinary:
                raise ValueError("p-part of supersingular torsion unsupported")
            phi = mobius_phi_sigma(m)[1]
            total *= phi * phi
            continue
        g = frobenius_matrix_model(E.q, E.trace, r, m)
        total *= _centralizer_size_prime_power(g, m)
    return total


# ----------------------------------------------------------- symplectic types

GENERIC, SCALAR, SQUARE_CLASS, NONSQUARE_CLASS = "Generic", "Scalar", "SquareClass", "NonsquareClass"


def _fixed_zeta(K: Field, ell: int) -> FieldElement:
    """Lex-smallest element of exact order ell in K (library-wide choice)."""
    if (K.q - 1) % ell:
        raise ValueError(f"no {ell}-th roots of unity in {K}")
    best = None
    # roots of x^ell - 1 other than 1: use a generator-free scan via powering
    g = FPoly(K, [-1] + [0] * (ell - 1) + [1])
    for z in poly_roots(g):
        if z == K.one:
            continue
        if best is None or z.coeffs < best.coeffs:
            best = z
    return best


def _dlog_mod_ell(z: FieldElement, zeta: FieldElement, ell: int) -> int:
    w = zeta.field.one
    for i in range(ell):
        if w == z:
            return i
        w = w * zeta
    raise ValueError("dlog failed: value not in <zeta>")


def symplectic_type(E: EllipticCurve, ell: int) -> str:
    """Generic / Scalar / SquareClass / NonsquareClass at an odd prime ell
    not dividing q, per the pairing class of e(P, pi P)."""
    q, a = E.q, E.trace
    if ell == 2 or ell == E.p or not gmpy2.is_prime(ell):
        raise ValueError("ell must be an odd prime not dividing q")
    if (a * a - 4 * q) % ell:
        return GENERIC
    if relative_conductor(E) % ell == 0:
        return SCALAR
    tb = torsion_basis(E, ell)
    Ek = tb.curve
    zeta = _fixed_zeta(Ek.field, ell)
    for P0 in (tb.P, tb.Q, Ek.add(tb.P, tb.Q)):
        piP = (P0[0] ** q, P0[1] ** q)  # base-field Frobenius, not Ek's
        z = weil_pairing(Ek, P0, piP, ell)
        if z == Ek.field.one:
            continue
        x = _dlog_mod_ell(z, zeta, ell)
        return SQUARE_CLASS if kronecker_symbol(x, ell) == 1 else NONSQUARE_CLASS
    # pi P in <P> for every basis choice means gamma is scalar after all
    return SCALAR


def _normalized_frobenius(E: EllipticCurve, n: int):
    """(gamma, k): Frobenius matrix on a basis (P, Q) with e(P, Q) equal to
    the fixed zeta of the working extension.  Memoized per curve instance:
    the torsion basis behind it is expensive."""
    cache = getattr(E, "_nf_cache", None)
    if cache is None:
        cache = E._nf_cache = {}
    if n in cache:
        return cache[n]
    tb = torsion_basis(E, n)
    Ek = tb.curve
    zeta = _fixed_zeta(Ek.field, n)
    z = weil_pairing(Ek, tb.P, tb.Q, n)
    w = _dlog_general(z, zeta, n)
    Q2 = Ek.mul(pow(w, -1, n), tb.Q)
    piP = (tb.P[0] ** E.q, tb.P[1] ** E.q)
    piQ = (Q2[0] ** E.q, Q2[1] ** E.q)
    a11, a21 = _point_dlog2(Ek, piP, tb.P, Q2, n)
    a12, a22 = _point_dlog2(Ek, piQ, tb.P, Q2, n)
    cache[n] = [[a11, a12], [a21, a22]], tb.extension_degree
    return cache[n]


def _dlog_general(z: FieldElement, zeta: FieldElement, n: int) -> int:
    w = zeta.field.one
    for i in range(n):
        if w == z:
            return i
        w = w * zeta
    raise ValueError("dlog failed")


def count_anti_isometries(E: EllipticCurve, E2: EllipticCurve, n: int) -> int:
    """#{M in GL2(Z/n): M gamma_E = gamma_E' M, pairing multiplier -1} by
    brute force, on pairing-normalized bases; n <= 7."""
    if n > 7:
        raise ValueError("n <= 7 only")
    if n == 1:
        return 1
    if E.field != E2.field:
        raise ValueError("curves must share a base field")
    if (E.trace - E2.trace) % n:
        return 0
    g1, _ = _normalized_frobenius(E, n)
    g2, _ = _normalized_frobenius(E2, n)
    cnt = 0
    for x, y, z, w in product(range(n), repeat=4):
        if (x * w - y * z) % n != n - 1:
            continue
        if ((x * g1[0][0] + y * g1[1][0] - (g2[0][0] * x + g2[0][1] * z)) % n or
                (x * g1[0][1] + y * g1[1][1] - (g2[0][0] * y + g2[0][1] * w)) % n or
                (z * g1[0][0] + w * g1[1][0] - (g2[1][0] * x + g2[1][1] * z)) % n or
                (z * g1[0][1] + w * g1[1][1] - (g2[1][0] * y + g2[1][1] * w)) % n):
            continue
        cnt += 1
    return cnt
