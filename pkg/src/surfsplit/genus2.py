"""Genus-2 curves over finite fields and the split-surface censuses.

A curve is given by a model y^2 = f(x) with f squarefree of degree 5 or 6.
Point counts over F_q and F_{q^2} determine the Weil quartic of the Jacobian,
which weilquartic.classify turns into a split/simple verdict.  The censuses
weight isomorphism classes by 1/#Aut; for a class with m models (degree 5 or
6, any lead coefficient) the weight is m / #GL2(F_q), so exact masses reduce
to integer model counts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from . import _kernels as K
from .gf import Field, FPoly, make_field
from .ellipt import enumerate_curves, hurwitz_weighted_count
from .numth import factorize
from .weilquartic import (Classification, SplitClass, WeilQuartic, classify,
                          is_geometrically_split, quartic_from_counts,
                          res_scalars_quartic)

EXACT_MODE_MAX_Q = 41
ENUMERATE_MAX_Q = 17


# -------------------------------------------------------------------- curves

class Genus2Curve:
    """y^2 = f(x) with f squarefree of degree 5 or 6, p >= 5."""

    def __init__(self, field: Field, f):
        if field.p < 5:
            raise ValueError("characteristic must be >= 5")
        self.field = field
        self.f = f if isinstance(f, FPoly) else FPoly(field, [field.element(c) for c in f])
        d = self.f.degree
        if d not in (5, 6):
            raise ValueError(f"degree {d}: model must have degree 5 or 6")
        if self.f.gcd(self.f.derivative()).degree != 0:
            raise ValueError("f is not squarefree")

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self):
        return f"Genus2Curve(y^2 = {self.f} / {self.field})"


def genus2_count(cv: Genus2Curve, k: int) -> int:
    """#C(F_{q^k}) by exhaustive evaluation, k in {1, 2}."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    q, F = cv.q, cv.field
    if q**k > 10**7:
        raise ValueError(f"q^k = {q**k} too large for exhaustive counting")
    deg = cv.f.degree
    lead = cv.f.c[-1]
    if k == 1:
        field = F
        fpoly = cv.f
        lead_sq = lead.is_square()
    else:
        field = make_field(F.p, F.k * 2)
        if F.k == 1:
            emb = lambda c: field.element(c.coeffs[0])
        else:
            from .gf import poly_roots
            mod = FPoly(field, [field.element(c) for c in F.modulus])
            root = poly_roots(mod)[0]
            emb = lambda c: field.embed(c, root)
        fpoly = FPoly(field, [emb(c) for c in cv.f.c])
        lead_sq = emb(lead).is_square()
    n = 0
    for x in field.elements():
        v = _fpoly_eval(fpoly, x)
        if not v:
            n += 1
        elif v.is_square():
            n += 2
    if deg == 5:
        n += 1
    elif lead_sq:
        n += 2
    return n


def _fpoly_eval(f: FPoly, x):
    v = f.field.zero
    for c in reversed(f.c):
        v = v * x + c
    return v


def weil_coeffs(cv: Genus2Curve) -> tuple[int, int]:
    """(a1, a2) of the Jacobian's Weil quartic."""
    q = cv.q
    n1 = genus2_count(cv, 1)
    a1 = q + 1 - n1
    assert a1 * a1 <= 16 * q, "Weil bound violated"
    if q <= 3000:
        n2 = genus2_count(cv, 2)
        wq = quartic_from_counts(q, n1, n2)
        return wq.a1, wq.a2
    order = jacobian_order(cv)
    a2 = order - 1 + a1 + q * a1 - q * q
    WeilQuartic(q, a1, a2)  # validate
    return a1, a2


# ------------------------------------------- Jacobian group (Mumford, Cantor)

@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced divisor (u, v): u monic, deg u <= 2, deg v < deg u, u | v^2 - f."""
    u: tuple
    v: tuple  # FPoly coefficient tuples over the curve's field


def _to_fpoly(F: Field, coeffs) -> FPoly:
    return FPoly(F, list(coeffs) if coeffs else [F.zero])


def divisor_zero(cv: Genus2Curve) -> MumfordDivisor:
    F = cv.field
    return MumfordDivisor((F.one,), (F.zero,))


def _check_divisor(cv: Genus2Curve, D: MumfordDivisor):
    F = cv.field
    u, v = _to_fpoly(F, D.u), _to_fpoly(F, D.v)
    if u.degree > 2 or (not v.is_zero() and v.degree >= u.degree):
        raise ValueError("divisor out of reduced form")
    if not ((v * v - cv.f) % u).is_zero():
        raise ValueError("invalid divisor: u does not divide v^2 - f")


def cantor_add(D1: MumfordDivisor, D2: MumfordDivisor, cv: Genus2Curve) -> MumfordDivisor:
    """Cantor composition + reduction on Jac(C), odd-degree models."""
    if cv.f.degree != 5:
        raise ValueError("Cantor arithmetic implemented for degree-5 models")
    _check_divisor(cv, D1)
    _check_divisor(cv, D2)
    F = cv.field
    f = cv.f
    u1, v1 = _to_fpoly(F, D1.u), _to_fpoly(F, D1.v)
    u2, v2 = _to_fpoly(F, D2.u), _to_fpoly(F, D2.v)
    # composition (Cantor): d = gcd(u1, u2, v1+v2) with Bezout combination
    d1, e1, e2 = _xgcd(u1, u2)
    d, c1, c2 = _xgcd(d1, v1 + v2)
    # s1*u1 + s2*u2 + s3*(v1+v2) = d
    s1, s2, s3 = c1 * e1, c1 * e2, c2
    u = (u1 * u2) // (d * d)
    v = ((s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + f)) // d) % u
    # reduction
    while u.degree > 2:
        u = ((f - v * v) // u).monic()
        v = (-v) % u
    return MumfordDivisor(tuple(u.monic().c), tuple(v.c))


def _xgcd(a: FPoly, b: FPoly):
    F = a.field
    r0, r1 = a, b
    s0, s1 = FPoly(F, [F.one]), FPoly(F, [F.zero])
    t0, t1 = FPoly(F, [F.zero]), FPoly(F, [F.one])
    while not r1.is_zero():
        qq, rr = r0.divmod(r1)
        r0, r1 = r1, rr
        s0, s1 = s1, s0 - qq * s1
        t0, t1 = t1, t0 - qq * t1
    lead = r0.c[-1].inverse()
    scale = FPoly(F, [lead])
    return r0 * scale, s0 * scale, t0 * scale


def divisor_neg(D: MumfordDivisor, cv: Genus2Curve) -> MumfordDivisor:
    F = cv.field
    u, v = _to_fpoly(F, D.u), _to_fpoly(F, D.v)
    return MumfordDivisor(tuple(u.c), tuple(((-v) % u).c))


def divisor_mul(n: int, D: MumfordDivisor, cv: Genus2Curve) -> MumfordDivisor:
    if n < 0:
        return divisor_mul(-n, divisor_neg(D, cv), cv)
    R = divisor_zero(cv)
    while n:
        if n & 1:
            R = cantor_add(R, D, cv)
        D = cantor_add(D, D, cv)
        n >>= 1
    return R


def random_divisor(cv: Genus2Curve, rng: random.Random) -> MumfordDivisor:
    """u a product of two affine rational points, or a conjugate pair over
    the quadratic extension (some curves have < 2 affine rational points)."""
    F = cv.field
    from .gf import sqrt_fq
    for _ in range(8 * F.q):
        x1 = F.element(rng.randrange(F.q)) if F.k == 1 else _rand_elt(F, rng)
        y1 = sqrt_fq(_fpoly_eval(cv.f, x1))
        if y1 is None:
            continue
        x2 = F.element(rng.randrange(F.q)) if F.k == 1 else _rand_elt(F, rng)
        if x2 == x1:
            continue
        y2 = sqrt_fq(_fpoly_eval(cv.f, x2))
        if y2 is None:
            continue
        # u = (x - x1)(x - x2), v interpolates (x1,y1), (x2,y2)
        u = FPoly(F, [x1 * x2, -(x1 + x2), F.one])
        lam = (y2 - y1) / (x2 - x1)
        v = FPoly(F, [y1 - lam * x1, lam])
        return MumfordDivisor(tuple(u.c), tuple(v.c))
    if F.k != 1:
        raise ValueError("too few rational points; prime base field required "
                         "for the quadratic-extension fallback")
    F2 = make_field(F.p, 2)
    emb = lambda c: F2.element(c.coeffs[0])
    f2 = FPoly(F2, [emb(c) for c in cv.f.c])
    down = lambda e: F.element(e.coeffs[0])
    while True:
        x1 = _rand_elt(F2, rng)
        y1 = sqrt_fq(_fpoly_eval(f2, x1))
        if y1 is None:
            continue
        xc, yc = x1.frobenius(), y1.frobenius()
        if xc == x1:
            if yc == y1:  # rational point: weight-1 divisor
                return MumfordDivisor((down(-x1), F.one), (down(y1),))
            continue  # (x, y) + (x, -y) reduces to zero
        # u = minimal polynomial of x1, v Lagrange through the conjugates
        u = FPoly(F, [down(x1 * xc), down(-(x1 + xc)), F.one])
        lam = (yc - y1) / (xc - x1)
        v = FPoly(F, [down(y1 - lam * x1), down(lam)])
        return MumfordDivisor(tuple(u.c), tuple(v.c))


def _rand_elt(F: Field, rng: random.Random):
    return F.element(tuple(rng.randrange(F.p) for _ in range(F.k)))


def jacobian_order(cv: Genus2Curve, rng_seed: int = 0xBEEF) -> int:
    """#Jac(C)(F_q) by BSGS in the Weil interval, with lcm disambiguation.

    Falls back to the F_{q^2} count when ambiguous and q <= 3000.
    """
    q = cv.q
    if q > 10**7:
        raise ValueError("q too large")
    if cv.f.degree != 5:
        root = _rational_root(cv)
        if root is None:
            raise ValueError("degree-6 model with no rational Weierstrass point")
        cv = _move_root_to_infinity(cv, root)
    s = math.sqrt(q)
    lo, hi = max(1, math.floor((s - 1) ** 4)), math.ceil((s + 1) ** 4)
    rng = random.Random(rng_seed)
    lcm = 1
    candidates = None
    for _ in range(8):
        D = random_divisor(cv, rng)
        o = _divisor_order_bsgs(cv, D, lo, hi)
        lcm = lcm * o // math.gcd(lcm, o)
        candidates = [m for m in range(lo + (-lo) % lcm, hi + 1, lcm) if m >= lo]
        if len(candidates) == 1:
            return candidates[0]
    if q <= 3000:
        n1, n2 = genus2_count(cv, 1), genus2_count(cv, 2)
        wq = quartic_from_counts(q, n1, n2)
        return q * q + 1 - (q + 1) * wq.a1 + wq.a2
    raise ValueError(f"ambiguous Jacobian order, candidates {candidates}")


def _rational_root(cv: Genus2Curve):
    from .gf import poly_roots
    roots = poly_roots(cv.f)
    return roots[0] if roots else None


def _move_root_to_infinity(cv: Genus2Curve, r) -> Genus2Curve:
    """x -> r + 1/x turns a deg-6 model with f(r) = 0 into a deg-5 model."""
    F = cv.field
    # shift: coefficients of f(x + r)
    sh = [F.zero] * 7
    for i, c in enumerate(cv.f.c):
        for j in range(i + 1):
            sh[j] = sh[j] + c * F.element(math.comb(i, j)) * r ** (i - j)
    # g(x) = x^6 f(r + 1/x): reverse; f(r) = sh[0] = 0 kills the x^6 term
    rev = list(reversed(sh))
    while rev and not rev[-1]:
        rev.pop()
    return Genus2Curve(F, FPoly(F, rev))


def _divisor_order_bsgs(cv: Genus2Curve, D: MumfordDivisor, lo: int, hi: int) -> int:
    """Smallest m in [1, hi] with m*D = 0, knowing some m in [lo, hi] works."""
    # find one multiple in [lo, hi] by BSGS, then minimize to the exact order
    width = hi - lo + 1
    m = math.isqrt(width) + 1
    baby = {}
    P = divisor_zero(cv)
    for j in range(m):
        baby.setdefault((P.u, P.v), j)
        P = cantor_add(P, D, cv)
    # giant steps: lo*D + k*(m*D)
    mD = divisor_mul(m, D, cv)
    G = divisor_mul(lo, D, cv)
    negmD = divisor_neg(mD, cv)
    hit = None
    for k in range(m + 2):
        key = (G.u, G.v)
        if key in baby:
            # (lo + k*m)*D = -?= note: baby stores j*D; we need lo+k*m ≡ -j? No:
            # G = (lo + k*m) D; match j*D means (lo + k*m - j) D = 0
            hit = lo + k * m - baby[key]
            if hit > 0:
                break
        G = cantor_add(G, mD, cv)
    if hit is None:
        raise RuntimeError("BSGS failed to find the divisor order multiple")
    # minimize: order divides hit
    o = hit
    for pr, e in factorize(hit).factors:
        while o % pr == 0:
            cand = o // pr
            if divisor_mul(cand, D, cv) == divisor_zero(cv):
                o = cand
            else:
                break
    return o


# ---------------------------------------------------------------- the census

@dataclass
class CensusResult:
    q: int
    weighted_jacobians_total: Fraction
    weighted_split: Fraction | float        # all polarized surfaces
    weighted_geom_split: Fraction | float
    c_q: float
    d_q: float
    stderr: float | None = None
    per_class: dict | None = None


def _gl2_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


def jacobian_bucket_masses(q: int):
    """{(a1, a2): Fraction mass} over Jacobians, Σ = q^3 exactly."""
    if not gmpy2.is_prime(q):
        raise ValueError("exact censuses require prime q")
    if q > EXACT_MODE_MAX_Q:
        raise ValueError(f"q = {q} beyond exact-mode bound {EXACT_MODE_MAX_Q}")
    counts = _model_counts(q)
    gl2 = _gl2_order(q)
    out = {}
    for (n1, n2), c in counts.items():
        wq = quartic_from_counts(q, n1, n2)
        out[(wq.a1, wq.a2)] = out.get((wq.a1, wq.a2), Fraction(0)) + Fraction(c, gl2)
    assert sum(out.values()) == q**3, "mass formula violated"
    return out


def _model_counts(q: int) -> dict:
    """Integer model counts per (N1, N2) over all squarefree models."""
    p = q
    nsq = K.find_nonsquare(p)
    chi1 = K.chi_table_fp(p)
    chi2 = K.chi_table_fp2(p, nsq)
    A, B = K.power_tables_fp2(p, nsq, 6)
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    B1 = int(4 * math.isqrt(q)) + 6
    B2 = 4 * p + 6
    half = p * (p - 1) // 2
    counts: dict = {}

    wt6 = K.orbit_weights3(p, 2, 3, 4)
    b6 = K.census_sextic(p, A, B, chi2, chi1, inv, wt6, B1, B2)
    s1s, s2s = np.nonzero(b6)
    for i1, i2 in zip(s1s, s2s):
        s1, s2 = int(i1) - B1, int(i2) - B2
        c = int(b6[i1, i2]) * half
        key = (p + 2 + s1, p * p + 2 + s2)
        counts[key] = counts.get(key, 0) + c
        key = (p - s1, p * p + 2 + s2)
        counts[key] = counts.get(key, 0) + c

    if p == 5:
        # translation can't normalize the x^4 coefficient away (5t = 0),
        # so enumerate every monic quintic; weight is (p-1)/2 per twist
        b5 = K.census_quintic_all(p, A, B, chi2, chi1, inv, B1, B2)
        qw = (p - 1) // 2
    else:
        wt5 = K.orbit_weights2(p, 2, 3)
        b5 = K.census_quintic(p, A, B, chi2, chi1, inv, wt5, B1, B2)
        qw = half
    s1s, s2s = np.nonzero(b5)
    for i1, i2 in zip(s1s, s2s):
        s1, s2 = int(i1) - B1, int(i2) - B2
        c = int(b5[i1, i2]) * qw
        key = (p + 1 + s1, p * p + 1 + s2)
        counts[key] = counts.get(key, 0) + c
        key = (p + 1 - s1, p * p + 1 + s2)
        counts[key] = counts.get(key, 0) + c

    total = sum(counts.values())
    assert total == (q - 1) * (q**6 - q**4), "model count mismatch"
    return counts


def product_masses(q: int):
    """{(a1, a2): mass} for products of elliptic curves; Σ = q²/2."""
    traces = {}
    for E, w in enumerate_curves(q):
        traces[E.trace] = traces.get(E.trace, Fraction(0)) + w
    out = {}
    ts = sorted(traces)
    for i, s in enumerate(ts):
        for t in ts[i:]:
            m = traces[s] * traces[t] if s != t else traces[s] ** 2 / 2
            key = (s + t, s * t + 2 * q)
            out[key] = out.get(key, Fraction(0)) + m
    assert sum(out.values()) == Fraction(q * q, 2)
    return out


def res_scalar_masses(q: int):
    """{b: mass} for restrictions of scalars from F_{q^2}; Σ = q²/2."""
    out = {}
    for E, w in enumerate_curves(q * q):
        out[E.trace] = out.get(E.trace, Fraction(0)) + w / 2
    assert sum(out.values()) == Fraction(q * q, 2)
    return out


def exact_cq(q: int) -> CensusResult:
    """Exact split census; c_q = √q · split mass / (q³ + q²)."""
    jac = jacobian_bucket_masses(q)
    prod = product_masses(q)
    res = res_scalar_masses(q)

    total = Fraction(0)
    split = Fraction(0)
    geom = Fraction(0)
    per_class: dict = {tag: Fraction(0) for tag in SplitClass}

    def absorb(a1, a2, m):
        nonlocal total, split, geom
        total += m
        cl = classify(q, a1, a2)
        per_class[cl.tag] += m
        if cl.tag is not SplitClass.SIMPLE:
            split += m
            geom += m
        elif is_geometrically_split(q, a1, a2)[0]:
            geom += m

    for (a1, a2), m in jac.items():
        absorb(a1, a2, m)
    jac_total = sum(jac.values())
    for (a1, a2), m in prod.items():
        absorb(a1, a2, m)
    for b, m in res.items():
        wq = res_scalars_quartic(q, b)
        absorb(wq.a1, wq.a2, m)

    assert total == q**3 + q**2, "total polarized mass mismatch"
    rq = math.sqrt(q)
    return CensusResult(
        q=q,
        weighted_jacobians_total=jac_total,
        weighted_split=split,
        weighted_geom_split=geom,
        c_q=rq * split / (q**3 + q**2),
        d_q=rq * geom / (q**3 + q**2),
        per_class=per_class,
    )


def split_census(q: int):
    """Per-SplitClass weighted masses over all polarized surfaces."""
    r = exact_cq(q)
    return r.per_class, r


# -------------------------------------------------------------- Monte Carlo

def monte_carlo_cq(q: int, samples: int, seed: int) -> CensusResult:
    """Estimate c_q by uniform sampling of squarefree degree-5/6 models.

    Model-uniform sampling weights each class by (number of models), i.e.
    proportionally to 1/#Aut; non-Jacobian masses are added analytically.
    """
    if samples < 10**3:
        raise ValueError("samples must be >= 10^3")
    if not gmpy2.is_prime(q):
        raise ValueError("prime q only")
    rng = np.random.default_rng(seed)
    nsq = K.find_nonsquare(q)
    chi1 = K.chi_table_fp(q)
    chi2 = K.chi_table_fp2(q, nsq)
    A, B = K.power_tables_fp2(q, nsq, 6)
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        inv[x] = pow(x, q - 2, q)

    n_split = 0
    n_geom = 0
    done = 0
    batch = max(1024, min(samples, 1 << 14))
    while done < samples:
        todo = min(batch, samples - done)
        coeffs = rng.integers(0, q, size=(todo * 2, 7), dtype=np.int64)
        counts = K.batch_counts(q, coeffs, chi1, chi2, A, B, inv)
        for r in range(counts.shape[0]):
            if done == samples:
                break
            if counts[r, 0] == 0:
                continue
            done += 1
            wq = quartic_from_counts(q, int(counts[r, 1]), int(counts[r, 2]))
            cl = classify(q, wq.a1, wq.a2)
            if cl.tag is not SplitClass.SIMPLE:
                n_split += 1
                n_geom += 1
            elif is_geometrically_split(q, wq.a1, wq.a2)[0]:
                n_geom += 1

    phat = n_split / samples
    ghat = n_geom / samples
    jac_split = q**3 * phat
    jac_geom = q**3 * ghat
    nonjac_split = float(Fraction(q * q, 2) + _split_res_mass(q))
    rq = math.sqrt(q)
    denom = q**3 + q**2
    cq = rq * (jac_split + nonjac_split) / denom
    dq = rq * (jac_geom + q * q) / denom
    sigma = rq * q**3 * math.sqrt(max(phat * (1 - phat), 1e-12) / samples) / denom
    return CensusResult(
        q=q,
        weighted_jacobians_total=Fraction(q**3),
        weighted_split=jac_split + nonjac_split,
        weighted_geom_split=jac_geom + q * q,
        c_q=cq,
        d_q=dq,
        stderr=sigma,
    )


def _sample_weil(q, row, deg, chi1, chi2, A, B):
    n1 = int(np.sum(1 + chi1[(_poly_eval_vec_fp(q, row)) % q]))
    if deg == 5:
        n1 += 1
    elif chi1[row[6]] == 1:
        n1 += 2
    vala = np.zeros(A.shape[1], dtype=np.int64)
    valb = np.zeros(A.shape[1], dtype=np.int64)
    for i in range(7):
        if row[i]:
            vala += row[i] * A[i]
            valb += row[i] * B[i]
    n2 = int(np.sum(1 + chi2[(vala % q) * q + (valb % q)]))
    n2 += 1 if deg == 5 else 2
    wq = quartic_from_counts(q, n1, n2)
    return wq.a1, wq.a2


def _poly_eval_vec_fp(q, row):
    x = np.arange(q, dtype=np.int64)
    v = np.zeros(q, dtype=np.int64)
    for c in row[::-1]:
        v = (v * x + int(c)) % q
    return v


def _split_res_mass(q: int) -> Fraction:
    """Σ masses of split restrictions of scalars, via class numbers (large q)."""
    total = Fraction(0)
    # split res-scalars have quartic (0, -b) with 2q + b = r^2, 0 <= r <= 2√q
    for r in range(0, 2 * math.isqrt(q) + 1):
        b = r * r - 2 * q
        if abs(b) > 2 * q:
            continue
        wq = res_scalars_quartic(q, b)
        if classify(q, wq.a1, wq.a2).tag is SplitClass.SIMPLE:
            continue
        total += _res_trace_mass(q, b) / 2
    return total


def _res_trace_mass(q: int, b: int) -> Fraction:
    """Weighted count of elliptic curves over F_{q^2} with trace b (q prime)."""
    if b % q:
        return hurwitz_weighted_count(q * q, b)
    if b * b == 4 * q * q:
        return Fraction(q - 1, 24)  # quaternionic classes, Eichler mass
    # remaining supersingular traces over a square field: 0, ±q
    from .quadorders import hurwitz_weighted_h
    if b == 0:
        if q % 4 == 1:
            return Fraction(0)
        return Fraction(hurwitz_weighted_h(-4 * q * q), 2)
    if abs(b) == q:
        if q % 3 == 1:
            return Fraction(0)
        return Fraction(hurwitz_weighted_h(b * b - 4 * q * q), 2)
    return Fraction(0)


# ------------------------------------------------ class-by-class enumeration

def enumerate_genus2_weighted(q: int):
    """(Genus2Curve, Fraction weight) per isomorphism class; Σ weights = q³.

    weight = (#models of the class) / #GL2(F_q) = 1/#Aut.
    """
    if not gmpy2.is_prime(q) or q < 5:
        raise ValueError("prime q >= 5 required")
    if q > ENUMERATE_MAX_Q:
        raise ValueError(f"q = {q} beyond per-class enumeration bound {ENUMERATE_MAX_Q}")
    from ._orbits import genus2_orbits
    F = make_field(q)
    gl2 = _gl2_order(q)
    total = Fraction(0)
    out = []
    for code, orbit_size in genus2_orbits(q):
        coeffs = []
        c = code
        for _ in range(7):
            coeffs.append(c % q)
            c //= q
        cv = Genus2Curve(F, coeffs)
        w = Fraction(orbit_size, gl2)
        total += w
        out.append((cv, w))
    assert total == q**3, "weighted class total mismatch"
    return out
