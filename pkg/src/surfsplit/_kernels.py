"""Numba kernels for the genus-2 censuses.

Everything here works over a prime field F_p (p >= 5) and its quadratic
extension F_{p^2} = F_p[w]/(w^2 - nsq), with elements of the extension stored
as index pairs idx = a*p + b for a + b*w.

The census kernels accumulate integer model counts into buckets keyed by the
character sums (S1, S2), where

    S1 = sum_{x in F_p}     chi(f(x)),
    S2 = sum_{x in F_p^2}   chi'(f(x)),

from which the point counts of y^2 = c*f(x) over F_p and F_{p^2} follow for
both quadratic twist classes at once.  Division by #GL2(F_p) happens at the
Python level, keeping the kernels in exact integer arithmetic.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


# ------------------------------------------------------------- field tables

def find_nonsquare(p: int) -> int:
    sq = set((x * x) % p for x in range(1, p))
    for n in range(2, p):
        if n not in sq:
            return n
    raise ValueError("no nonsquare found (p must be an odd prime)")


def chi_table_fp(p: int) -> np.ndarray:
    """chi[x] = quadratic character of x in F_p (0 at 0)."""
    t = -np.ones(p, dtype=np.int8)
    t[0] = 0
    for x in range(1, p):
        t[(x * x) % p] = 1
    return t


def chi_table_fp2(p: int, nsq: int) -> np.ndarray:
    """Flat table over F_{p^2}: chi2[a*p+b] for a + b*w, w^2 = nsq.

    Computed from the norm: an element is a square in F_{p^2} iff its norm
    a^2 - nsq*b^2 is a square in F_p (norm is surjective and the character
    factors through it).
    """
    chi1 = chi_table_fp(p)
    a = np.arange(p, dtype=np.int64)[:, None]
    b = np.arange(p, dtype=np.int64)[None, :]
    norm = (a * a - nsq * b * b) % p
    t = chi1[norm]
    # zero norm <=> zero element in a field
    return t.reshape(-1).astype(np.int8)


def power_tables_fp2(p: int, nsq: int, maxdeg: int) -> tuple[np.ndarray, np.ndarray]:
    """(A, B) with A[i, idx], B[i, idx] the pair components of x^i."""
    n2 = p * p
    A = np.zeros((maxdeg + 1, n2), dtype=np.int64)
    B = np.zeros((maxdeg + 1, n2), dtype=np.int64)
    A[0, :] = 1
    a = np.arange(n2, dtype=np.int64) // p
    b = np.arange(n2, dtype=np.int64) % p
    xa, xb = a.copy(), b.copy()
    A[1], B[1] = xa, xb
    ca, cb = xa.copy(), xb.copy()
    for i in range(2, maxdeg + 1):
        na = (ca * xa + nsq * cb * xb) % p
        nb = (ca * xb + cb * xa) % p
        ca, cb = na, nb
        A[i], B[i] = ca, cb
    return A, B


# --------------------------------------------------------- prefix reduction

@njit(cache=True)
def orbit_weights3(p: int, e1: int, e2: int, e3: int) -> np.ndarray:
    """For prefixes (u, v, w) acted on by alpha via (a^e1 u, a^e2 v, a^e3 w),
    weight[u*p*p + v*p + w] = (p-1)/stab for the lex-smallest orbit member,
    0 elsewhere."""
    wt = np.zeros(p * p * p, dtype=np.int64)
    pe1 = np.empty(p, dtype=np.int64)
    pe2 = np.empty(p, dtype=np.int64)
    pe3 = np.empty(p, dtype=np.int64)
    pe1[0] = pe2[0] = pe3[0] = 0
    for a in range(1, p):
        x1, x2, x3 = 1, 1, 1
        for _ in range(e1):
            x1 = x1 * a % p
        for _ in range(e2):
            x2 = x2 * a % p
        for _ in range(e3):
            x3 = x3 * a % p
        pe1[a], pe2[a], pe3[a] = x1, x2, x3
    for u in range(p):
        for v in range(p):
            for w in range(p):
                key = u * p * p + v * p + w
                minimal = True
                stab = 0
                for a in range(1, p):
                    k = (pe1[a] * u % p) * p * p + (pe2[a] * v % p) * p \
                        + pe3[a] * w % p
                    if k < key:
                        minimal = False
                        break
                    if k == key:
                        stab += 1
                if minimal:
                    wt[key] = (p - 1) // stab
    return wt


@njit(cache=True)
def orbit_weights2(p: int, e1: int, e2: int) -> np.ndarray:
    """Two-coefficient analogue: weight[u*p + v] over (a^e1 u, a^e2 v)."""
    wt = np.zeros(p * p, dtype=np.int64)
    pe1 = np.empty(p, dtype=np.int64)
    pe2 = np.empty(p, dtype=np.int64)
    pe1[0] = pe2[0] = 0
    for a in range(1, p):
        x1, x2 = 1, 1
        for _ in range(e1):
            x1 = x1 * a % p
        for _ in range(e2):
            x2 = x2 * a % p
        pe1[a], pe2[a] = x1, x2
    for u in range(p):
        for v in range(p):
            key = u * p + v
            minimal = True
            stab = 0
            for a in range(1, p):
                k = (pe1[a] * u % p) * p + pe2[a] * v % p
                if k < key:
                    minimal = False
                    break
                if k == key:
                    stab += 1
            if minimal:
                wt[key] = (p - 1) // stab
    return wt


# ------------------------------------------------------------ squarefreeness

@njit(cache=True, inline="always")
def _poly_gcd_is_one(f: np.ndarray, df: np.ndarray, nf: int, nd: int,
                     inv: np.ndarray, p: int) -> bool:
    """gcd(f, df) == 1 over F_p; f, df are scratch (destroyed)."""
    # degrees: index of leading nonzero
    a, b = f, df
    da, db = nf, nd
    while da >= 0 and a[da] == 0:
        da -= 1
    while db >= 0 and b[db] == 0:
        db -= 1
    while db > 0:
        # a = a mod b
        ib = inv[b[db]]
        while da >= db:
            c = a[da] * ib % p
            if c:
                for i in range(db + 1):
                    a[da - db + i] = (a[da - db + i] - c * b[i]) % p
            da -= 1
        while da >= 0 and a[da] == 0:
            da -= 1
        a, b = b, a
        da, db = db, da
    if db == 0 and b[0] != 0:
        return True
    return False  # db < 0 (b == 0, f not squarefree) or common root


# ------------------------------------------------------------ sextic census

@njit(cache=True, parallel=True)
def census_sextic(p, A, B, chi2, chi1, inv, prewt, B1, B2):
    """Counts of deg-6 models per (S1, S2), pre-twist.

    Models y^2 = c * g(x + t) with g = x^6 + c4 x^4 + ... + c0 monic, c5 = 0.
    For each squarefree g we add q*(p-1)/2 * prefix-orbit-weight to
    bucket[S1+B1, S2+B2]; the two twist classes are expanded by the caller.
    """
    n2 = p * p
    nthreads = p  # parallelize over c4
    buckets = np.zeros((nthreads, 2 * B1 + 1, 2 * B2 + 1), dtype=np.int64)
    for c4 in prange(p):
        bucket = buckets[c4]
        base_a = np.empty(n2, dtype=np.int64)
        base_b = np.empty(n2, dtype=np.int64)
        g_a = np.empty(n2, dtype=np.int64)
        g_b = np.empty(n2, dtype=np.int64)
        baseq = np.empty(p, dtype=np.int64)
        gq = np.empty(p, dtype=np.int64)
        fc = np.empty(7, dtype=np.int64)
        dfc = np.empty(7, dtype=np.int64)
        for c3 in range(p):
            for c2 in range(p):
                w = prewt[c4 * p * p + c3 * p + c2]
                if w == 0:
                    continue
                for i in range(n2):
                    base_a[i] = (A[6, i] + c4 * A[4, i] + c3 * A[3, i]
                                 + c2 * A[2, i]) % p
                    base_b[i] = (B[6, i] + c4 * B[4, i] + c3 * B[3, i]
                                 + c2 * B[2, i]) % p
                for x in range(p):
                    # x^2 * (x^4 + c4 x^2 + c3 x + c2)
                    baseq[x] = ((((x * x % p + c4) * x + c3) * x + c2)
                                * x % p) * x % p
                for c1 in range(p):
                    for i in range(n2):
                        g_a[i] = (base_a[i] + c1 * A[1, i]) % p
                        g_b[i] = (base_b[i] + c1 * B[1, i]) % p
                    for x in range(p):
                        gq[x] = (baseq[x] + c1 * x) % p
                    for c0 in range(p):
                        # squarefree test on f = x^6+c4x^4+c3x^3+c2x^2+c1x+c0
                        fc[0] = c0; fc[1] = c1; fc[2] = c2; fc[3] = c3
                        fc[4] = c4; fc[5] = 0; fc[6] = 1
                        dfc[0] = c1; dfc[1] = 2 * c2 % p; dfc[2] = 3 * c3 % p
                        dfc[3] = 4 * c4 % p; dfc[4] = 0; dfc[5] = 6 % p
                        dfc[6] = 0
                        if not _poly_gcd_is_one(fc, dfc, 6, 5, inv, p):
                            continue
                        s1 = 0
                        for x in range(p):
                            v = gq[x] + c0
                            if v >= p:
                                v -= p
                            s1 += chi1[v]
                        s2 = 0
                        for i in range(n2):
                            v = g_a[i] + c0
                            if v >= p:
                                v -= p
                            s2 += chi2[v * p + g_b[i]]
                        bucket[s1 + B1, s2 + B2] += w
    out = np.zeros((2 * B1 + 1, 2 * B2 + 1), dtype=np.int64)
    for t in range(nthreads):
        out += buckets[t]
    return out


@njit(cache=True, parallel=True)
def census_quintic(p, A, B, chi2, chi1, inv, prewt, B1, B2):
    """Counts of deg-5 models per (S1, S2), pre-twist; g = x^5 + c3 x^3 + ..."""
    n2 = p * p
    buckets = np.zeros((p, 2 * B1 + 1, 2 * B2 + 1), dtype=np.int64)
    for c3 in prange(p):
        bucket = buckets[c3]
        base_a = np.empty(n2, dtype=np.int64)
        base_b = np.empty(n2, dtype=np.int64)
        g_a = np.empty(n2, dtype=np.int64)
        g_b = np.empty(n2, dtype=np.int64)
        baseq = np.empty(p, dtype=np.int64)
        gq = np.empty(p, dtype=np.int64)
        fc = np.empty(7, dtype=np.int64)
        dfc = np.empty(7, dtype=np.int64)
        for c2 in range(p):
            w = prewt[c3 * p + c2]
            if w == 0:
                continue
            for i in range(n2):
                base_a[i] = (A[5, i] + c3 * A[3, i] + c2 * A[2, i]) % p
                base_b[i] = (B[5, i] + c3 * B[3, i] + c2 * B[2, i]) % p
            for x in range(p):
                baseq[x] = ((((x * x % p) + c3) * x + c2) * x % p) * x % p
            for c1 in range(p):
                for i in range(n2):
                    g_a[i] = (base_a[i] + c1 * A[1, i]) % p
                    g_b[i] = (base_b[i] + c1 * B[1, i]) % p
                for x in range(p):
                    gq[x] = (baseq[x] + c1 * x) % p
                for c0 in range(p):
                    fc[0] = c0; fc[1] = c1; fc[2] = c2; fc[3] = c3
                    fc[4] = 0; fc[5] = 1; fc[6] = 0
                    dfc[0] = c1; dfc[1] = 2 * c2 % p; dfc[2] = 3 * c3 % p
                    dfc[3] = 0; dfc[4] = 5 % p; dfc[5] = 0; dfc[6] = 0
                    if not _poly_gcd_is_one(fc, dfc, 5, 4, inv, p):
                        continue
                    s1 = 0
                    for x in range(p):
                        v = gq[x] + c0
                        if v >= p:
                            v -= p
                        s1 += chi1[v]
                    s2 = 0
                    for i in range(n2):
                        v = g_a[i] + c0
                        if v >= p:
                            v -= p
                        s2 += chi2[v * p + g_b[i]]
                    bucket[s1 + B1, s2 + B2] += w
    out = np.zeros((2 * B1 + 1, 2 * B2 + 1), dtype=np.int64)
    for t in range(p):
        out += buckets[t]
    return out


@njit(cache=True)
def census_quintic_all(p, A, B, chi2, chi1, inv, B1, B2):
    """All monic quintics, no translation/scaling reduction.  Needed when
    p = 5: x -> x + t fixes the x^4 coefficient (5t = 0), so the c4 = 0
    normalization of census_quintic misses models.  Counts are per monic
    quintic (weight 1); the caller multiplies by (p-1)/2 per twist only."""
    n2 = p * p
    out = np.zeros((2 * B1 + 1, 2 * B2 + 1), dtype=np.int64)
    fc = np.empty(7, dtype=np.int64)
    dfc = np.empty(7, dtype=np.int64)
    co = np.empty(5, dtype=np.int64)
    for code in range(p**5):
        c = code
        for i in range(5):
            co[i] = c % p
            c //= p
        fc[0] = co[0]; fc[1] = co[1]; fc[2] = co[2]; fc[3] = co[3]
        fc[4] = co[4]; fc[5] = 1; fc[6] = 0
        dfc[0] = co[1]; dfc[1] = 2 * co[2] % p; dfc[2] = 3 * co[3] % p
        dfc[3] = 4 * co[4] % p; dfc[4] = 5 % p; dfc[5] = 0; dfc[6] = 0
        if not _poly_gcd_is_one(fc, dfc, 5, 4, inv, p):
            continue
        s1 = 0
        for x in range(p):
            v = 0
            for i in range(4, -1, -1):
                v = (v * x + co[i]) % p
            v = (v + x * x % p * x % p * x % p * x % p) % p
            s1 += chi1[v]
        s2 = 0
        for idx in range(n2):
            va = A[5, idx]
            vb = B[5, idx]
            for i in range(5):
                if co[i]:
                    va += co[i] * A[i, idx]
                    vb += co[i] * B[i, idx]
            s2 += chi2[(va % p) * p + (vb % p)]
        out[s1 + B1, s2 + B2] += 1
    return out


@njit(parallel=True, cache=True)
def batch_counts(p, rows, chi1, chi2, A, B, inv):
    """Per coefficient row: (valid, N1, N2).  valid = 0 for degree < 5 or
    non-squarefree models; N1/N2 include points at infinity."""
    n2 = p * p
    nr = rows.shape[0]
    out = np.zeros((nr, 3), dtype=np.int64)
    for r in prange(nr):
        fc = np.empty(7, dtype=np.int64)
        dfc = np.empty(7, dtype=np.int64)
        row = rows[r]
        if row[6] == 0 and row[5] == 0:
            continue
        deg = 6 if row[6] else 5
        for i in range(7):
            fc[i] = row[i]
            dfc[i] = 0
        for i in range(1, 7):
            dfc[i - 1] = i * row[i] % p
        if not _poly_gcd_is_one(fc, dfc, deg, deg - 1, inv, p):
            continue
        c1 = 0
        for x in range(p):
            v = 0
            for i in range(6, -1, -1):
                v = (v * x + row[i]) % p
            c1 += 1 + chi1[v]
        if deg == 5:
            c1 += 1
        elif chi1[row[6]] == 1:
            c1 += 2
        c2 = 0
        for idx in range(n2):
            va = 0
            vb = 0
            for i in range(7):
                if row[i]:
                    va += row[i] * A[i, idx]
                    vb += row[i] * B[i, idx]
            c2 += 1 + chi2[(va % p) * p + (vb % p)]
        c2 += 1 if deg == 5 else 2
        out[r, 0] = 1
        out[r, 1] = c1
        out[r, 2] = c2
    return out


# --------------------------------------------- brute-force census (validation)

@njit(cache=True)
def census_bruteforce(p, A, B, chi2, chi1, inv):
    """All squarefree models of degree 5 or 6, arbitrary lead coefficient,
    counted one by one into (N1, N2) buckets.  Exponential; q <= 7 only.
    Bucket indices are raw N1 in [0, 2p+2] and N2 in [0, 2p^2+2]."""
    n2 = p * p
    out = np.zeros((2 * p + 3, 2 * n2 + 3), dtype=np.int64)
    fc = np.empty(7, dtype=np.int64)
    dfc = np.empty(7, dtype=np.int64)
    co = np.empty(7, dtype=np.int64)
    for code in range(p**7):
        c = code
        for i in range(7):
            co[i] = c % p
            c //= p
        if co[6] == 0 and co[5] == 0:
            continue
        deg = 6 if co[6] != 0 else 5
        for i in range(7):
            fc[i] = co[i]
            dfc[i] = 0
        for i in range(1, 7):
            dfc[i - 1] = i * co[i] % p
        if not _poly_gcd_is_one(fc, dfc, deg, deg - 1, inv, p):
            continue
        # point counts
        n1 = 0
        for x in range(p):
            v = 0
            for i in range(6, -1, -1):
                v = (v * x + co[i]) % p
            n1 += 1 + chi1[v]
        if deg == 5:
            n1 += 1
        elif chi1[co[6]] == 1:
            n1 += 2
        m2 = 0
        for idx in range(n2):
            va, vb = 0, 0
            for i in range(7):
                if co[i]:
                    va += co[i] * A[i, idx]
                    vb += co[i] * B[i, idx]
            m2 += 1 + chi2[(va % p) * p + (vb % p)]
        if deg == 5:
            m2 += 1
        else:
            m2 += 2  # any lead coefficient is a square in F_{p^2}
        out[n1, m2] += 1
    return out
