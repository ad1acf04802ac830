"""Jacobian orders of genus-2 curves y^2 = quintic over many primes at once.

Everything here works on raw int64 coefficient arrays (length 16, degree
tracked separately) so numba can compile it; the public entry points are
jac_orders_batch and jac_order_candidates.

The order is located inside the window allowed by the Weil bounds once the
trace of Frobenius is known: N = (p^2+1) - a1(p+1) + a2 with
2|a1|sqrt(p) - 2p <= a2 <= a1^2/4 + 2p.  A baby-step giant-step walk over
the window yields every annihilator of a random divisor; intersecting the
candidate sets of several divisors pins N down (return 0 when it does not —
the caller can retry on the quadratic twist, whose candidate set constrains
the same a2).
"""

import numpy as np
from numba import njit, prange

@njit(cache=True, inline="always")
def _lcg(state):
    return state * np.uint64(6364136223846793005) + np.uint64(1442695040888963407)


@njit(cache=True, inline="always")
def _pinv(a, p):
    r = 1
    b = a % p
    e = p - 2
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True, inline="always")
def _pdeg(a):
    for i in range(15, -1, -1):
        if a[i]:
            return i
    return -1


@njit(cache=True)
def _pdivmod(a, b, q, p):
    """a <- a mod b, q <- a div b; returns nothing (degrees via _pdeg)."""
    db = _pdeg(b)
    binv = _pinv(b[db], p)
    for i in range(16):
        q[i] = 0
    for i in range(15, db - 1, -1):
        c = a[i] % p
        if c:
            c = c * binv % p
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return


@njit(cache=True)
def _pmul(out, a, b, p):
    da, db = _pdeg(a), _pdeg(b)
    for i in range(16):
        out[i] = 0
    if da < 0 or db < 0:
        return
    for i in range(da + 1):
        if a[i]:
            for j in range(db + 1):
                out[i + j] = (out[i + j] + a[i] * b[j]) % p


@njit(cache=True)
def _pxgcd(a, b, g, s, t, p):
    """monic g = gcd(a,b) with s*a + t*b = g (all arrays length 16)."""
    r0 = a.copy()
    r1 = b.copy()
    s0 = np.zeros(16, dtype=np.int64)
    s1 = np.zeros(16, dtype=np.int64)
    t0 = np.zeros(16, dtype=np.int64)
    t1 = np.zeros(16, dtype=np.int64)
    s0[0] = 1
    t1[0] = 1
    q = np.empty(16, dtype=np.int64)
    tmp = np.empty(16, dtype=np.int64)
    while _pdeg(r1) >= 0:
        _pdivmod(r0, r1, q, p)
        r0, r1 = r1, r0
        _pmul(tmp, q, s1, p)
        for i in range(16):
            s0[i] = (s0[i] - tmp[i]) % p
        s0, s1 = s1, s0
        _pmul(tmp, q, t1, p)
        for i in range(16):
            t0[i] = (t0[i] - tmp[i]) % p
        t0, t1 = t1, t0
    lead = _pinv(r0[_pdeg(r0)], p)
    for i in range(16):
        g[i] = r0[i] * lead % p
        s[i] = s0[i] * lead % p
        t[i] = t0[i] * lead % p


@njit(cache=True)
def _cantor(u1, v1, u2, v2, f, p, uo, vo):
    """(uo, vo) = (u1, v1) + (u2, v2) on Jac(y^2 = f), f monic quintic."""
    d1 = np.empty(16, dtype=np.int64)
    e1 = np.empty(16, dtype=np.int64)
    e2 = np.empty(16, dtype=np.int64)
    _pxgcd(u1, u2, d1, e1, e2, p)
    vsum = np.zeros(16, dtype=np.int64)
    for i in range(16):
        vsum[i] = (v1[i] + v2[i]) % p
    d = np.empty(16, dtype=np.int64)
    c1 = np.empty(16, dtype=np.int64)
    c2 = np.empty(16, dtype=np.int64)
    _pxgcd(d1, vsum, d, c1, c2, p)
    s1 = np.empty(16, dtype=np.int64)
    s2 = np.empty(16, dtype=np.int64)
    _pmul(s1, c1, e1, p)
    _pmul(s2, c1, e2, p)
    # u = u1 u2 / d^2
    u = np.empty(16, dtype=np.int64)
    tmp = np.empty(16, dtype=np.int64)
    q = np.empty(16, dtype=np.int64)
    _pmul(u, u1, u2, p)
    _pmul(tmp, d, d, p)
    _pdivmod(u, tmp, q, p)
    u, q = q, u
    # v = (s1 u1 v2 + s2 u2 v1 + c2 (v1 v2 + f)) / d  mod u
    acc = np.zeros(16, dtype=np.int64)
    _pmul(tmp, u1, v2, p)
    _pmul(q, s1, tmp, p)
    for i in range(16):
        acc[i] = (acc[i] + q[i]) % p
    _pmul(tmp, u2, v1, p)
    _pmul(q, s2, tmp, p)
    for i in range(16):
        acc[i] = (acc[i] + q[i]) % p
    _pmul(tmp, v1, v2, p)
    for i in range(16):
        tmp[i] = (tmp[i] + f[i]) % p
    _pmul(q, c2, tmp, p)
    for i in range(16):
        acc[i] = (acc[i] + q[i]) % p
    _pdivmod(acc, d, q, p)
    acc, q = q, acc
    _pdivmod(acc, u, q, p)  # acc <- acc mod u
    v = acc
    # reduce
    while _pdeg(u) > 2:
        _pmul(tmp, v, v, p)
        for i in range(16):
            tmp[i] = (f[i] - tmp[i]) % p
        _pdivmod(tmp, u, q, p)
        u, q = q, u
        du = _pdeg(u)
        lead = _pinv(u[du], p)
        for i in range(16):
            u[i] = u[i] * lead % p
        for i in range(16):
            tmp[i] = (-v[i]) % p
        _pdivmod(tmp, u, q, p)
        v, tmp = tmp, v
    for i in range(16):
        uo[i] = u[i]
        vo[i] = v[i]


@njit(cache=True)
def _dmul(n, u, v, f, p, uo, vo):
    """(uo, vo) = n * (u, v), n >= 0."""
    ru = np.zeros(16, dtype=np.int64)
    rv = np.zeros(16, dtype=np.int64)
    ru[0] = 1
    bu = u.copy()
    bv = v.copy()
    tu = np.empty(16, dtype=np.int64)
    tv = np.empty(16, dtype=np.int64)
    while n:
        if n & 1:
            _cantor(ru, rv, bu, bv, f, p, tu, tv)
            ru, tu = tu, ru
            rv, tv = tv, rv
        n >>= 1
        if n:
            _cantor(bu, bv, bu, bv, f, p, tu, tv)
            bu, tu = tu, bu
            bv, tv = tv, bv
    for i in range(16):
        uo[i] = ru[i]
        vo[i] = rv[i]


@njit(cache=True, inline="always")
def _dhash(u0, u1, du, v0, v1):
    h = np.uint64(du + 1)
    h = (h * np.uint64(0x9E3779B185EBCA87)) ^ np.uint64(u0)
    h = (h * np.uint64(0xC2B2AE3D27D4EB4F)) ^ np.uint64(u1)
    h = (h * np.uint64(0x9E3779B185EBCA87)) ^ np.uint64(v0)
    h = (h * np.uint64(0xC2B2AE3D27D4EB4F)) ^ np.uint64(v1)
    h ^= h >> np.uint64(29)
    return h


@njit(cache=True)
def _rand_point(f, p, root, state):
    """(x, y, state) with y^2 = f(x), y != 0."""
    while True:
        state = _lcg(state)
        x = np.int64(state >> np.uint64(33)) % p
        v = 0
        for i in range(5, -1, -1):
            v = (v * x + f[i]) % p
        if v and root[v] >= 0:
            return x, root[v], state


@njit(cache=True)
def _rand_divisor(f, p, root, state, u, v):
    x1, y1, state = _rand_point(f, p, root, state)
    while True:
        x2, y2, state = _rand_point(f, p, root, state)
        if x2 != x1:
            break
    for i in range(16):
        u[i] = 0
        v[i] = 0
    u[0] = x1 * x2 % p
    u[1] = (-(x1 + x2)) % p
    u[2] = 1
    lam = (y2 - y1) * _pinv((x2 - x1) % p, p) % p
    v[0] = (y1 - lam * x1) % p
    v[1] = lam
    return state


@njit(cache=True)
def _annihilators(f, p, root, lo, hi, state, cand, maxc):
    """All m in [lo, hi] with m*D = 0 for one random divisor D.

    Returns (count, state); count = -1 when the window holds more than maxc
    annihilators (divisor of tiny order — caller should redraw).
    """
    u = np.empty(16, dtype=np.int64)
    v = np.empty(16, dtype=np.int64)
    state = _rand_divisor(f, p, root, state, u, v)
    W = hi - lo + 1
    s = int(np.sqrt(W)) + 1
    # baby steps j*D, j in [0, s)
    bu0 = np.empty(s, dtype=np.int64)
    bu1 = np.empty(s, dtype=np.int64)
    bdu = np.empty(s, dtype=np.int64)
    bv0 = np.empty(s, dtype=np.int64)
    bv1 = np.empty(s, dtype=np.int64)
    tsize = 1
    while tsize < 4 * s:
        tsize <<= 1
    mask = np.uint64(tsize - 1)
    table = np.full(tsize, -1, dtype=np.int64)
    eu = np.zeros(16, dtype=np.int64)
    ev = np.zeros(16, dtype=np.int64)
    eu[0] = 1
    tu = np.empty(16, dtype=np.int64)
    tv = np.empty(16, dtype=np.int64)
    order = 0
    for j in range(s):
        du = _pdeg(eu)
        if j > 0 and du == 0:
            order = j  # D has tiny order: annihilators = multiples of j
            break
        bu0[j] = eu[0]
        bu1[j] = eu[1]
        bdu[j] = du
        bv0[j] = ev[0]
        bv1[j] = ev[1]
        slot = _dhash(eu[0], eu[1], du, ev[0], ev[1]) & mask
        while table[slot] != -1:
            slot = (slot + np.uint64(1)) & mask
        table[slot] = j
        _cantor(eu, ev, u, v, f, p, tu, tv)
        eu, tu = tu, eu
        ev, tv = tv, ev
    if order:
        n = 0
        m = ((lo + order - 1) // order) * order
        while m <= hi:
            if n == maxc:
                return -1, state
            cand[n] = m
            n += 1
            m += order
        return n, state
    # eu, ev now hold s*D (the giant step); walk T = (lo + i s) D
    gu = eu.copy()
    gv = ev.copy()
    _dmul(lo, u, v, f, p, eu, ev)
    nu = np.empty(16, dtype=np.int64)
    nv = np.empty(16, dtype=np.int64)
    n = 0
    nsteps = W // s + 2
    for i in range(nsteps):
        # look up -T = j*D
        for k in range(16):
            nu[k] = eu[k]
            nv[k] = (-ev[k]) % p
        _pdivmod(nv, nu, tu, p)
        du = _pdeg(nu)
        slot = _dhash(nu[0], nu[1], du, nv[0], nv[1]) & mask
        while table[slot] != -1:
            j = table[slot]
            if (bdu[j] == du and bu0[j] == nu[0] and bu1[j] == nu[1]
                    and bv0[j] == nv[0] and bv1[j] == nv[1]):
                m = lo + i * s + j
                if lo <= m <= hi:
                    if n == maxc:
                        return -1, state
                    cand[n] = m
                    n += 1
                break
            slot = (slot + np.uint64(1)) & mask
        _cantor(eu, ev, gu, gv, f, p, tu, tv)
        eu, tu = tu, eu
        ev, tv = tv, ev
    return n, state


@njit(cache=True)
def _order_window(p, a1):
    """Weil-bound window [lo, hi] for #Jac given the curve trace a1."""
    t = 4 * a1 * a1 * p
    m = int(np.sqrt(t))
    while m * m < t:
        m += 1
    while m > 0 and (m - 1) * (m - 1) >= t:
        m -= 1
    a2min = m - 2 * p - 1
    a2max = a1 * a1 // 4 + 2 * p + 1
    base = p * p + 1 - a1 * (p + 1)
    return base + a2min, base + a2max


@njit(cache=True)
def _jac_candidates(f, p, root, a1, seed, cand, maxc):
    """Intersect annihilator sets of several divisors; count of survivors."""
    lo, hi = _order_window(p, a1)
    state = np.uint64(seed) | np.uint64(1)
    tmp = np.empty(maxc, dtype=np.int64)
    n = -1
    for trial in range(12):
        k, state = _annihilators(f, p, root, lo, hi, state, tmp, maxc)
        if k < 0:
            continue
        if n < 0:
            n = k
            for i in range(k):
                cand[i] = tmp[i]
        else:
            w = 0
            for i in range(n):
                for j in range(k):
                    if cand[i] == tmp[j]:
                        cand[w] = cand[i]
                        w += 1
                        break
            n = w
        if n == 1:
            return 1
    return n


@njit(cache=True)
def _sqroot_table(p, root):
    for i in range(p):
        root[i] = -1
    for x in range(p // 2 + 1):
        root[x * x % p] = x


@njit(cache=True)
def _trace_from_n1(f, p, root):
    n1 = 1  # point at infinity of the quintic model
    for x in range(p):
        v = 0
        for i in range(5, -1, -1):
            v = (v * x + f[i]) % p
        if v == 0:
            n1 += 1
        elif root[v] >= 0:
            n1 += 2
    return p + 1 - n1


@njit(cache=True, parallel=True)
def jac_orders_batch(ps, fs, seed):
    """Per prime: (a1, N) with N = #Jac, or N = 0 when BSGS stays ambiguous.

    ps: int64[n] primes >= 17; fs: int64[n, 6] monic quintic coefficients
    already reduced mod the respective prime.
    """
    n = ps.shape[0]
    out = np.zeros((n, 2), dtype=np.int64)
    for i in prange(n):
        p = ps[i]
        f = np.zeros(16, dtype=np.int64)
        for j in range(6):
            f[j] = fs[i, j]
        root = np.empty(p, dtype=np.int64)
        _sqroot_table(p, root)
        a1 = _trace_from_n1(f, p, root)
        cand = np.empty(64, dtype=np.int64)
        k = _jac_candidates(f, p, root, a1, np.uint64(seed) ^ np.uint64(p), cand, 64)
        out[i, 0] = a1
        out[i, 1] = cand[0] if k == 1 else 0
    return out


@njit(cache=True)
def jac_order_candidates(p, fcoeffs, a1, seed, cand):
    """Single-curve candidate set (for twist retries); returns count."""
    f = np.zeros(16, dtype=np.int64)
    for j in range(6):
        f[j] = fcoeffs[j]
    root = np.empty(p, dtype=np.int64)
    _sqroot_table(p, root)
    return _jac_candidates(f, p, root, a1, np.uint64(seed) ^ np.uint64(p), cand, cand.shape[0])
