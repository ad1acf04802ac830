"""Isomorphism-class enumeration of genus-2 models by orbit flood fill.

Models are squarefree polynomials of degree 5 or 6 (any lead coefficient),
encoded in base q as c0 + c1 q + ... + c6 q^6.  Isomorphisms act through
GL2 (Mobius substitutions on x, homogenized) together with square scalings
of f (the y-rescalings); the orbit of a model under

    T: f(x) -> f(x+1)        S: f(x) -> f(gx)
    W: coefficient reversal   U: f -> g^2 f      (g a generator of F_q^*)

is exactly its isomorphism class, and #Aut = #GL2(F_q) / orbit size.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def _generator_fp(q: int) -> int:
    from .numth import factorize
    for g in range(2, q):
        ok = True
        for pr, _ in factorize(q - 1).factors:
            if pow(g, (q - 1) // pr, q) == 1:
                ok = False
                break
        if ok:
            return g
    raise ValueError("no generator found")


@njit(cache=True)
def _orbit_scan(q, g, binom, out_codes, out_sizes):
    q7 = q**7
    visited = np.zeros((q7 + 63) >> 6, dtype=np.uint64)
    queue = np.empty(200000, dtype=np.int64)
    co = np.empty(7, dtype=np.int64)
    nc = np.empty(7, dtype=np.int64)
    fc = np.empty(7, dtype=np.int64)
    dfc = np.empty(7, dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        for y in range(1, q):
            if x * y % q == 1:
                inv[x] = y
                break
    gpow = np.empty(7, dtype=np.int64)
    gpow[0] = 1
    for i in range(1, 7):
        gpow[i] = gpow[i - 1] * g % q
    g2 = g * g % q
    n_found = 0
    for start in range(q7):
        if visited[start >> 6] & (np.uint64(1) << np.uint64(start & 63)):
            continue
        c = start
        for i in range(7):
            co[i] = c % q
            c //= q
        if co[6] == 0 and co[5] == 0:
            continue
        deg = 6 if co[6] else 5
        for i in range(7):
            fc[i] = co[i]
            dfc[i] = 0
        for i in range(1, 7):
            dfc[i - 1] = i * co[i] % q
        if not _gcd_is_one(fc, dfc, deg, deg - 1, inv, q):
            continue
        # BFS
        head, tail = 0, 0
        queue[tail] = start
        tail += 1
        visited[start >> 6] |= np.uint64(1) << np.uint64(start & 63)
        while head < tail:
            code = queue[head]
            head += 1
            c = code
            for i in range(7):
                co[i] = c % q
                c //= q
            # T: f(x+1): c'_j = sum_{i>=j} C(i,j) c_i
            for j in range(7):
                s = 0
                for i in range(j, 7):
                    s += binom[i, j] * co[i]
                nc[j] = s % q
            tail = _push(nc, q, visited, queue, tail)
            # S: f(gx)
            for i in range(7):
                nc[i] = co[i] * gpow[i] % q
            tail = _push(nc, q, visited, queue, tail)
            # W: reversal
            for i in range(7):
                nc[i] = co[6 - i]
            tail = _push(nc, q, visited, queue, tail)
            # U: g^2 f
            for i in range(7):
                nc[i] = co[i] * g2 % q
            tail = _push(nc, q, visited, queue, tail)
        out_codes[n_found] = start
        out_sizes[n_found] = tail
        n_found += 1
    return n_found


@njit(cache=True, inline="always")
def _push(nc, q, visited, queue, tail):
    code = 0
    for i in range(6, -1, -1):
        code = code * q + nc[i]
    if not (visited[code >> 6] & (np.uint64(1) << np.uint64(code & 63))):
        visited[code >> 6] |= np.uint64(1) << np.uint64(code & 63)
        queue[tail] = code
        tail += 1
    return tail


@njit(cache=True, inline="always")
def _gcd_is_one(a, b, da, db, inv, p):
    while da >= 0 and a[da] == 0:
        da -= 1
    while db >= 0 and b[db] == 0:
        db -= 1
    while db > 0:
        ib = inv[b[db]]
        while da >= db:
            c = a[da] * ib % p
            if c:
                for i in range(db + 1):
                    a[da - db + i] = (a[da - db + i] - c * b[i]) % p
            da -= 1
        while da >= 0 and a[da] == 0:
            da -= 1
        t = a
        a = b
        b = t
        td = da
        da = db
        db = td
    return db == 0 and b[0] != 0


def genus2_orbits(q: int) -> list[tuple[int, int]]:
    """[(representative code, orbit size)] over all isomorphism classes."""
    g = _generator_fp(q)
    binom = np.zeros((7, 7), dtype=np.int64)
    for i in range(7):
        binom[i, 0] = 1
        for j in range(1, i + 1):
            binom[i, j] = (binom[i - 1, j - 1] + binom[i - 1, j]) % q
    cap = 8 * q**3 + 4096
    codes = np.empty(cap, dtype=np.int64)
    sizes = np.empty(cap, dtype=np.int64)
    n = _orbit_scan(q, g, binom, codes, sizes)
    return [(int(codes[i]), int(sizes[i])) for i in range(n)]
