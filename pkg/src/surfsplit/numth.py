"""Multiplicative arithmetic functions and their sieved partial sums.

Exact integer/rational arithmetic throughout: psi, Euler phi, Moebius mu,
sigma, the multiplicative function C with C(l^e) = 2(1 + 1/l), and the
partial sums sum_{n<=x} psi(n) and sum_{n<=x} psi(n)/n whose leading
constants are 15/(2 pi^2) and 15/pi^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

# Sieves allocate O(x) int64 tables; keep a hard cap rather than streaming.
SIEVE_CAP = 10**8


def is_prime(n: int) -> bool:
    return n >= 2 and gmpy2.is_prime(n)


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its sorted prime factorization."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        m = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError("factors must be sorted primes with exponents >= 1")
            last = p
            m *= p**e
        if m != self.n or self.n < 1:
            raise ValueError("factorization does not multiply out to n")


def factorize(n: int) -> FactoredInteger:
    """Trial division with a gmpy2 primality shortcut; fine for desk-scale n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n
    out = []
    p = 2
    while m > 1:
        if gmpy2.is_prime(m):
            out.append((m, 1))
            break
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.append((p, e))
                break
            p += 1 if p == 2 else 2
        else:
            if m > 1:
                out.append((m, 1))
                m = 1
    out.sort()
    # merge the is_prime shortcut with an earlier occurrence of the same prime
    merged: list[tuple[int, int]] = []
    for p_, e_ in out:
        if merged and merged[-1][0] == p_:
            merged[-1] = (p_, merged[-1][1] + e_)
        else:
            merged.append((p_, e_))
    return FactoredInteger(n, tuple(merged))


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n).factors:
        ds = [d * p**i for d in ds for i in range(e + 1)]
    ds.sort()
    return ds


def psi(n: int) -> int:
    """n * prod_{l | n} (1 + 1/l), exact."""
    if n < 1:
        raise ValueError("n must be >= 1")
    r = n
    for p, _ in factorize(n).factors:
        r = r // p * (p + 1)
    return r


def mobius_phi_sigma(n: int) -> tuple[int, int, int]:
    if n < 1:
        raise ValueError("n must be >= 1")
    mu, phi, sigma = 1, n, 1
    for p, e in factorize(n).factors:
        mu = 0 if e > 1 else -mu
        phi = phi // p * (p - 1)
        sigma *= (p ** (e + 1) - 1) // (p - 1)
    return mu, phi, sigma


def cee(n: int) -> Fraction:
    """Multiplicative C with C(l^e) = 2(1 + 1/l) on prime powers."""
    if n < 1:
        raise ValueError("n must be >= 1")
    r = Fraction(1)
    for p, _ in factorize(n).factors:
        r *= 2 * Fraction(p + 1, p)
    return r


def dee(n: int) -> Fraction:
    """The Dirichlet factor D with C = D * 1: D(l) = 1 + 2/l, D(l^e) = 0 for e > 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    r = Fraction(1)
    for p, e in factorize(n).factors:
        if e > 1:
            return Fraction(0)
        r *= Fraction(p + 2, p)
    return r


def psi_sieve(x: int) -> np.ndarray:
    """Table t with t[n] = psi(n) for 0 <= n <= x (t[0] = 0)."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if x > SIEVE_CAP:
        raise ValueError(f"sieve bound {x} exceeds cap {SIEVE_CAP}")
    t = np.arange(x + 1, dtype=np.int64)
    t[0] = 0
    is_p = np.ones(x + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(x) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    for p in np.nonzero(is_p)[0]:
        t[p::p] = t[p::p] // p * (p + 1)
    return t


def sum_psi(x: int) -> int:
    """Exact sum_{n<=x} psi(n) by sieve."""
    return int(psi_sieve(x).sum())


def sum_psi_over_n(x: int) -> Fraction:
    """Exact sum_{n<=x} psi(n)/n as a rational.

    Pairwise (tree) summation keeps intermediate denominators balanced; a
    left-fold is quadratic in the bit size and unusable already at x ~ 10^5.
    """
    t = psi_sieve(x)
    terms = [Fraction(int(t[n]), n) for n in range(1, x + 1)]
    while len(terms) > 1:
        nxt = [terms[i] + terms[i + 1] for i in range(0, len(terms) - 1, 2)]
        if len(terms) % 2:
            nxt.append(terms[-1])
        terms = nxt
    return terms[0]


def divisor_psi_sum(n: int) -> int:
    """Exact sum of psi over the divisors of n."""
    return sum(psi(d) for d in divisors(n))


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D|n), completely multiplicative in n.

    (D|0) is 1 for D = +-1 and 0 otherwise, the standard convention.
    """
    return int(gmpy2.kronecker(D, n))
