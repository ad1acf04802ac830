"""Explicit finite fields F_{p^k}, p >= 5, as polynomial quotient rings.

Elements are canonical coefficient tuples (c0, ..., c_{k-1}) over F_p. The
modulus is the lexicographically first monic irreducible of degree k, so
serialized elements are reproducible across runs and machines. Includes
Tonelli-Shanks square roots (returning the lex-smaller root), dense
polynomial arithmetic over a field, and deterministic equal-degree
splitting for root finding.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache

import gmpy2

MAX_Q_BITS = 256  # q = p^k beyond this is rejected (far above any use here)


class Field:
    """F_{p^k} with a deterministic modulus. Immutable and hashable."""

    def __init__(self, p: int, k: int = 1, _modulus: tuple[int, ...] | None = None):
        if p < 5 or not gmpy2.is_prime(p):
            raise ValueError(f"p = {p} must be a prime >= 5")
        if k < 1:
            raise ValueError("k must be >= 1")
        if p.bit_length() * k > MAX_Q_BITS:
            raise ValueError("field order overflows the supported width")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            self.modulus = None
            self._red = None
        else:
            self.modulus = _modulus if _modulus is not None else _lex_irreducible(p, k)
            # red[i] = x^(k+i) mod modulus, as length-k tuples, i < k-1
            red = []
            cur = [(-c) % p for c in self.modulus[:k]]  # x^k
            red.append(tuple(cur))
            top = red[0]
            for _ in range(k - 2):
                nxt = [0] * k
                carry = cur[k - 1]
                for j in range(k - 1, 0, -1):
                    nxt[j] = cur[j - 1]
                for j in range(k):
                    nxt[j] = (nxt[j] + carry * top[j]) % p
                cur = nxt
                red.append(tuple(cur))
            self._red = red
        self.zero = FieldElement(self, (0,) * k)
        self.one = FieldElement(self, (1,) + (0,) * (k - 1))

    def __repr__(self):
        return f"F_{self.p}" if self.k == 1 else f"F_{self.p}^{self.k}"

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def element(self, v) -> FieldElement:
        if isinstance(v, FieldElement):
            if v.field != self:
                raise ValueError("field mismatch")
            return v
        if isinstance(v, int):
            return FieldElement(self, (v % self.p,) + (0,) * (self.k - 1))
        c = [int(x) % self.p for x in v]
        if len(c) > self.k:
            raise ValueError("coefficient vector too long")
        c += [0] * (self.k - len(c))
        return FieldElement(self, tuple(c))

    def embed(self, a: FieldElement, root: "FieldElement") -> "FieldElement":
        """Image of a (in a subfield F_{p^m}) under the map sending the
        subfield generator to `root` (a degree-m modulus root in self)."""
        acc = self.zero
        for c in reversed(a.coeffs):
            acc = acc * root + self.element(c)
        return acc

    def elements(self):
        """Iterate over all field elements (lex order on coeff vectors)."""
        p, k = self.p, self.k
        for m in range(self.q):
            c = []
            mm = m
            for _ in range(k):
                c.append(mm % p)
                mm //= p
            yield FieldElement(self, tuple(c))


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        return isinstance(other, FieldElement) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"({','.join(map(str, self.coeffs))})"

    def __add__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        F = self.field
        p, k = F.p, F.k
        if k == 1:
            return FieldElement(F, ((self.coeffs[0] * other.coeffs[0]) % p,))
        a, b = self.coeffs, other.coeffs
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:k]]
        red = F._red
        for i in range(k - 1):
            hi = prod[k + i] % p
            if hi:
                ri = red[i]
                for j in range(k):
                    out[j] = (out[j] + hi * ri[j]) % p
        return FieldElement(F, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        F = self.field
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if F.k == 1:
            return FieldElement(F, (pow(self.coeffs[0], -1, F.p),))
        # extended Euclid on (self as poly, modulus) over F_p
        p = F.p
        r0, r1 = list(F.modulus), _trim(list(self.coeffs))
        s0, s1 = [0], [1]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _polydivmod_fp(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub_fp(s0, _polymul_fp(q, s1, p), p)
        inv_lead = pow(r0[-1], -1, p)
        s = [(c * inv_lead) % p for c in s0]
        s += [0] * (F.k - len(s))
        return FieldElement(F, tuple(s[: F.k]))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        return self * other.inverse()

    def is_square(self) -> bool:
        if not self:
            return True
        return self ** ((self.field.q - 1) // 2) == self.field.one

    def frobenius(self, times: int = 1) -> "FieldElement":
        """Apply x -> x^p `times` times."""
        if self.field.k == 1:
            return self
        return self ** (self.field.p ** (times % self.field.k))


# ---------------------------------------------------------------- raw F_p polys

def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _polysub_fp(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _polymul_fp(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _polydivmod_fp(a, b, p):
    a = a[:]
    q = [0] * max(len(a) - len(b) + 1, 1)
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        coef = (a[i + len(b) - 1] * inv) % p
        if coef:
            q[i] = coef
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - coef * bj) % p
    return _trim(q), _trim(a)


def _powmod_x_fp(e: int, mod: list[int], p: int) -> list[int]:
    """x^e mod (mod) over F_p by square-and-multiply."""
    result = [1]
    base = [0, 1]
    while e:
        if e & 1:
            _, result = _polydivmod_fp(_polymul_fp(result, base, p), mod, p)
        base2 = _polymul_fp(base, base, p)
        _, base = _polydivmod_fp(base2, mod, p)
        e >>= 1
    return result


def _is_irreducible_fp(f: list[int], p: int) -> bool:
    k = len(f) - 1
    xpk = _powmod_x_fp(p**k, f, p)
    if _trim(_polysub_fp(xpk, [0, 1], p)) != [0]:
        return False
    for t in {t for t, _ in _factor_small(k)}:
        xpd = _powmod_x_fp(p ** (k // t), f, p)
        g = _polygcd_fp(f, _polysub_fp(xpd, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def _polygcd_fp(a, b, p):
    a, b = _trim(a[:]), _trim(b[:])
    while b != [0]:
        _, r = _polydivmod_fp(a, b, p)
        a, b = b, r
    return a


def _factor_small(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


@lru_cache(maxsize=None)
def _lex_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible x^k + c_{k-1}x^{k-1} + ... + c_0 in lex order
    on the integer value of (c_{k-1}, ..., c_0) base p."""
    for m in range(p**k):
        c = []
        mm = m
        for _ in range(k):
            c.append(mm % p)
            mm //= p
        f = c + [1]
        if _is_irreducible_fp(f, p):
            return tuple(f)
    raise AssertionError("no irreducible found (unreachable)")


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> Field:
    return Field(p, k)


# ---------------------------------------------------------------- square roots

def sqrt_fq(a: FieldElement, F: Field | None = None):
    """A square root of a in its field, or None; of the two roots the one
    with the lexicographically smaller coefficient tuple is returned."""
    if F is not None and a.field != F:
        raise ValueError("field mismatch")
    F = a.field
    if not a:
        return F.zero
    if not a.is_square():
        return None
    q = F.q
    if q % 4 == 3:
        r = a ** ((q + 1) // 4)
    else:
        # Tonelli-Shanks with a deterministic nonsquare
        Q, s = q - 1, 0
        while Q % 2 == 0:
            Q //= 2
            s += 1
        z = next(e for e in F.elements() if e and not e.is_square())
        m, c, t, r = s, z**Q, a**Q, a ** ((Q + 1) // 2)
        while t != F.one:
            t2, i = t * t, 1
            while t2 != F.one:
                t2 = t2 * t2
                i += 1
            b = c ** (1 << (m - i - 1))
            m, c, t, r = i, b * b, t * b * b, r * b
    return min(r, -r, key=lambda e: e.coeffs)


# ------------------------------------------------------- polys over any Field

class FPoly:
    """Dense polynomial over a Field; coefficient list, low degree first."""

    __slots__ = ("field", "c")

    def __init__(self, field: Field, coeffs):
        self.field = field
        c = [field.element(x) for x in coeffs]
        while len(c) > 1 and not c[-1]:
            c.pop()
        if not c:
            c = [field.zero]
        self.c = c

    @property
    def degree(self):
        return len(self.c) - 1 if any(self.c) else -1

    def is_zero(self):
        return self.degree == -1

    def __eq__(self, other):
        return isinstance(other, FPoly) and self.c == other.c

    def __repr__(self):
        return f"FPoly({self.c})"

    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        z = self.field.zero
        return FPoly(self.field, [
            (self.c[i] if i < len(self.c) else z) + (other.c[i] if i < len(other.c) else z)
            for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.c), len(other.c))
        z = self.field.zero
        return FPoly(self.field, [
            (self.c[i] if i < len(self.c) else z) - (other.c[i] if i < len(other.c) else z)
            for i in range(n)])

    def __neg__(self):
        return FPoly(self.field, [-a for a in self.c])

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            e = self.field.element(other)
            return FPoly(self.field, [a * e for a in self.c])
        z = self.field.zero
        out = [z] * (len(self.c) + len(other.c) - 1)
        for i, ai in enumerate(self.c):
            if ai:
                for j, bj in enumerate(other.c):
                    out[i + j] = out[i + j] + ai * bj
        return FPoly(self.field, out)

    __rmul__ = __mul__

    def divmod(self, other: "FPoly"):
        if other.is_zero():
            raise ZeroDivisionError
        r = self.c[:]
        db, da = other.degree, len(r) - 1
        if da < db:
            return FPoly(self.field, [0]), FPoly(self.field, r)
        inv = other.c[db].inverse()
        q = [self.field.zero] * (da - db + 1)
        for i in range(da - db, -1, -1):
            coef = r[i + db] * inv
            if coef:
                q[i] = coef
                for j in range(db + 1):
                    r[i + j] = r[i + j] - coef * other.c[j]
        return FPoly(self.field, q), FPoly(self.field, r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other: "FPoly") -> "FPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a * a.c[a.degree].inverse()

    def powmod(self, e: int, mod: "FPoly") -> "FPoly":
        result = FPoly(self.field, [1])
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.field.zero
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self) -> "FPoly":
        if self.degree < 1:
            return FPoly(self.field, [0])
        return FPoly(self.field, [i * a for i, a in enumerate(self.c)][1:])

    def monic(self) -> "FPoly":
        if self.is_zero():
            return self
        return self * self.c[self.degree].inverse()


def poly_roots(g: FPoly, F: Field | None = None) -> list[FieldElement]:
    """All roots of g in its base field, multiplicity collapsed, sorted
    lexicographically by coefficient tuple. Deterministic: the equal-degree
    splitting RNG is seeded per call."""
    if F is not None and g.field != F:
        raise ValueError("field mismatch")
    F = g.field
    if g.is_zero():
        raise ValueError("zero polynomial")
    if g.degree == 0:
        return []
    # restrict to the product of distinct linear factors: gcd(g, x^q - x)
    x = FPoly(F, [0, 1])
    xq = x.powmod(F.q, g)
    h = g.gcd(xq - x)
    roots: list[FieldElement] = []
    rng = random.Random(0x5EED)

    def split(f: FPoly):
        d = f.degree
        if d == 0:
            return
        if d == 1:
            roots.append(-f.c[0] / f.c[1])
            return
        while True:
            u = FPoly(F, [F.element([rng.randrange(F.p) for _ in range(F.k)]) for _ in range(d)])
            if u.degree < 1:
                continue
            w = u.powmod((F.q - 1) // 2, f) - FPoly(F, [1])
            g1 = f.gcd(w)
            if 0 < g1.degree < d:
                split(g1)
                split((f // g1).monic())
                return

    split(h.monic() if not h.is_zero() else h)
    roots.sort(key=lambda e: e.coeffs)
    return roots
