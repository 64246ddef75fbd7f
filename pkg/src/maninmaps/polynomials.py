"""Exact univariate polynomial arithmetic over Q and F_p.

Coefficients are raw values: ``fractions.Fraction`` over the rationals,
integers in ``[0, p)`` over a prime field.  A :class:`Poly` stores a dense,
ascending coefficient tuple with no trailing zeros; the empty tuple is the
zero polynomial.  All operations are pure and results are canonical, so
structural equality is mathematical equality.

Multiplication over F_p uses Kronecker substitution (pack coefficients into
one big integer, multiply, unpack) which keeps the characteristic-p scans
fast without any external dependency.  Factorization is complete over F_p
(squarefree split, distinct-degree, equal-degree) and over Q uses squarefree
decomposition, rational-root extraction and a Kronecker-style bounded-degree
factor search, with modular degree patterns used to certify irreducibility.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import InputError


# ---------------------------------------------------------------------------
# integer helpers

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# constant fields


class Rationals:
    """The field Q; raw elements are Fraction."""

    char = 0

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def to_str(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p for a prime p > 3; raw elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise InputError("%d is not prime" % p)
        if p <= 3:
            raise InputError("characteristic must exceed 3, got %d" % p)
        self.p = p
        self.char = p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def sub(self, a, b):
        c = a - b
        return c + self.p if c < 0 else c

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def to_str(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = Rationals()


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial over a constant field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        cs = list(coeffs)
        while cs and cs[-1] == field.zero:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def from_int_coeffs(cls, field, ints):
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    # -- basic structure

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    # -- ring operations

    def __add__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Poly(f, out)

    def __sub__(self, other):
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            f, [f.sub(self[i], other[i]) for i in range(n)]
        )

    def __neg__(self):
        f = self.field
        return Poly(f, [f.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(f)
        if len(a) == 1:
            c = a[0]
            return Poly(f, [f.mul(c, x) for x in b])
        if len(b) == 1:
            c = b[0]
            return Poly(f, [f.mul(c, x) for x in a])
        if f.char:
            return Poly(f, _mul_fp(f.p, a, b))
        return Poly(f, _mul_qq(a, b))

    def scale(self, c):
        f = self.field
        return Poly(f, [f.mul(c, x) for x in self.coeffs])

    def shift(self, k: int):
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return Poly(self.field, (self.field.zero,) * k + self.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            inv = f.inv(other.coeffs[0])
            return self.scale(inv), Poly.zero(f)
        if f.char == 0 and len(self.coeffs) >= len(other.coeffs):
            return self._divmod_qq(other)
        r = list(self.coeffs)
        d = other.degree
        lc_inv = f.inv(other.leading)
        q = [f.zero] * max(0, len(r) - d)
        for i in range(len(r) - 1 - d, -1, -1):
            c = r[i + d]
            if c == f.zero:
                continue
            c = f.mul(c, lc_inv)
            q[i] = c
            for j, oc in enumerate(other.coeffs):
                r[i + j] = f.sub(r[i + j], f.mul(c, oc))
        return Poly(f, q), Poly(f, r[:d])

    def _divmod_qq(self, other):
        # fraction-free pseudo-division over Z; denominators restored at the end
        da, A = _clear_denominators(self.coeffs)
        db, B = _clear_denominators(other.coeffs)
        n = len(B) - 1
        L = B[-1]
        Q = [0] * (len(A) - n)
        R = list(A)
        steps = 0
        while len(R) - 1 >= n and R:
            steps += 1
            d = len(R) - 1 - n
            c = R[-1]
            for i in range(len(Q)):
                Q[i] *= L
            Q[d] += c
            R = [L * ri for ri in R]
            for j in range(len(B)):
                R[d + j] -= c * B[j]
            while R and R[-1] == 0:
                R.pop()
        denom = L ** steps * da
        q = [Fraction(c * db, denom) for c in Q]
        r = [Fraction(c, denom) for c in R]
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def multiplicity_of(self, other) -> int:
        """Largest k with other**k dividing self (self nonzero)."""
        if self.field.char:
            return _multiplicity_fp(
                list(self.coeffs), list(other.coeffs), self.field.p
            )
        k = 0
        cur = self
        while True:
            q, r = divmod(cur, other)
            if not r.is_zero():
                return k
            cur = q
            k += 1

    # -- calculus / evaluation

    def derivative(self):
        f = self.field
        return Poly(
            f,
            [f.mul(f.from_int(i), c) for i, c in enumerate(self.coeffs)][1:],
        )

    def evaluate(self, point):
        """Evaluate at a raw constant via Horner."""
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, point), c)
        return acc

    # -- normal forms

    def monic(self):
        if self.is_zero() or self.leading == self.field.one:
            return self
        return self.scale(self.field.inv(self.leading))

    def gcd(self, other):
        """Monic gcd."""
        a, b = self, other
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        if self.field.char == 0:
            return _gcd_qq(a, b)
        g = _gcd_mod_p(list(a.coeffs), list(b.coeffs), self.field.p)
        return Poly(self.field, g)

    def __str__(self):
        return self.to_str("x")

    def to_str(self, var: str) -> str:
        f = self.field
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == f.zero:
                continue
            if i == 0:
                mon = f.to_str(c)
            else:
                xi = var if i == 1 else "%s^%d" % (var, i)
                if c == f.one:
                    mon = xi
                elif f.char == 0 and c == -f.one:
                    mon = "-" + xi
                else:
                    mon = "%s*%s" % (f.to_str(c), xi)
            parts.append(mon)
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def __repr__(self):
        return "Poly(%s)" % self.to_str("x")


def _multiplicity_fp(a: list, b: list, p: int) -> int:
    """Multiplicity of b in a over F_p by repeated in-place synthetic division.

    Valuations in the division-value scans can be quadratic in the multiple,
    so the per-division overhead matters.
    """
    mult = 0
    n = len(b) - 1
    inv = pow(b[-1], -1, p)
    if n == 1 and b[-1] == 1:
        r = -b[0] % p
        while len(a) > 1:
            q = [0] * (len(a) - 1)
            acc = 0
            for i in range(len(a) - 1, 0, -1):
                acc = (acc * r + a[i]) % p
                q[i - 1] = acc
            if (acc * r + a[0]) % p:
                return mult
            mult += 1
            a = q
        return mult
    while len(a) > n:
        q = [0] * (len(a) - n)
        for i in range(len(a) - 1 - n, -1, -1):
            c = a[i + n] * inv % p
            q[i] = c
            if c:
                for j in range(n):
                    a[i + j] = (a[i + j] - c * b[j]) % p
        if any(a[:n]):
            return mult
        mult += 1
        a = q
    return mult


# ---------------------------------------------------------------------------
# fast multiplication kernels


def _mul_fp(p: int, a, b) -> list:
    """Kronecker-substitution product of coefficient tuples over F_p."""
    n = min(len(a), len(b))
    maxc = n * (p - 1) * (p - 1)
    limb = (maxc.bit_length() + 8) // 8  # bytes per packed coefficient
    ia = int.from_bytes(b"".join(c.to_bytes(limb, "little") for c in a), "little")
    ib = int.from_bytes(b"".join(c.to_bytes(limb, "little") for c in b), "little")
    prod = ia * ib
    total = len(a) + len(b) - 1
    raw = prod.to_bytes(total * limb + limb, "little")
    return [
        int.from_bytes(raw[i * limb : (i + 1) * limb], "little") % p
        for i in range(total)
    ]


def _clear_denominators(coeffs):
    """(d, ints) with coeffs[i] = ints[i] / d."""
    d = 1
    for c in coeffs:
        d = d * c.denominator // _gcd_int(d, c.denominator)
    return d, [int(c * d) for c in coeffs]


def _mul_qq(a, b) -> list:
    """Product of Fraction tuples via integer convolution over a common denominator."""
    da, ia = _clear_denominators(a)
    db, ib = _clear_denominators(b)
    out = [0] * (len(a) + len(b) - 1)
    if len(ia) > len(ib):
        ia, ib = ib, ia
    for i, ci in enumerate(ia):
        if ci:
            for j, cj in enumerate(ib):
                out[i + j] += ci * cj
    d = da * db
    return [Fraction(c, d) for c in out]


def _large_primes():
    out = []
    n = 2 ** 31 - 1
    while len(out) < 40:
        if is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


_GCD_PRIMES = _large_primes()


def _gcd_mod_p(fa: list, fb: list, p: int):
    """Monic gcd of the reductions mod p, as an int list."""
    a = [c % p for c in fa]
    b = [c % p for c in fb]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            if c:
                off = len(a) - len(b)
                for j, cb in enumerate(b):
                    a[off + j] = (a[off + j] - c * cb) % p
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd_qq(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q by a small-prime modular algorithm.

    Images of lc_g * (monic gcd mod p) are combined by CRT and the centered
    lift is accepted once it divides both inputs; degrees mod an unlucky
    prime can only be too high, so tracking the minimum keeps this sound.
    """
    fa = _to_int_primitive(a)[1]
    fb = _to_int_primitive(b)[1]
    lcg = _gcd_int(abs(fa[-1]), abs(fb[-1]))
    best_deg = None
    crt_mod = 1
    crt = None
    for p in _GCD_PRIMES:
        if fa[-1] % p == 0 or fb[-1] % p == 0:
            continue
        gp = _gcd_mod_p(fa, fb, p)
        d = len(gp) - 1
        if d == 0:
            return Poly.one(a.field)
        if best_deg is None or d < best_deg:
            best_deg = d
            crt_mod = p
            crt = [c * lcg % p for c in gp]
        elif d == best_deg:
            inv = pow(crt_mod, -1, p)
            new = []
            for i in range(d + 1):
                lo = crt[i]
                hi = (gp[i] * lcg - lo) * inv % p
                new.append(lo + crt_mod * hi)
            crt = new
            crt_mod *= p
        else:
            continue
        cand = _primitive(_trim([_center(c, crt_mod) for c in crt]))
        if len(cand) - 1 != best_deg:
            continue
        qa, ra = _divmod_int_poly(fa, cand)
        if qa is None or any(ra):
            continue
        qb, rb = _divmod_int_poly(fb, cand)
        if qb is None or any(rb):
            continue
        return Poly(a.field, [Fraction(c) for c in cand]).monic()
    # all primes exhausted: fall back to the pseudo-remainder sequence
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        fa, fb = fb, _prem_primitive(fa, fb)
    g = Poly(a.field, [Fraction(c) for c in fa])
    return g.monic()


def _to_int_primitive(f: Poly):
    """Return (unit, int coefficient list) with the list primitive."""
    if f.is_zero():
        return Fraction(1), []
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = _gcd_int(g, abs(c))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
        g = -g
    return Fraction(g, den), ints


def _prem_primitive(a: list, b: list) -> list:
    """Primitive pseudo-remainder of integer coefficient lists."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        g = _gcd_int(abs(la), abs(lb))
        ma, mb = lb // g, la // g
        a = [c * ma for c in a]
        shift = len(a) - 1 - db
        for j, cb in enumerate(b):
            a[shift + j] -= mb * cb
        while a and a[-1] == 0:
            a.pop()
    if not a:
        return []
    g = 0
    for c in a:
        g = _gcd_int(g, abs(c))
    return [c // g for c in a]


# ---------------------------------------------------------------------------
# squarefree decomposition


def squarefree_decomposition(f: Poly) -> list:
    """Monic squarefree parts of ``f`` as [(part, multiplicity), ...]."""
    if f.is_zero():
        raise InputError("cannot decompose the zero polynomial")
    f = f.monic()
    if f.is_one():
        return []
    if f.field.char == 0:
        return _sqfree_char0(f)
    return _sqfree_charp(f)


def _sqfree_char0(f: Poly) -> list:
    # Yun's algorithm
    out = []
    df = f.derivative()
    a = f.gcd(df)
    b = f // a
    c = df // a
    i = 1
    while not b.is_constant():
        d = c - b.derivative()
        g = b.gcd(d)
        if not g.is_constant():
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


def _sqfree_charp(f: Poly) -> list:
    p = f.field.char
    out = {}
    df = f.derivative()
    if df.is_zero():
        for g, m in _sqfree_charp(_pth_root(f)):
            out[m * p] = g
        return [(g, m) for m, g in sorted(out.items())]
    c = f.gcd(df)
    w = f // c
    i = 1
    while not w.is_constant():
        y = w.gcd(c)
        z = w // y
        if not z.is_constant():
            out[i] = z
        w = y
        c = c // y
        i += 1
    if not c.is_constant():
        for g, m in _sqfree_charp(_pth_root(c)):
            mp = m * p
            out[mp] = out[mp] * g if mp in out else g
    return [(g, m) for m, g in sorted(out.items())]


def _pth_root(f: Poly) -> Poly:
    p = f.field.char
    return Poly(f.field, [f[i] for i in range(0, len(f.coeffs), p)])


# ---------------------------------------------------------------------------
# factorization over F_p


def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    out = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            out = out * base % mod
        base = base * base % mod
        e >>= 1
    return out


def _ddf(f: Poly) -> list:
    """Distinct-degree split of a monic squarefree f; [(product, degree)]."""
    p = f.field.p
    out = []
    x = Poly.x(f.field)
    h = x
    k = 0
    rest = f
    while rest.degree > 2 * (k + 1) - 1 and rest.degree > 0:
        k += 1
        h = _powmod(h, p, rest)
        g = rest.gcd(h - x)
        if not g.is_constant():
            out.append((g, k))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _edf(f: Poly, d: int) -> list:
    """Equal-degree split (Cantor-Zassenhaus), deterministic seeding."""
    if f.degree == d:
        return [f]
    p = f.field.p
    rng = random.Random(hash((p, f.coeffs, d)) & 0xFFFFFFFF)
    e = (p ** d - 1) // 2
    while True:
        r = Poly(f.field, [rng.randrange(p) for _ in range(f.degree)])
        if r.is_constant():
            continue
        g = f.gcd(r)
        if not g.is_constant() and g.degree < f.degree:
            return _edf(g, d) + _edf(f // g, d)
        s = _powmod(r, e, f) - Poly.one(f.field)
        g = f.gcd(s)
        if not g.is_constant() and g.degree < f.degree:
            return _edf(g, d) + _edf(f // g, d)


def _factor_fp_squarefree(f: Poly) -> list:
    out = []
    for part, d in _ddf(f):
        out.extend(_edf(part, d))
    return out


# ---------------------------------------------------------------------------
# factorization over Q: factor mod p, Hensel lift, recombine (Zassenhaus)


def _divmod_int_poly(a: list, b: list):
    """Exact-division attempt of integer coefficient lists; (quotient, remainder)."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c % b[-1] != 0:
            return None, None
        c //= b[-1]
        q[i] = c
        for j, cb in enumerate(b):
            a[i + j] -= c * cb
    return q, a[: len(b) - 1]


def _mulm(a: list, b: list, m: int) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return [c % m for c in out]


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _addm(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m
                  for i in range(n)])


def _subm(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
                  for i in range(n)])


def _divmodm(a: list, b: list, m: int):
    """Division mod m by a polynomial with invertible leading coefficient."""
    a = [c % m for c in a]
    _trim(a)
    if len(a) < len(b):
        return [], a
    inv = pow(b[-1], -1, m)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % m
        q[i] = c
        if c:
            for j, cb in enumerate(b):
                a[i + j] = (a[i + j] - c * cb) % m
    return _trim(q), _trim(a[: len(b) - 1])


def _hensel_step(f, g, h, s, t, m):
    """One quadratic lift: from f = gh, sg + th = 1 (mod m) to the same mod m^2.

    h is monic and stays monic; g keeps its leading coefficient.
    """
    mm = m * m
    e = _subm(f, _mulm(g, h, mm), mm)
    q, r = _divmodm(_mulm(s, e, mm), h, mm)
    g1 = _addm(_addm(g, _mulm(t, e, mm), mm), _mulm(q, g, mm), mm)
    h1 = _addm(h, r, mm)
    b = _subm(_addm(_mulm(s, g1, mm), _mulm(t, h1, mm), mm), [1], mm)
    c, d = _divmodm(_mulm(s, b, mm), h1, mm)
    s1 = _subm(s, d, mm)
    t1 = _subm(_subm(t, _mulm(t, b, mm), mm), _mulm(c, g1, mm), mm)
    return g1, h1, s1, t1


def _ext_gcd_fp(a: Poly, b: Poly):
    """(g, s, t) with s a + t b = g over a prime field, g monic."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(field), Poly.zero(field)
    t0, t1 = Poly.zero(field), Poly.one(field)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.leading
    inv = field.inv(lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def _lift_tree(f_ints: list, facs: list, p: int, target: int) -> list:
    """Lift monic factors of f mod p to monic factors mod p^(2^j) >= target.

    f_ints = lc * prod(facs) mod p.  A binary tree of factor groups is built
    once mod p and every pair is re-lifted top-down at each precision
    doubling, so each node's parent value is always current.
    """
    field = PrimeField(p)

    def build(lc_int, group):
        if len(group) == 1:
            return {"leaf": True}
        half = len(group) // 2
        left, right = group[:half], group[half:]
        gp = Poly.const(field, field.from_int(lc_int))
        for q in left:
            gp = gp * q
        hp = Poly.one(field)
        for q in right:
            hp = hp * q
        gcd, sp, tp = _ext_gcd_fp(gp, hp)
        if not gcd.is_one():
            raise ConsistencyError("modular factors are not coprime")
        return {
            "leaf": False,
            "g": [int(c) for c in gp.coeffs],
            "h": [int(c) for c in hp.coeffs],
            "s": [int(c) for c in sp.coeffs],
            "t": [int(c) for c in tp.coeffs],
            "left": build(lc_int, left),
            "right": build(1, right),
        }

    root = build(f_ints[-1] % p, facs)
    m = p
    while m < target:
        def step(node, fv):
            if node["leaf"]:
                return
            node["g"], node["h"], node["s"], node["t"] = _hensel_step(
                fv, node["g"], node["h"], node["s"], node["t"], m
            )
            step(node["left"], node["g"])
            step(node["right"], node["h"])

        step(root, f_ints)
        m *= m

    out = []

    def collect(node, fv):
        if node["leaf"]:
            inv = pow(fv[-1] % m, -1, m)
            out.append(_trim([c * inv % m for c in fv]))
            return
        collect(node["left"], node["g"])
        collect(node["right"], node["h"])

    collect(root, [c % m for c in f_ints])
    return out


def _center(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _primitive(ints: list) -> list:
    g = 0
    for c in ints:
        g = _gcd_int(g, abs(c))
    if g == 0:
        return ints
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _factor_zz_squarefree(ints: list) -> list:
    """Irreducible integer factors of a primitive squarefree integer polynomial."""
    n = len(ints) - 1
    if n <= 0:
        return []
    if n == 1:
        return [_primitive(ints)]
    best = None
    usable = 0
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43):
        if ints[-1] % p == 0:
            continue
        field = PrimeField(p)
        fp = Poly.from_int_coeffs(field, ints).monic()
        if fp.gcd(fp.derivative()).degree != 0:
            continue
        facs = _factor_fp_squarefree(fp)
        if len(facs) == 1:
            return [_primitive(ints)]
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        usable += 1
        if usable >= 3:
            break
    if best is None:
        raise InputError("no usable prime found for factorization")
    p, facs = best
    facs = sorted(facs, key=lambda g: (g.degree, g.coeffs))
    norm2 = 1
    for c in ints:
        norm2 += c * c
    bound = (1 << n) * (_isqrt(norm2) + 1) * abs(ints[-1])
    target = 2 * bound + 1
    lifted = _lift_tree(list(ints), facs, p, target)
    m = p
    while m < target:
        m *= m
    return _recombine(list(ints), lifted, m)


def _isqrt(n: int) -> int:
    import math

    return math.isqrt(n)


def _recombine(f: list, lifted: list, m: int) -> list:
    """Match subsets of lifted modular factors to true integer factors."""
    import itertools

    out = []
    idxs = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(idxs):
        found = None
        for combo in itertools.combinations(idxs, size):
            cand = [f[-1] % m]
            for i in combo:
                cand = [c % m for c in _mulm(cand, lifted[i], m)]
            cand = _primitive(_trim([_center(c, m) for c in cand]))
            if len(cand) - 1 != sum(len(lifted[i]) - 1 for i in combo):
                continue
            q, r = _divmod_int_poly(f, cand)
            if q is not None and not any(r):
                found = (combo, cand, q)
                break
        if found is None:
            size += 1
            continue
        combo, cand, q = found
        out.append(cand)
        f = _primitive(q)
        idxs = [i for i in idxs if i not in combo]
    if len(f) > 1:
        out.append(_primitive(f))
    return out


def _factor_qq_squarefree(f: Poly) -> list:
    """Monic irreducible factors of a squarefree monic f over Q."""
    _, ints = _to_int_primitive(f)
    out = []
    k = 0
    while ints[0] == 0:
        ints = ints[1:]
        k += 1
    if k:
        out.append(Poly.x(f.field))
    if len(ints) > 1:
        for fac in _factor_zz_squarefree(ints):
            out.append(Poly(f.field, [Fraction(c) for c in fac]).monic())
    return out


_FACTOR_CACHE: dict = {}


def factor(f: Poly, hints=()) -> list:
    """Factor a nonzero polynomial into monic irreducibles.

    Returns [(irreducible monic Poly, multiplicity), ...] sorted by degree
    then coefficient string; the leading unit is discarded.  ``hints`` is an
    optional iterable of monic irreducible polynomials tried as divisors
    first, which keeps the search cheap when the support is already known.
    Results are cached: the same polynomial recurs constantly in divisor
    and reduction-type computations.
    """
    if f.is_zero():
        raise InputError("cannot factor the zero polynomial")
    f = f.monic()
    cached = _FACTOR_CACHE.get(f)
    if cached is not None:
        return list(cached)
    original = f
    found: dict = {}
    for h in hints:
        if h.is_constant() or h.degree > f.degree:
            continue
        m = f.multiplicity_of(h)
        if m:
            found[h] = found.get(h, 0) + m
            for _ in range(m):
                f = f // h
    if not f.is_constant():
        sub = _FACTOR_CACHE.get(f)
        if sub is not None:
            for g, mult in sub:
                found[g] = found.get(g, 0) + mult
        else:
            for part, mult in squarefree_decomposition(f):
                if f.field.char == 0:
                    irreds = _factor_qq_squarefree(part)
                else:
                    irreds = _factor_fp_squarefree(part)
                for g in irreds:
                    found[g] = found.get(g, 0) + mult
    result = sorted(found.items(), key=lambda gm: (gm[0].degree, str(gm[0])))
    _FACTOR_CACHE[original] = tuple(result)
    for g, _ in result:
        _FACTOR_CACHE.setdefault(g, ((g, 1),))
    return result


def is_irreducible(f: Poly) -> bool:
    if f.degree <= 0:
        return False
    fac = factor(f)
    return len(fac) == 1 and fac[0][1] == 1 and fac[0][0].degree == f.degree
