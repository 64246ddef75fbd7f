"""Rational function fields k(t) over Q or F_p.

The base curve is always the projective line with a named coordinate, so a
place is either a monic irreducible polynomial or the point at infinity, and
every valuation is a multiplicity count.  Degrees of places weight every
global count, which is how closed points over a non-algebraically-closed
constant field are handled.

Also here: polynomials in an auxiliary variable x over the function field
(``XPoly``/``RatX``), covers of the line given by rational substitutions,
and the expression parser used by the CLI.
"""

from __future__ import annotations

from .errors import ConsistencyError, InputError, ParseError
from .polynomials import Poly, factor

INF = float("inf")


class FunctionField:
    """K = k(var) for k = Q or F_p."""

    def __init__(self, constants, var: str):
        if not var.isidentifier():
            raise InputError("bad variable name %r" % var)
        self.constants = constants
        self.var = var

    @property
    def char(self) -> int:
        return self.constants.char

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and self.constants == other.constants
            and self.var == other.var
        )

    def __hash__(self):
        return hash((self.constants, self.var))

    def __repr__(self):
        return "%r(%s)" % (self.constants, self.var)

    # -- constructors

    def element(self, num: Poly, den: Poly = None) -> FieldElement:
        return FieldElement(self, num, den)

    def poly(self, ints) -> Poly:
        return Poly.from_int_coeffs(self.constants, ints)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, Poly.zero(self.constants))

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, Poly.one(self.constants))

    @property
    def gen(self) -> FieldElement:
        return FieldElement(self, Poly.x(self.constants))

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, Poly.const(self.constants, self.constants.from_int(n)))

    def from_fraction(self, a: int, b: int) -> FieldElement:
        return self.from_int(a) / self.from_int(b)

    def infinity(self) -> Place:
        return Place(self, None)

    def place(self, pi: Poly) -> Place:
        return Place(self, pi)


class FieldElement:
    """A rational function num/den, coprime with monic denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num: Poly, den: Poly = None):
        if den is None:
            den = Poly.one(field.constants)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Poly.one(field.constants)
        else:
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            lc = den.leading
            if lc != field.constants.one:
                inv = field.constants.inv(lc)
                num = num.scale(inv)
                den = den.scale(inv)
        self.field = field
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self):
        if not self.is_constant():
            raise InputError("not a constant: %s" % self)
        return self.num[0]

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.field, self.num, self.den))

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InputError("mixed function fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        raise TypeError("cannot combine FieldElement with %r" % (other,))

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(
            self.field,
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(
            self.field,
            self.num * other.den - other.num * self.den,
            self.den * other.den,
        )

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElement(self.field, -self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return FieldElement(self.field, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (self.field.one / self) ** (-n)
        return FieldElement(self.field, self.num ** n, self.den ** n)

    def derive(self) -> FieldElement:
        """d/d(var) by the quotient rule."""
        return FieldElement(
            self.field,
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def evaluate(self, point):
        """Evaluate at a raw constant; the point must not be a pole."""
        dval = self.den.evaluate(point)
        if dval == self.field.constants.zero:
            raise ZeroDivisionError("evaluation at a pole")
        return self.field.constants.div(self.num.evaluate(point), dval)

    def __str__(self):
        ns = self.num.to_str(self.field.var)
        if self.den.is_one():
            return ns
        return "(%s)/(%s)" % (ns, self.den.to_str(self.field.var))

    def __repr__(self):
        return str(self)


class Place:
    """A closed point of the projective line: monic irreducible poly or infinity."""

    __slots__ = ("field", "pi")

    def __init__(self, field, pi):
        if pi is not None:
            pi = pi.monic()
            if pi.degree < 1:
                raise InputError("a finite place needs a non-constant polynomial")
            if pi.degree > 1:
                from .polynomials import is_irreducible

                if not is_irreducible(pi):
                    raise InputError("a place needs an irreducible polynomial: %s" % pi)
        self.field = field
        self.pi = pi

    @property
    def is_infinity(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.degree

    def uniformizer(self) -> FieldElement:
        """pi(t), or 1/t at infinity."""
        if self.pi is None:
            one = Poly.one(self.field.constants)
            return FieldElement(self.field, one, Poly.x(self.field.constants))
        return FieldElement(self.field, self.pi)

    def __eq__(self, other):
        return (
            isinstance(other, Place)
            and self.field == other.field
            and self.pi == other.pi
        )

    def __hash__(self):
        return hash((self.field, self.pi))

    def sort_key(self):
        if self.pi is None:
            return (1, 0, "")
        return (0, self.pi.degree, self.pi.to_str(self.field.var))

    def __str__(self):
        if self.pi is None:
            return "infinity"
        return self.pi.to_str(self.field.var)

    def __repr__(self):
        return "Place(%s)" % self


def ord_at(f: FieldElement, place: Place):
    """Valuation of f at a place; +inf for f = 0."""
    if f.is_zero():
        return INF
    if place.is_infinity:
        return f.den.degree - f.num.degree
    return f.num.multiplicity_of(place.pi) - f.den.multiplicity_of(place.pi)


def derive(f: FieldElement) -> FieldElement:
    return f.derive()


def places_of_poly(q: Poly, field: FunctionField, hints=()) -> list:
    """Finite places in the support of a nonzero polynomial, with multiplicities."""
    if q.is_constant():
        return []
    return [(Place(field, g), m) for g, m in factor(q, hints=hints)]


def support_places(f: FieldElement, hints=()) -> list:
    """All places (finite and infinite) where f could have nonzero order."""
    out = [p for p, _ in places_of_poly(f.num, f.field, hints=hints)]
    out += [p for p, _ in places_of_poly(f.den, f.field, hints=hints)]
    out.append(f.field.infinity())
    seen, uniq = set(), []
    for p in out:
        if p not in seen:
            seen.add(p)
            uniq.append(p)
    return uniq


def divisor_of_function(f: FieldElement, hints=()) -> list:
    """The divisor of a nonzero rational function as [(Place, ord)]; degree 0."""
    if f.is_zero():
        raise InputError("the zero function has no divisor")
    out = []
    for place, m in places_of_poly(f.num, f.field, hints=hints):
        out.append((place, m))
    for place, m in places_of_poly(f.den, f.field, hints=hints):
        out.append((place, -m))
    o_inf = f.den.degree - f.num.degree
    if o_inf:
        out.append((f.field.infinity(), o_inf))
    total = sum(p.degree * m for p, m in out)
    if total != 0:
        raise ConsistencyError("divisor of a function has degree %d" % total)
    return sorted(out, key=lambda pm: pm[0].sort_key())


class Differential:
    """coefficient * d(var) on the projective line."""

    __slots__ = ("coefficient",)

    def __init__(self, coefficient: FieldElement):
        self.coefficient = coefficient

    @property
    def field(self):
        return self.coefficient.field

    def is_zero(self) -> bool:
        return self.coefficient.is_zero()

    def __str__(self):
        return "(%s) d%s" % (self.coefficient, self.field.var)


def ord_differential(omega: Differential, place: Place) -> int:
    """Order of a nonzero differential at a place.

    d(var) is regular nonvanishing at every finite place (monic irreducibles
    over a perfect constant field are separable) and has a double pole at
    infinity, where var = 1/u gives d(var) = -u^-2 du.
    """
    if omega.is_zero():
        raise InputError("order of the zero differential")
    correction = -2 if place.is_infinity else 0
    return ord_at(omega.coefficient, place) + correction


def divisor_of_differential(omega: Differential, hints=()) -> list:
    """Divisor of a nonzero differential; degree -2 on the line."""
    out = []
    for place in support_places(omega.coefficient, hints=hints):
        o = ord_differential(omega, place)
        if o:
            out.append((place, o))
    total = sum(p.degree * m for p, m in out)
    if total != -2:
        raise ConsistencyError("divisor of a differential has degree %d" % total)
    return sorted(out, key=lambda pm: pm[0].sort_key())


# ---------------------------------------------------------------------------
# covers of the line


def eval_poly_at(p: Poly, point: FieldElement) -> FieldElement:
    """Evaluate a constant-coefficient polynomial at a FieldElement (Horner)."""
    field = point.field
    acc = field.zero
    for c in reversed(p.coeffs):
        acc = acc * point + FieldElement(field, Poly.const(field.constants, c))
    return acc


class CoverMap:
    """The substitution target_var -> image(source_var), a cover of the line."""

    def __init__(self, source: FunctionField, target: FunctionField, image: FieldElement):
        if image.field != source:
            raise InputError("cover image must live in the source field")
        if source.constants != target.constants:
            raise InputError("cover must preserve the constant field")
        if image.is_constant():
            raise InputError("cover image must be non-constant")
        self.source = source
        self.target = target
        self.image = image

    def pullback(self, f: FieldElement) -> FieldElement:
        if f.field != self.target:
            raise InputError("pullback input must live in the target field")
        num = eval_poly_at(f.num, self.image)
        den = eval_poly_at(f.den, self.image)
        return num / den

    def then(self, other: CoverMap) -> CoverMap:
        """Compose with a further substitution of this cover's source variable."""
        if other.target != self.source:
            raise InputError("covers do not chain")
        return CoverMap(other.source, self.target, other.pullback(self.image))

    def __str__(self):
        return "%s -> %s" % (self.target.var, self.image)


def pullback(phi: CoverMap, f: FieldElement) -> FieldElement:
    return phi.pullback(f)


# ---------------------------------------------------------------------------
# polynomials and rational functions in x over K


class XPoly:
    """Polynomial in x with FieldElement coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FunctionField, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def const(cls, c: FieldElement):
        return cls(c.field, (c,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __eq__(self, other):
        return (
            isinstance(other, XPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly(self.field, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly(self.field, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return XPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return XPoly.zero(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return XPoly(self.field, out)

    def scale(self, c: FieldElement):
        return XPoly(self.field, [c * a for a in self.coeffs])

    def __pow__(self, n: int):
        out = XPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("XPoly division by zero")
        r = list(self.coeffs)
        d = other.degree
        if d == 0:
            inv = self.field.one / other.coeffs[0]
            return self.scale(inv), XPoly.zero(self.field)
        lc_inv = self.field.one / other.leading
        q = [self.field.zero] * max(0, len(r) - d)
        for i in range(len(r) - 1 - d, -1, -1):
            c = r[i + d]
            if c.is_zero():
                continue
            c = c * lc_inv
            q[i] = c
            for j, oc in enumerate(other.coeffs):
                r[i + j] = r[i + j] - c * oc
        return XPoly(self.field, q), XPoly(self.field, r[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero() or self.leading == self.field.one:
            return self
        return self.scale(self.field.one / self.leading)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative_x(self):
        return XPoly(
            self.field,
            [self.field.from_int(i) * c for i, c in enumerate(self.coeffs)][1:],
        )

    def map_coeffs(self, fn, field=None):
        """Apply fn to each coefficient (e.g. d/dt, or a cover pullback)."""
        return XPoly(field or self.field, [fn(c) for c in self.coeffs])

    def evaluate(self, point: FieldElement) -> FieldElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def to_str(self, xname: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            if i == 0:
                parts.append("(%s)" % c)
            else:
                xi = xname if i == 1 else "%s^%d" % (xname, i)
                if c == self.field.one:
                    parts.append(xi)
                else:
                    parts.append("(%s)*%s" % (c, xi))
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "XPoly(%s)" % self


class RatX:
    """Rational function in x over K, canonical (coprime, monic denominator)."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num: XPoly, den: XPoly = None):
        if den is None:
            den = XPoly.one(field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in x")
        if num.is_zero():
            den = XPoly.one(field)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num = num // g
                den = den // g
            lc = den.leading
            if lc != field.one:
                inv = field.one / lc
                num = num.scale(inv)
                den = den.scale(inv)
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def from_xpoly(cls, p: XPoly):
        return cls(p.field, p)

    @classmethod
    def const(cls, c: FieldElement):
        return cls(c.field, XPoly.const(c))

    def is_zero(self):
        return self.num.is_zero()

    def is_xpoly(self):
        return self.den.degree == 0

    def as_xpoly(self) -> XPoly:
        if not self.is_xpoly():
            raise InputError("x appears in a denominator")
        return self.num

    def __eq__(self, other):
        return (
            isinstance(other, RatX)
            and self.field == other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.field, self.num, self.den))

    def __add__(self, other):
        return RatX(
            self.field,
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    def __sub__(self, other):
        return RatX(
            self.field,
            self.num * other.den - other.num * self.den,
            self.den * other.den,
        )

    def __neg__(self):
        return RatX(self.field, -self.num, self.den)

    def __mul__(self, other):
        return RatX(self.field, self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatX(self.field, self.num * other.den, self.den * other.num)

    def __pow__(self, n: int):
        if n < 0:
            return (RatX(self.field, XPoly.one(self.field)) / self) ** (-n)
        return RatX(self.field, self.num ** n, self.den ** n)

    def derivative_x(self):
        return RatX(
            self.field,
            self.num.derivative_x() * self.den - self.num * self.den.derivative_x(),
            self.den * self.den,
        )

    def map_coeffs(self, fn, field=None):
        """Coefficient-wise map; for d/dt this is the derivative with x fixed."""
        f = field or self.field
        num = self.num.map_coeffs(fn, f)
        dden = self.den.map_coeffs(fn, f)
        return num, dden

    def derive_t(self):
        """d/dt with x treated as a constant (quotient rule in the coefficients)."""
        dn = self.num.map_coeffs(lambda c: c.derive())
        dd = self.den.map_coeffs(lambda c: c.derive())
        return RatX(
            self.field, dn * self.den - self.num * dd, self.den * self.den
        )

    def evaluate(self, point: FieldElement) -> FieldElement:
        dval = self.den.evaluate(point)
        if dval.is_zero():
            raise ZeroDivisionError("evaluation at a pole in x")
        return self.num.evaluate(point) / dval

    def __str__(self):
        if self.is_xpoly():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)


# ---------------------------------------------------------------------------
# residue fields (for reductions at a place)


class Residue:
    """Arithmetic in the residue field at a place: k[t]/(pi), or k at infinity."""

    def __init__(self, place: Place):
        self.place = place
        self.field = place.field
        self.constants = place.field.constants

    def reduce(self, f: FieldElement):
        """Image of f (which must be regular at the place) in the residue field."""
        o = ord_at(f, self.place)
        if o < 0:
            raise InputError("reduction of a function with a pole")
        if self.place.is_infinity:
            if f.num.degree < f.den.degree:
                return self.constants.zero
            return self.constants.div(f.num.leading, f.den.leading)
        pi = self.place.pi
        num = f.num % pi
        den_inv = self._inv_poly(f.den % pi)
        return num * den_inv % pi

    def _inv_poly(self, a: Poly) -> Poly:
        pi = self.place.pi
        # extended Euclid in k[t] modulo the irreducible pi
        r0, r1 = pi, a % pi
        s0, s1 = Poly.zero(self.constants), Poly.one(self.constants)
        if r1.is_zero():
            raise ZeroDivisionError("inverting zero in the residue field")
        while not r1.is_constant():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        inv = self.constants.inv(r1.coeffs[0])
        return s1.scale(inv) % pi

    # raw residue values: Poly (finite place) or constant (infinity)

    def add(self, a, b):
        if self.place.is_infinity:
            return self.constants.add(a, b)
        return a + b

    def sub(self, a, b):
        if self.place.is_infinity:
            return self.constants.sub(a, b)
        return a - b

    def mul(self, a, b):
        if self.place.is_infinity:
            return self.constants.mul(a, b)
        return a * b % self.place.pi

    def inv(self, a):
        if self.place.is_infinity:
            return self.constants.inv(a)
        return self._inv_poly(a)

    def is_zero(self, a):
        if self.place.is_infinity:
            return a == self.constants.zero
        return a.is_zero()

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    @property
    def zero(self):
        if self.place.is_infinity:
            return self.constants.zero
        return Poly.zero(self.constants)

    def from_int(self, n):
        if self.place.is_infinity:
            return self.constants.from_int(n)
        return Poly.const(self.constants, self.constants.from_int(n))


# ---------------------------------------------------------------------------
# expression parser
#
#   expr   := ['-'] term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := base ('^' integer)?
#   base   := integer | variable | '(' expr ')'


def _tokenize(text: str) -> list:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("var", text[i:j], i))
            i = j
            continue
        if c in "+-*/^()":
            tokens.append((c, c, i))
            i += 1
            continue
        raise ParseError("unexpected character %r" % c, i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError("expected %r, found %r" % (kind, tok[1]), tok[2])
        return tok

    def parse(self):
        ast = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("trailing input %r" % tok[1], tok[2])
        return ast

    def expr(self):
        if self.peek()[0] == "-":
            self.next()
            node = ("neg", self.term())
        else:
            node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            rhs = self.factor()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def factor(self):
        node = self.base()
        if self.peek()[0] == "^":
            caret = self.next()
            tok = self.next()
            if tok[0] != "int":
                raise ParseError("exponent must be an integer", tok[2])
            node = ("pow", node, tok[1])
            if self.peek()[0] == "^":
                raise ParseError("repeated exponent", self.peek()[2])
        return node

    def base(self):
        tok = self.next()
        if tok[0] == "int":
            return ("int", tok[1])
        if tok[0] == "var":
            return ("name", tok[1])
        if tok[0] == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError("unexpected token %r" % (tok[1],), tok[2])


def parse_ast(text: str):
    return _Parser(text).parse()


def ast_names(ast) -> set:
    kind = ast[0]
    if kind == "int":
        return set()
    if kind == "name":
        return {ast[1]}
    if kind == "neg":
        return ast_names(ast[1])
    if kind == "pow":
        return ast_names(ast[1])
    return ast_names(ast[1]) | ast_names(ast[2])


def eval_ast(ast, atoms: dict, from_int):
    """Evaluate an AST in any algebra with +,-,*,/,** and an int embedding."""
    kind = ast[0]
    if kind == "int":
        return from_int(ast[1])
    if kind == "name":
        try:
            return atoms[ast[1]]
        except KeyError:
            raise ParseError("unknown variable %r" % ast[1])
    if kind == "neg":
        return -eval_ast(ast[1], atoms, from_int)
    if kind == "pow":
        base = eval_ast(ast[1], atoms, from_int)
        return base ** ast[2]
    lhs = eval_ast(ast[1], atoms, from_int)
    rhs = eval_ast(ast[2], atoms, from_int)
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "div":
        try:
            return lhs / rhs
        except ZeroDivisionError:
            raise ParseError("division by zero in expression")
    raise ConsistencyError("bad AST node %r" % kind)


def parse_element(text: str, field: FunctionField) -> FieldElement:
    """Parse an expression in the base variable to an exact FieldElement."""
    ast = parse_ast(text)
    extra = ast_names(ast) - {field.var}
    if extra:
        raise ParseError("unknown variable %r" % sorted(extra)[0])
    return eval_ast(ast, {field.var: field.gen}, field.from_int)


def parse(text: str, field: FunctionField):
    """Parse to a FieldElement, or to an XPoly when 'x' appears.

    An x occurring in a denominator is rejected: rational functions of x are
    not a value this entry point produces.
    """
    ast = parse_ast(text)
    names = ast_names(ast)
    extra = names - {field.var, "x"}
    if extra:
        raise ParseError("unknown variable %r" % sorted(extra)[0])
    if "x" not in names:
        return eval_ast(ast, {field.var: field.gen}, field.from_int)
    atoms = {
        field.var: RatX.const(field.gen),
        "x": RatX.from_xpoly(XPoly.x(field)),
    }
    val = eval_ast(ast, atoms, lambda n: RatX.const(field.from_int(n)))
    return val.as_xpoly()
