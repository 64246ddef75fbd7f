"""Weierstrass models over a rational function field.

Models are monic cubics y^2 = x^3 + c2 x^2 + c1 x + c0 with coefficients in
K = k(t), char k = 0 or > 3.  The short form (c2 = 0) is required by the
characteristic-p machinery; ``depress`` converts, shifting points along.

Local data (minimal models, Kodaira types, intersection numbers with the
zero section) is computed place by place from valuations of c4 and the
discriminant, which classifies all fiber types away from residue
characteristic 2 and 3.
"""

from __future__ import annotations

from .errors import ConsistencyError, HypothesisError, InputError
from .funcfield import (
    INF,
    FieldElement,
    FunctionField,
    Place,
    RatX,
    XPoly,
    ast_names,
    eval_ast,
    ord_at,
    parse_ast,
    places_of_poly,
)


class WeierstrassModel:
    """y^2 = x^3 + c2 x^2 + c1 x + c0 over a function field."""

    __slots__ = ("field", "c2", "c1", "c0", "_disc")

    def __init__(self, field: FunctionField, c2, c1, c0):
        if field.char in (2, 3):
            raise InputError("characteristic 2 and 3 are not supported")
        self.field = field
        self.c2 = c2
        self.c1 = c1
        self.c0 = c0
        self._disc = None
        if self.discriminant().is_zero():
            raise HypothesisError("singular model: the discriminant vanishes")

    @classmethod
    def short(cls, field, a4, a6) -> WeierstrassModel:
        return cls(field, field.zero, a4, a6)

    @classmethod
    def from_cubic(cls, cubic: XPoly) -> WeierstrassModel:
        field = cubic.field
        if cubic.degree != 3 or cubic.leading != field.one:
            raise InputError("curve must be a monic cubic in x")
        return cls(field, cubic[2], cubic[1], cubic[0])

    @property
    def is_short(self) -> bool:
        return self.c2.is_zero()

    @property
    def a4(self):
        if not self.is_short:
            raise InputError("a4 is only defined for a short model")
        return self.c1

    @property
    def a6(self):
        if not self.is_short:
            raise InputError("a6 is only defined for a short model")
        return self.c0

    def cubic(self) -> XPoly:
        K = self.field
        return XPoly(K, (self.c0, self.c1, self.c2, K.one))

    def cubic_derivative(self) -> XPoly:
        K = self.field
        return XPoly(K, (self.c1, self.c2 * 2, K.from_int(3)))

    def discriminant(self) -> FieldElement:
        """16 times the discriminant of the cubic; -16(4 a4^3 + 27 a6^2) when short."""
        if self._disc is None:
            b, c, d = self.c2, self.c1, self.c0
            disc = (
                b * c * d * 18
                - b ** 3 * d * 4
                + b ** 2 * c ** 2
                - c ** 3 * 4
                - d ** 2 * 27
            )
            self._disc = disc * 16
        return self._disc

    def c4(self) -> FieldElement:
        return self.c2 ** 2 * 16 - self.c1 * 48

    def c6(self) -> FieldElement:
        return -(self.c2 ** 3) * 64 + self.c2 * self.c1 * 288 - self.c0 * 864

    def j_invariant(self) -> FieldElement:
        return self.c4() ** 3 / self.discriminant()

    def is_isotrivial(self) -> bool:
        return self.j_invariant().is_constant()

    def depress(self):
        """Short model via x -> x - c2/3; returns (model, shift) with x_new = x + shift."""
        if self.is_short:
            return self, self.field.zero
        s = self.c2 / 3
        a4 = self.c1 - self.c2 ** 2 / 3
        a6 = self.c0 - self.c1 * self.c2 / 3 + self.c2 ** 3 * (self.field.from_fraction(2, 27))
        return WeierstrassModel.short(self.field, a4, a6), s

    def rescale(self, c: FieldElement):
        """The isomorphic model with (c2, c1, c0) -> (c^2 c2, c^4 c1, c^6 c0)."""
        if c.is_zero():
            raise InputError("rescaling by zero")
        return WeierstrassModel(
            self.field, self.c2 * c ** 2, self.c1 * c ** 4, self.c0 * c ** 6
        )

    def pullback(self, phi) -> WeierstrassModel:
        """Base change along a cover of the line."""
        return WeierstrassModel(
            phi.source,
            phi.pullback(self.c2),
            phi.pullback(self.c1),
            phi.pullback(self.c0),
        )

    def __eq__(self, other):
        return (
            isinstance(other, WeierstrassModel)
            and self.field == other.field
            and self.c2 == other.c2
            and self.c1 == other.c1
            and self.c0 == other.c0
        )

    def __hash__(self):
        return hash((self.field, self.c2, self.c1, self.c0))

    def __str__(self):
        return "y^2 = %s" % self.cubic()

    def __repr__(self):
        return "WeierstrassModel(%s)" % self


class CurvePoint:
    """A point of E(K): the origin or an affine pair satisfying the model."""

    __slots__ = ("model", "x", "y")

    def __init__(self, model: WeierstrassModel, x, y, check: bool = True):
        self.model = model
        self.x = x
        self.y = y
        if check and x is not None:
            if y * y != model.cubic().evaluate(x):
                raise InputError("point not on curve")

    @classmethod
    def zero(cls, model) -> CurvePoint:
        return cls(model, None, None, check=False)

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        return (
            isinstance(other, CurvePoint)
            and self.model == other.model
            and self.x == other.x
            and self.y == other.y
        )

    def __hash__(self):
        return hash((self.model, self.x, self.y))

    def __neg__(self):
        if self.is_zero:
            return self
        return CurvePoint(self.model, self.x, -self.y, check=False)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, -other)

    def __rmul__(self, n: int):
        return scalar_mul(n, self)

    def __str__(self):
        if self.is_zero:
            return "O"
        return "(%s, %s)" % (self.x, self.y)

    def __repr__(self):
        return "CurvePoint%s" % self


def add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.model != Q.model:
        raise InputError("points on different models")
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    E = P.model
    if P.x == Q.x:
        if P.y == -Q.y:
            return CurvePoint.zero(E)
        m = E.cubic_derivative().evaluate(P.x) / (P.y * 2)
    else:
        m = (Q.y - P.y) / (Q.x - P.x)
    x3 = m * m - E.c2 - P.x - Q.x
    y3 = m * (P.x - x3) - P.y
    return CurvePoint(E, x3, y3, check=False)


def negate(P: CurvePoint) -> CurvePoint:
    return -P


def scalar_mul(n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return scalar_mul(-n, -P)
    R = CurvePoint.zero(P.model)
    Q = P
    while n:
        if n & 1:
            R = add(R, Q)
        Q = add(Q, Q)
        n >>= 1
    return R


def discriminant(E: WeierstrassModel) -> FieldElement:
    return E.discriminant()


def j_invariant(E: WeierstrassModel) -> FieldElement:
    return E.j_invariant()


# ---------------------------------------------------------------------------
# local theory


class KodairaType:
    """Fiber type; kind "I" and "I*" carry the index m."""

    __slots__ = ("kind", "m")

    _KINDS = ("I", "II", "III", "IV", "I*", "IV*", "III*", "II*")

    def __init__(self, kind: str, m: int = 0):
        if kind not in self._KINDS:
            raise InputError("unknown fiber type %r" % kind)
        if m and kind not in ("I", "I*"):
            raise InputError("only I and I* carry an index")
        self.kind = kind
        self.m = m

    @property
    def is_good(self) -> bool:
        return self.kind == "I" and self.m == 0

    @property
    def is_multiplicative(self) -> bool:
        return self.kind == "I" and self.m > 0

    @property
    def is_semistable(self) -> bool:
        return self.kind == "I"

    @property
    def is_additive(self) -> bool:
        return self.kind != "I"

    @property
    def component_order(self) -> int:
        """Order of the component group of the closed fiber."""
        if self.kind == "I":
            return max(self.m, 1)
        if self.kind == "I*":
            return 4
        return {"II": 1, "III": 2, "IV": 3, "IV*": 3, "III*": 2, "II*": 1}[self.kind]

    def symbol(self) -> str:
        if self.kind == "I":
            return "I%d" % self.m
        if self.kind == "I*":
            return "I%d*" % self.m
        return self.kind

    def __eq__(self, other):
        return (
            isinstance(other, KodairaType)
            and self.kind == other.kind
            and self.m == other.m
        )

    def __hash__(self):
        return hash((self.kind, self.m))

    def __str__(self):
        return self.symbol()

    def __repr__(self):
        return "KodairaType(%s)" % self


def _short(E: WeierstrassModel) -> WeierstrassModel:
    return E if E.is_short else E.depress()[0]


def twist_exponent(E: WeierstrassModel, v: Place) -> int:
    """The k with (a4 pi^4k, a6 pi^6k) regular of minimal valuation at v."""
    E = _short(E)
    o4 = ord_at(E.a4, v)
    o6 = ord_at(E.a6, v)
    if o4 is INF:
        return -(o6 // 6)
    if o6 is INF:
        return -(o4 // 4)
    return -min(o4 // 4, o6 // 6)


def minimal_model_at(E: WeierstrassModel, v: Place):
    """The v-minimal short model and its twist exponent k.

    Points move by (x, y) -> (x pi^2k, y pi^3k).
    """
    E = _short(E)
    k = twist_exponent(E, v)
    if k == 0:
        return E, 0
    pi = v.uniformizer()
    return WeierstrassModel.short(E.field, E.a4 * pi ** (4 * k), E.a6 * pi ** (6 * k)), k


def kodaira_type(E: WeierstrassModel, v: Place) -> KodairaType:
    """Fiber type from (ord c4, ord disc) on the v-minimal model."""
    Emin, _ = minimal_model_at(E, v)
    d = ord_at(Emin.discriminant(), v)
    if d == 0:
        return KodairaType("I", 0)
    a = ord_at(Emin.c4(), v)
    if a == 0:
        return KodairaType("I", d)
    if 3 * a < d:
        # j has a pole but the fiber is additive: a quadratic twist of I_(d-6)
        if d - 6 < 1:
            raise ConsistencyError("impossible valuations (%s, %s) at %s" % (a, d, v))
        return KodairaType("I*", d - 6)
    table = {2: "II", 3: "III", 4: "IV", 8: "IV*", 9: "III*", 10: "II*"}
    if d == 6:
        return KodairaType("I*", 0)
    if d in table:
        return KodairaType(table[d])
    raise ConsistencyError("no fiber type for ord(disc) = %s at %s" % (d, v))


def curve_places(E: WeierstrassModel, extra=()) -> list:
    """Places where anything local can happen: support of the coefficients,
    the discriminant, anything in ``extra``, and infinity."""
    E = _short(E)
    hints = []
    polys = [E.a4.num, E.a4.den, E.a6.num, E.a6.den]
    out = []
    for q in polys:
        for place, _ in places_of_poly(q, E.field, hints=hints):
            out.append(place)
            hints.append(place.pi)
    disc = E.discriminant()
    for q in (disc.num, disc.den):
        for place, _ in places_of_poly(q, E.field, hints=hints):
            out.append(place)
            hints.append(place.pi)
    out.extend(extra)
    out.append(E.field.infinity())
    seen, uniq = set(), []
    for p in out:
        if p not in seen:
            seen.add(p)
            uniq.append(p)
    return sorted(uniq, key=lambda p: p.sort_key())


def bad_places(E: WeierstrassModel) -> list:
    """[(Place, KodairaType)] over the places of bad reduction."""
    out = []
    for v in curve_places(E):
        ktype = kodaira_type(E, v)
        if not ktype.is_good:
            out.append((v, ktype))
    return out


def deg_omega(E: WeierstrassModel) -> int:
    """Degree of the sheaf of invariant differentials: (1/12) sum ord(disc_min)."""
    E = _short(E)
    disc = E.discriminant()
    total = 0
    for v in curve_places(E):
        total += v.degree * (ord_at(disc, v) + 12 * twist_exponent(E, v))
    if total % 12:
        raise ConsistencyError("sum of minimal discriminant orders is not 12-divisible")
    return total // 12


def intersection_with_zero(E: WeierstrassModel, P: CurvePoint, v: Place) -> int:
    """Local intersection number of the section P with the zero section at v.

    Only defined here at places of good or multiplicative reduction; additive
    places are refused rather than guessed at.
    """
    if P.is_zero:
        raise InputError("the zero section meets itself everywhere")
    ktype = kodaira_type(E, v)
    if ktype.is_additive:
        raise HypothesisError(
            "intersection with the zero section needs semistable reduction at %s" % v
        )
    Eshort, shift = (E, E.field.zero) if E.is_short else E.depress()
    k = twist_exponent(Eshort, v)
    ox = ord_at((P.x + shift), v) + 2 * k
    if ox >= 0:
        return 0
    oy = ord_at(P.y, v) + 3 * k
    if 3 * ox != 2 * oy:
        raise ConsistencyError("pole orders %s, %s of x, y are inconsistent" % (ox, oy))
    return -ox // 2


# ---------------------------------------------------------------------------
# functions on the curve


class CurveFunction:
    """An element rx(x) + y ry(x) of K(E)."""

    __slots__ = ("model", "rx", "ry")

    def __init__(self, model: WeierstrassModel, rx: RatX, ry: RatX = None):
        self.model = model
        self.rx = rx
        self.ry = ry if ry is not None else RatX(model.field, XPoly.zero(model.field))

    @classmethod
    def zero(cls, model):
        z = RatX(model.field, XPoly.zero(model.field))
        return cls(model, z, z)

    @classmethod
    def const(cls, model, c: FieldElement):
        return cls(model, RatX.const(c))

    @classmethod
    def x_coord(cls, model):
        return cls(model, RatX.from_xpoly(XPoly.x(model.field)))

    @classmethod
    def y_coord(cls, model):
        one = RatX.from_xpoly(XPoly.one(model.field))
        zero = RatX(model.field, XPoly.zero(model.field))
        return cls(model, zero, one)

    def is_zero(self):
        return self.rx.is_zero() and self.ry.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, CurveFunction)
            and self.model == other.model
            and self.rx == other.rx
            and self.ry == other.ry
        )

    def __add__(self, other):
        return CurveFunction(self.model, self.rx + other.rx, self.ry + other.ry)

    def __sub__(self, other):
        return CurveFunction(self.model, self.rx - other.rx, self.ry - other.ry)

    def __neg__(self):
        return CurveFunction(self.model, -self.rx, -self.ry)

    def __mul__(self, other):
        f = RatX.from_xpoly(self.model.cubic())
        rx = self.rx * other.rx + f * self.ry * other.ry
        ry = self.rx * other.ry + self.ry * other.rx
        return CurveFunction(self.model, rx, ry)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero in K(E)")
        f = RatX.from_xpoly(self.model.cubic())
        norm = other.rx * other.rx - f * other.ry * other.ry
        if norm.is_zero():
            raise ConsistencyError("zero norm for a nonzero curve function")
        conj = CurveFunction(self.model, other.rx, -other.ry)
        prod = self * conj
        inv_norm = RatX(self.model.field, norm.den, norm.num)
        return CurveFunction(self.model, prod.rx * inv_norm, prod.ry * inv_norm)

    def __pow__(self, n: int):
        if n < 0:
            one = CurveFunction.const(self.model, self.model.field.one)
            return (one / self) ** (-n)
        out = CurveFunction.const(self.model, self.model.field.one)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def dx_coefficient(self) -> CurveFunction:
        """The h in dF = h dx, reduced modulo y^2 = f(x): uses dy = f'(x)/(2y) dx."""
        f = RatX.from_xpoly(self.model.cubic())
        fprime = RatX.from_xpoly(self.model.cubic().derivative_x())
        two = RatX.const(self.model.field.from_int(2))
        ry_new = self.ry.derivative_x() + self.ry * fprime / (two * f)
        return CurveFunction(self.model, self.rx.derivative_x(), ry_new)

    def evaluate(self, P: CurvePoint) -> FieldElement:
        if P.is_zero:
            raise InputError("evaluation at the origin by series expansion only")
        return self.rx.evaluate(P.x) + P.y * self.ry.evaluate(P.x)

    def map_coeffs(self, fn, model=None):
        m = model or self.model
        rx = RatX(m.field, self.rx.num.map_coeffs(fn, m.field), self.rx.den.map_coeffs(fn, m.field))
        ry = RatX(m.field, self.ry.num.map_coeffs(fn, m.field), self.ry.den.map_coeffs(fn, m.field))
        return CurveFunction(m, rx, ry)

    def __str__(self):
        if self.ry.is_zero():
            return str(self.rx)
        if self.rx.is_zero():
            return "y*(%s)" % self.ry
        return "(%s) + y*(%s)" % (self.rx, self.ry)

    def __repr__(self):
        return "CurveFunction(%s)" % self


def parse_curve_function(text: str, model: WeierstrassModel) -> CurveFunction:
    """Parse an expression in the base variable, x and y to an element of K(E)."""
    ast = parse_ast(text)
    field = model.field
    extra = ast_names(ast) - {field.var, "x", "y"}
    if extra:
        raise InputError("unknown variable %r" % sorted(extra)[0])
    atoms = {
        field.var: CurveFunction.const(model, field.gen),
        "x": CurveFunction.x_coord(model),
        "y": CurveFunction.y_coord(model),
    }
    return eval_ast(ast, atoms, lambda n: CurveFunction.const(model, field.from_int(n)))


# ---------------------------------------------------------------------------
# expansion at the origin


class LaurentSeries:
    """Truncated Laurent series over K: sum coeffs[i] z^(shift+i), exact below prec."""

    __slots__ = ("field", "shift", "coeffs", "prec")

    def __init__(self, field, shift: int, coeffs, prec: int):
        cs = list(coeffs)
        # strip leading zeros, clamp to the precision window
        while cs and cs[0].is_zero():
            cs.pop(0)
            shift += 1
        if shift + len(cs) > prec:
            cs = cs[: max(0, prec - shift)]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            shift = prec
        self.field = field
        self.shift = shift
        self.coeffs = tuple(cs)
        self.prec = prec

    @classmethod
    def zero(cls, field, prec):
        return cls(field, prec, (), prec)

    @classmethod
    def monomial(cls, field, c, n: int, prec: int):
        return cls(field, n, (c,), prec)

    def is_zero_to_prec(self):
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            return None
        return self.shift

    def coefficient(self, n: int) -> FieldElement:
        if n >= self.prec:
            raise InputError("coefficient %d beyond precision %d" % (n, self.prec))
        i = n - self.shift
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __add__(self, other):
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return LaurentSeries(self.field, other.shift, other.coeffs, prec)
        if not other.coeffs:
            return LaurentSeries(self.field, self.shift, self.coeffs, prec)
        lo = min(self.shift, other.shift)
        hi = min(prec, max(self.shift + len(self.coeffs), other.shift + len(other.coeffs)))
        out = []
        for n in range(lo, hi):
            a = self.coeffs[n - self.shift] if 0 <= n - self.shift < len(self.coeffs) else self.field.zero
            b = other.coeffs[n - other.shift] if 0 <= n - other.shift < len(other.coeffs) else self.field.zero
            out.append(a + b)
        return LaurentSeries(self.field, lo, out, prec)

    def __neg__(self):
        return LaurentSeries(self.field, self.shift, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            prec = min(
                self.prec + other.shift if other.coeffs else self.prec + other.prec,
                other.prec + self.shift if self.coeffs else other.prec + self.prec,
            )
            return LaurentSeries.zero(self.field, prec)
        prec = min(self.prec + other.shift, other.prec + self.shift)
        n = min(len(self.coeffs) + len(other.coeffs) - 1, prec - self.shift - other.shift)
        out = [self.field.zero] * n
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + a * b
        return LaurentSeries(self.field, self.shift + other.shift, out, prec)

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("inverting a series that vanishes to precision")
        a = self.coeffs
        rel = min(len(a), self.prec - self.shift)
        inv0 = self.field.one / a[0]
        out = [inv0]
        for k in range(1, rel):
            s = self.field.zero
            for i in range(1, k + 1):
                ai = a[i] if i < len(a) else self.field.zero
                s = s + ai * out[k - i]
            out.append(-s * inv0)
        return LaurentSeries(self.field, -self.shift, out, self.prec - 2 * self.shift)

    def __truediv__(self, other):
        return self * other.inverse()

    def sqrt_one(self):
        """Square root of a series 1 + O(z) with constant term one."""
        if self.shift != 0 or not self.coeffs or self.coeffs[0] != self.field.one:
            raise InputError("sqrt needs constant term 1")
        half = self.field.one / self.field.from_int(2)
        rel = self.prec
        out = [self.field.one]
        for k in range(1, rel):
            uk = self.coeffs[k] if k < len(self.coeffs) else self.field.zero
            s = self.field.zero
            for i in range(1, k):
                s = s + out[i] * out[k - i]
            out.append((uk - s) * half)
        return LaurentSeries(self.field, 0, out, self.prec)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            n = self.shift + i
            if n == 0:
                terms.append("(%s)" % c)
            else:
                terms.append("(%s)*z^%d" % (c, n))
        body = " + ".join(terms) if terms else "0"
        return "%s + O(z^%d)" % (body, self.prec)


def _xpoly_series(p: XPoly, xs: LaurentSeries, prec: int) -> LaurentSeries:
    field = p.field
    acc = LaurentSeries.zero(field, prec)
    for c in reversed(p.coeffs):
        acc = acc * xs + LaurentSeries.monomial(field, c, 0, prec)
    return acc


def _ratx_series(r: RatX, xs: LaurentSeries, prec: int) -> LaurentSeries:
    num = _xpoly_series(r.num, xs, prec)
    den = _xpoly_series(r.den, xs, prec)
    return num / den


def expand_at_infinity(g: CurveFunction, order: int) -> LaurentSeries:
    """Series of g in the local parameter z at the origin: x = z^-2, y = z^-3 (1 + ...).

    The square root branch is the one with constant term 1, so y ~ +z^-3.
    Coefficients are exact for exponents below ``order``.
    """
    E = g.model
    field = E.field
    degs = (
        g.rx.num.degree + g.rx.den.degree + g.ry.num.degree + g.ry.den.degree
    )
    work = order + 4 * max(degs, 0) + 14
    xs = LaurentSeries.monomial(field, field.one, -2, work)
    u = LaurentSeries(
        field,
        0,
        (field.one, field.zero, E.c2, field.zero, E.c1, field.zero, E.c0),
        work,
    )
    ys = LaurentSeries.monomial(field, field.one, -3, work) * u.sqrt_one()
    out = _ratx_series(g.rx, xs, work)
    if not g.ry.is_zero():
        out = out + ys * _ratx_series(g.ry, xs, work)
    if out.prec < order:
        raise ConsistencyError("series precision fell short (%d < %d)" % (out.prec, order))
    return out


def value_at_O(g: CurveFunction) -> FieldElement:
    """Value of a curve function at the origin; errors on a pole."""
    if g.is_zero():
        return g.model.field.zero
    s = expand_at_infinity(g, 1)
    v = s.valuation()
    if v is None:
        raise ConsistencyError("nonzero function with series zero to precision")
    if v < 0:
        raise HypothesisError("the function has a pole at the origin")
    if v > 0:
        return g.model.field.zero
    return s.coefficient(0)
