"""Characteristic-p descent machinery.

Over K = F_p(t), p > 3, a short model y^2 = f(x) carries: the coefficient
split f^((p-1)/2) = x^p M(x) + A x^(p-1) + L(x) whose x^(p-1) coefficient A
is the Hasse invariant; a twisted differential measuring the failure of
Kodaira-Spencer to be an isomorphism; an explicit additive map
E(K)/pE(K) -> K given by a rational formula in the coordinates and their
t-derivatives; and the section it induces, whose pole divisor is controlled
at semistable places.  Tangencies of multiples of a point with the zero
section are scanned through division-polynomial values, which keeps the
whole computation inside fast F_p[t] arithmetic.
"""

from __future__ import annotations

from .elliptic import (
    CurvePoint,
    KodairaType,
    WeierstrassModel,
    bad_places,
    curve_places,
    deg_omega,
    kodaira_type,
    minimal_model_at,
    scalar_mul,
    twist_exponent,
)
from .errors import ConsistencyError, HypothesisError, InputError
from .funcfield import (
    FieldElement,
    Place,
    Residue,
    XPoly,
    ord_at,
    places_of_poly,
)
from .polynomials import Poly
from .sections import DivisorReport, GradedSection, divisor, ord_section


def _require_charp(E: WeierstrassModel) -> int:
    p = E.field.char
    if p == 0:
        raise InputError("this operation needs positive characteristic")
    return p


def _short_with_point(E: WeierstrassModel, P: CurvePoint = None):
    if E.is_short:
        return E, P
    Es, shift = E.depress()
    if P is None or P.is_zero:
        return Es, CurvePoint.zero(Es) if P is not None else None
    return Es, CurvePoint(Es, P.x + shift, P.y, check=False)


class HasseData:
    """The split f^((p-1)/2) = x^p M(x) + A x^(p-1) + L(x)."""

    __slots__ = ("A", "M", "L", "model")

    def __init__(self, A: FieldElement, M: XPoly, L: XPoly, model: WeierstrassModel):
        self.A = A
        self.M = M
        self.L = L
        self.model = model

    def __str__(self):
        return "A = %s, M = %s, L = %s" % (self.A, self.M, self.L)


def hasse_data(E: WeierstrassModel) -> HasseData:
    """Split f^((p-1)/2) by x-degree; the defining identity is re-checked."""
    p = _require_charp(E)
    E, _ = _short_with_point(E)
    K = E.field
    fpow = E.cubic() ** ((p - 1) // 2)
    M = XPoly(K, fpow.coeffs[p:])
    A = fpow[p - 1]
    L = XPoly(K, fpow.coeffs[: p - 1])
    shifted = XPoly(K, (K.zero,) * p + M.coeffs) if not M.is_zero() else XPoly.zero(K)
    rebuilt = shifted + XPoly(K, (K.zero,) * (p - 1) + (A,)) + L
    if rebuilt != fpow:
        raise ConsistencyError("Hasse split does not rebuild f^((p-1)/2)")
    if M.degree > p - 3:
        raise ConsistencyError("M has x-degree %d > p - 3" % M.degree)
    return HasseData(A, M, L, E)


def hasse_invariant_section(E: WeierstrassModel) -> GradedSection:
    """The Hasse invariant as a weight p-1 section."""
    data = hasse_data(E)
    return GradedSection(data.A, E.field.char - 1, 0, data.model)


def kodaira_spencer_section(E: WeierstrassModel) -> GradedSection:
    """The twisted differential a4/(18 a6) dj/j of weight -2.

    This closed form degenerates when a6 = 0, j = 0, or j is a p-th power
    (in particular for isotrivial curves); those inputs are refused.
    """
    _require_charp(E)
    E, _ = _short_with_point(E)
    if E.a6.is_zero():
        raise HypothesisError("the twisted differential formula needs a6 != 0")
    j = E.j_invariant()
    if j.is_zero():
        raise HypothesisError("the twisted differential formula needs j != 0")
    jprime = j.derive()
    if jprime.is_zero():
        raise HypothesisError(
            "the j-invariant is a p-th power (or constant); descent is inapplicable"
        )
    value = E.a4 * jprime / (E.a6 * j * 18)
    return GradedSection(value, -2, 1, E)


def p_descent_value(E: WeierstrassModel, P: CurvePoint) -> FieldElement:
    """The additive map E(K)/pE(K) -> K in coordinates.

    Torsion killed by doubling (y(P) = 0 identically) maps to 0; the generic
    value is y M(x) + z^p - A z for the explicit argument z built from
    dx/2y, dDelta/Delta and the twisted differential.
    """
    p = _require_charp(E)
    E, P = _short_with_point(E, P)
    if P.is_zero:
        return E.field.zero
    if P.y.is_zero():
        return E.field.zero  # 2-torsion lies in pE(K) since p is odd
    lam = kodaira_spencer_section(E).value
    data = hasse_data(E)
    x, y = P.x, P.y
    disc = E.discriminant()
    dlog_disc = disc.derive() / disc
    z = x.derive() / (y * 2 * lam) - (
        x * x * 12 + (dlog_disc / lam) * x + E.a4 * 8
    ) / (y * 12)
    return y * data.M.evaluate(x) + z ** p - data.A * z


def p_descent_section(E: WeierstrassModel, P: CurvePoint) -> GradedSection:
    """The value of the descent map as a differential of weight p-2."""
    p = _require_charp(E)
    E, P = _short_with_point(E, P)
    lam = kodaira_spencer_section(E).value
    return GradedSection(p_descent_value(E, P) * lam, p - 2, 1, E)


# ---------------------------------------------------------------------------
# the order table for the twisted differential


def _table_expectation(ktype: KodairaType, p: int):
    """(description, predicate) for the order of the weight -2 differential."""
    if ktype.kind == "I":
        if ktype.m == 0 or ktype.m % p == 0:
            return ">= 0", lambda ell: ell >= 0
        return "== -1", lambda ell: ell == -1
    if ktype.kind in ("II", "III", "IV"):
        return ">= -1", lambda ell: ell >= -1
    if ktype.kind == "I*":
        if ktype.m % p == 0:
            return ">= -1", lambda ell: ell >= -1
        return "== -2", lambda ell: ell == -2
    return ">= -2", lambda ell: ell >= -2


class TableRow:
    __slots__ = ("place", "ktype", "ell", "expected", "ok")

    def __init__(self, place, ktype, ell, expected, ok):
        self.place = place
        self.ktype = ktype
        self.ell = ell
        self.expected = expected
        self.ok = ok


def reduction_table_report(E: WeierstrassModel) -> list:
    """Check ord of the twisted differential against the fiber-type table.

    Returns a list of TableRow covering every place where either the
    differential or the reduction is nontrivial; all other places have
    good reduction and order 0, which the table allows.
    """
    p = _require_charp(E)
    E, _ = _short_with_point(E)
    lam = kodaira_spencer_section(E)
    places = [v for v, _ in divisor(lam).entries]
    seen = set(places)
    for v in curve_places(E):
        if v not in seen:
            places.append(v)
            seen.add(v)
    rows = []
    for v in sorted(places, key=lambda q: q.sort_key()):
        ktype = kodaira_type(E, v)
        ell = ord_section(lam, v)
        expected, pred = _table_expectation(ktype, p)
        rows.append(TableRow(v, ktype, ell, expected, pred(ell)))
    return rows


# ---------------------------------------------------------------------------
# component groups and the descent divisor


def in_identity_component(E: WeierstrassModel, P: CurvePoint, v: Place) -> bool:
    """Whether P reduces to a smooth point of the v-minimal closed fiber.

    Valid at semistable places: a pole of x counts as smooth (the point
    reduces to the origin), and the unique singular point of an I_m fiber
    is the node (-3 b / 2 a, 0) of the reduced cubic x^3 + a x + b.
    """
    if P.is_zero:
        return True
    E, P = _short_with_point(E, P)
    Emin, k = minimal_model_at(E, v)
    pi = v.uniformizer()
    x = P.x * pi ** (2 * k)
    y = P.y * pi ** (3 * k)
    if ord_at(x, v) < 0:
        return True
    R = Residue(v)
    abar = R.reduce(Emin.a4)
    bbar = R.reduce(Emin.a6)
    if R.is_zero(abar):
        raise HypothesisError("additive reduction at %s; component test refused" % v)
    xi = R.mul(R.mul(bbar, R.from_int(-3)), R.inv(R.mul(abar, R.from_int(2))))
    return not (R.eq(R.reduce(x), xi) and R.is_zero(R.reduce(y)))


def component_order(E: WeierstrassModel, P: CurvePoint, v: Place, cap: int) -> int:
    """Order of P in the component group of the fiber at an I_m place."""
    ktype = kodaira_type(E, v)
    if not ktype.is_semistable:
        raise HypothesisError("component order computed only at semistable places")
    m = max(ktype.m, 1)
    if m > cap:
        raise HypothesisError(
            "component order at %s undetermined within n_max = %d" % (v, cap)
        )
    for n in sorted(d for d in range(1, m + 1) if m % d == 0):
        if in_identity_component(E, scalar_mul(n, P), v):
            return n
    raise ConsistencyError("component order at %s does not divide m = %d" % (v, m))


class DescentDivisor:
    """Zeros/poles of the twisted differential and the p-divisible part."""

    __slots__ = ("zeros", "poles", "p_part", "total")

    def __init__(self, zeros, poles, p_part, total):
        self.zeros = zeros
        self.poles = poles
        self.p_part = p_part
        self.total = total


def descent_divisor(E: WeierstrassModel, P: CurvePoint, n_max: int = 30) -> DescentDivisor:
    """D = (p-1) D_0 + p D' for a semistable curve.

    D_0 / poles come from the divisor of the twisted differential; D' is
    supported on I_m places with p | m where the order of P in the
    component group is divisible by p.
    """
    p = _require_charp(E)
    E, P = _short_with_point(E, P)
    bad = bad_places(E)
    if any(not kt.is_semistable for _, kt in bad):
        raise HypothesisError("descent divisor needs everywhere semistable reduction")
    lam = kodaira_spencer_section(E)
    lam_div = divisor(lam)
    zeros = lam_div.positive_part()
    poles = lam_div.negative_part()
    p_entries = []
    for v, kt in bad:
        if kt.m >= 1 and kt.m % p == 0:
            order = component_order(E, P, v, cap=min(n_max, kt.m))
            if order % p == 0:
                p_entries.append((v, 1))
    p_part = DivisorReport(p_entries)
    total = zeros.scale(p - 1) + p_part.scale(p)
    return DescentDivisor(zeros, poles, p_part, total)


# ---------------------------------------------------------------------------
# division-polynomial values and the tangency scan


def _division_values(a: Poly, b: Poly, x0: Poly, y0: Poly, n_top: int) -> list:
    """Values psi_n(P) in k[t] for 0 <= n <= n_top on y^2 = x^3 + a x + b."""
    field = a.field
    zero, one = Poly.zero(field), Poly.one(field)

    def c(n):
        return Poly.const(field, field.from_int(n))

    x2 = x0 * x0
    x3 = x2 * x0
    a2 = a * a
    psi3 = c(3) * x2 * x2 + c(6) * a * x2 + c(12) * b * x0 - a2
    psi4_core = (
        x3 * x3
        + c(5) * a * x2 * x2
        + c(20) * b * x3
        - c(5) * a2 * x2
        - c(4) * a * b * x0
        - c(8) * b * b
        - a2 * a
    )
    two_y = c(2) * y0
    psi = [zero, one, two_y, psi3, two_y * c(2) * psi4_core]
    for n in range(5, n_top + 1):
        m = n // 2
        if n % 2:
            val = psi[m + 2] * psi[m] ** 3 - psi[m - 1] * psi[m + 1] ** 3
        elif two_y.is_zero():
            val = zero  # 2-torsion point: every even multiple is the origin
        else:
            val = psi[m] * (psi[m + 2] * psi[m - 1] ** 2 - psi[m - 2] * psi[m + 1] ** 2)
            val = val.divexact(two_y)
        psi.append(val)
    return psi


class TangencyScan:
    """Result of scanning multiples prime to p for contact with the zero section."""

    __slots__ = ("iotas", "n_max", "torsion_order")

    def __init__(self, iotas, n_max, torsion_order):
        self.iotas = iotas  # {Place: max local intersection over scanned n}
        self.n_max = n_max
        self.torsion_order = torsion_order


def tangency_scan(E: WeierstrassModel, P: CurvePoint, n_max: int,
                  watch_places=()) -> TangencyScan:
    """Local intersections (nP . O)_v maximized over n <= n_max prime to p.

    Multiples are never formed explicitly: division-polynomial values over a
    denominator-cleared model give every valuation.  Places outside the
    watched and model-special set are picked up from repeated factors of the
    division values, so a contact of order >= 2 anywhere is found; order-1
    contacts are only reported at watched/special places, which is all the
    bound bookkeeping needs.
    """
    p = _require_charp(E)
    E, P = _short_with_point(E, P)
    if P.is_zero:
        raise InputError("the zero section cannot be scanned")
    K = E.field
    # clear denominators: twist by the smallest c making everything polynomial
    need = {}
    for den, w in ((E.a4.den, 4), (E.a6.den, 6), (P.x.den, 2), (P.y.den, 3)):
        if den.is_one():
            continue
        for pi, e in places_of_poly(den, K):
            need[pi] = max(need.get(pi, 0), -(-e // w))
    cpoly = Poly.one(K.constants)
    for pi, e in need.items():
        cpoly = cpoly * pi.pi ** e
    c = FieldElement(K, cpoly)
    a4 = E.a4 * c ** 4
    a6 = E.a6 * c ** 6
    x0 = P.x * c ** 2
    y0 = P.y * c ** 3
    for val in (a4, a6, x0, y0):
        if not val.den.is_one():
            raise ConsistencyError("denominator clearing failed")
    Escan = WeierstrassModel.short(K, a4, a6)

    special = set(curve_places(Escan))
    special.update(watch_places)
    special.update(need)
    special.add(K.infinity())

    psi = _division_values(a4.num, a6.num, x0.num, y0.num, n_max + 1)
    torsion_order = None
    iotas = {}
    ns = [n for n in range(1, n_max + 1) if n % p]
    for n in ns:
        if psi[n].is_zero():
            torsion_order = n if torsion_order is None else torsion_order
            continue
        if n >= 2:
            w = psi[n].gcd(psi[n].derivative())
            if not w.is_constant():
                for q, _ in places_of_poly(w, K):
                    if q in special:
                        continue
                    iota = psi[n].multiplicity_of(q.pi)
                    if iota > iotas.get(q, 0):
                        iotas[q] = iota
    for v in special:
        kv = twist_exponent(Escan, v)
        best = 0
        for n in ns:
            if psi[n].is_zero():
                continue
            phi = x0.num * psi[n] * psi[n] - psi[n + 1] * psi[n - 1]
            if phi.is_zero():
                continue
            ox = (
                ord_at(FieldElement(K, phi), v)
                - 2 * ord_at(FieldElement(K, psi[n]), v)
                + 2 * kv
            )
            if ox < 0:
                if ox % 2:
                    raise ConsistencyError("odd pole order of x at %s" % v)
                best = max(best, -ox // 2)
        if best:
            iotas[v] = max(best, iotas.get(v, 0))
    return TangencyScan(iotas, n_max, torsion_order)


# ---------------------------------------------------------------------------
# the bound report


class Check:
    __slots__ = ("name", "ok", "detail")

    def __init__(self, name, ok, detail=""):
        self.name = name
        self.ok = bool(ok)
        self.detail = detail


class DescentBoundReport:
    __slots__ = (
        "genus", "d", "delta", "p", "bound", "n_max",
        "iotas", "t_ordinary", "t_special", "descent", "checks", "mu_zero",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw[name])

    @property
    def ok(self):
        return all(c.ok for c in self.checks)


def descent_bound_report(E: WeierstrassModel, P: CurvePoint, n_max: int = 30) -> DescentBoundReport:
    """Everything the semistable tangency bound asserts, checked on one curve.

    Requires semistable reduction with component groups of order prime to p.
    The scanned set is an under-approximation of all multiples prime to p;
    contacts at orders beyond n_max are not claimed absent.
    """
    p = _require_charp(E)
    E, P = _short_with_point(E, P)
    bad = bad_places(E)
    for v, kt in bad:
        if not kt.is_semistable:
            raise HypothesisError(
                "the tangency bound needs semistable reduction; %s at %s" % (kt, v)
            )
        if kt.m % p == 0 and kt.m > 0:
            raise HypothesisError(
                "p divides the component group order %d at %s" % (kt.m, v)
            )
    lam = kodaira_spencer_section(E)
    lam_div = divisor(lam)
    dd = descent_divisor(E, P, n_max)
    D = dd.total
    d = deg_omega(E)
    delta = sum(v.degree for v, _ in bad)
    bound = p * (2 * 0 - 2 - d) + (p - 1) * delta

    mu = p_descent_value(E, P)
    checks = []
    mu_zero = mu.is_zero()
    nu_div = None
    a_sec = hasse_invariant_section(E)
    if not mu_zero:
        nu = GradedSection(mu * lam.value, p - 2, 1, E)
        nu_div = divisor(nu)
        places = set(nu_div.support()) | set(D.support())
        ok = all(nu_div.ord(v) >= -D.ord(v) for v in places)
        checks.append(Check(
            "descent section lies in the D-twisted bundle", ok,
            "ord(nu) >= -ord(D) at %d places" % len(places),
        ))

    watch = set(lam_div.support()) | set(divisor(a_sec).support())
    scan = tangency_scan(E, P, n_max, watch_places=watch)
    tangent = {v: i for v, i in scan.iotas.items() if i >= 2}
    t_s = [v for v in tangent if ord_section(lam, v) > 0]
    t_o = [v for v in tangent if v not in t_s]
    w_o = sum(v.degree for v in t_o)
    w_s = sum(v.degree for v in t_s)
    checks.append(Check(
        "tangency count respects the bound",
        w_o + p * w_s <= bound,
        "|T_o| + p |T_s| = %d + %d*%d <= %d" % (w_o, p, w_s, bound),
    ))
    if not mu_zero:
        for v, iota in sorted(scan.iotas.items(), key=lambda vi: vi[0].sort_key()):
            lhs = nu_div.ord(v)
            rhs = min(
                p * (iota - 1) - D.ord(v),
                iota - 1 + ord_section(a_sec, v),
            )
            checks.append(Check(
                "refined local bound at %s" % v,
                lhs >= rhs,
                "ord(nu) = %d >= min(p(iota-1) - ord D, iota - 1 + ord A) = %d (iota=%d)"
                % (lhs, rhs, iota),
            ))
    return DescentBoundReport(
        genus=0, d=d, delta=delta, p=p, bound=bound, n_max=n_max,
        iotas=scan.iotas, t_ordinary=sorted(t_o, key=lambda v: v.sort_key()),
        t_special=sorted(t_s, key=lambda v: v.sort_key()),
        descent=dd, checks=checks, mu_zero=mu_zero,
    )
