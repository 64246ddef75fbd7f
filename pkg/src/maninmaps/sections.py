"""Graded sections: scalars with a weight and a differential degree.

A ``GradedSection`` holds a value in K together with a weight kappa (the
power of the invariant-differential bundle its coordinate expression carries)
and a differential degree m (the power of the module of 1-forms on the
line).  The order at a place is computed against the place-minimal model, so
it does not depend on which short Weierstrass model the value was written
in; the correction is kappa times the local twist exponent, plus -2m at
infinity where d(var) has its double pole.
"""

from __future__ import annotations

from .elliptic import WeierstrassModel, curve_places, deg_omega, twist_exponent
from .errors import ConsistencyError, InputError
from .funcfield import FieldElement, Place, ord_at, support_places


class GradedSection:
    """value * (dx/2y)^weight * (d var)^diff_degree on a given model."""

    __slots__ = ("value", "weight", "diff_degree", "model")

    def __init__(self, value: FieldElement, weight: int, diff_degree: int,
                 model: WeierstrassModel):
        if not model.is_short:
            model = model.depress()[0]
        if value.field != model.field:
            raise InputError("section value and model live over different fields")
        self.value = value
        self.weight = weight
        self.diff_degree = diff_degree
        self.model = model

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __mul__(self, other: "GradedSection") -> "GradedSection":
        if self.model != other.model:
            raise InputError("sections on different models")
        return GradedSection(
            self.value * other.value,
            self.weight + other.weight,
            self.diff_degree + other.diff_degree,
            self.model,
        )

    def __str__(self):
        return "(%s) of weight %d, differential degree %d" % (
            self.value, self.weight, self.diff_degree,
        )

    def __repr__(self):
        return "GradedSection(%s)" % self


class DivisorReport:
    """A divisor as a sorted list of (Place, ord) with degree-weighted total."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = sorted(
            [(p, o) for p, o in entries if o], key=lambda po: po[0].sort_key()
        )

    @property
    def degree(self) -> int:
        return sum(p.degree * o for p, o in self.entries)

    def ord(self, place: Place) -> int:
        for p, o in self.entries:
            if p == place:
                return o
        return 0

    def support(self) -> list:
        return [p for p, _ in self.entries]

    def positive_part(self) -> "DivisorReport":
        return DivisorReport([(p, o) for p, o in self.entries if o > 0])

    def negative_part(self) -> "DivisorReport":
        """Poles, recorded with positive multiplicities."""
        return DivisorReport([(p, -o) for p, o in self.entries if o < 0])

    def scale(self, n: int) -> "DivisorReport":
        return DivisorReport([(p, n * o) for p, o in self.entries])

    def __add__(self, other: "DivisorReport") -> "DivisorReport":
        acc = {}
        for p, o in list(self.entries) + list(other.entries):
            acc[p] = acc.get(p, 0) + o
        return DivisorReport(list(acc.items()))

    def serialize(self) -> list:
        return [
            {"place": str(p), "degree": p.degree, "ord": o} for p, o in self.entries
        ]

    def __str__(self):
        if not self.entries:
            return "0"
        return " + ".join("%d*(%s)" % (o, p) for p, o in self.entries)

    def __repr__(self):
        return "DivisorReport(%s)" % self


def ord_section(S: GradedSection, v: Place) -> int:
    """Order of a nonzero graded section at a place, model-independently."""
    if S.is_zero():
        raise InputError("order of the zero section")
    k = twist_exponent(S.model, v)
    correction = -2 * S.diff_degree if v.is_infinity else 0
    return ord_at(S.value, v) + k * S.weight + correction


def divisor(S: GradedSection, extra_places=()) -> DivisorReport:
    """Full divisor of a nonzero graded section.

    The support is contained in the support of the value, the places where
    the model needs a twist, and infinity; the degree identity
    degree = -2 m + weight * deg_omega is checked before returning.
    """
    if S.is_zero():
        raise InputError("divisor of the zero section")
    hints = [p.pi for p in curve_places(S.model) if p.pi is not None]
    places = list(curve_places(S.model, extra=extra_places))
    seen = set(places)
    for p in support_places(S.value, hints=hints):
        if p not in seen:
            places.append(p)
            seen.add(p)
    report = DivisorReport([(v, ord_section(S, v)) for v in places])
    expected = -2 * S.diff_degree + S.weight * deg_omega(S.model)
    if report.degree != expected:
        raise ConsistencyError(
            "divisor degree %d does not match -2m + weight*deg_omega = %d"
            % (report.degree, expected)
        )
    return report
