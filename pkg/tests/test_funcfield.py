import random

import pytest

from maninmaps import (
    CoverMap,
    Differential,
    FunctionField,
    ParseError,
    PrimeField,
    QQ,
    XPoly,
    derive,
    divisor_of_differential,
    divisor_of_function,
    ord_at,
    ord_differential,
    parse,
    parse_element,
    pullback,
)
from maninmaps.funcfield import INF, support_places

from conftest import place


@pytest.fixture
def Kt():
    return FunctionField(QQ, "t")


@pytest.fixture
def Ks():
    return FunctionField(QQ, "s")


def rand_element(K, rng, deg=3):
    num = K.poly([rng.randrange(-5, 6) for _ in range(rng.randrange(1, deg + 2))])
    den = K.poly([rng.randrange(-5, 6) for _ in range(rng.randrange(1, deg + 2))])
    if num.is_zero() or den.is_zero():
        return K.one
    return K.element(num, den)


# -- ord_at


def test_ord_at_paper_pole(Ks):
    s = Ks.gen
    f = Ks.from_int(-8) / (s * (s ** 2 - 4) * (s ** 2 - 2))
    assert ord_at(f, place(Ks, [0, 1])) == -1
    assert ord_at(f, place(Ks, [-2, 0, 1])) == -1


def test_ord_at_infinity_degree_count(Kt):
    t = Kt.gen
    assert ord_at(t ** 2 + 1, Kt.infinity()) == -2


def test_ord_of_zero_is_infinite(Kt):
    assert ord_at(Kt.zero, Kt.infinity()) == INF
    assert ord_at(Kt.zero, place(Kt, [0, 1])) == INF


def test_ord_sum_weighted_is_zero(Kt):
    rng = random.Random(21)
    for _ in range(25):
        f = rand_element(Kt, rng)
        if f.is_zero() or f.is_constant():
            continue
        div = divisor_of_function(f)
        assert sum(p.degree * m for p, m in div) == 0


# -- derive


def test_derive_examples(Kt):
    t = Kt.gen
    assert derive(t ** 2) == 2 * t
    assert derive(Kt.one / (t - 1)) == -((t - 1) ** -2)
    K5 = FunctionField(PrimeField(5), "t")
    assert derive(K5.gen ** 5).is_zero()


def test_derive_leibniz_on_random_pairs():
    rng = random.Random(31)
    for constants in (QQ, PrimeField(7)):
        K = FunctionField(constants, "t")
        for _ in range(50):
            f, g = rand_element(K, rng), rand_element(K, rng)
            assert derive(f * g) == f * derive(g) + g * derive(f)
            assert derive(f + g) == derive(f) + derive(g)


# -- differentials


def test_ord_differential_examples(Kt):
    t = Kt.gen
    dt = Differential(Kt.one)
    assert ord_differential(dt, Kt.infinity()) == -2
    assert ord_differential(dt, place(Kt, [0, 1])) == 0
    dt2 = Differential(derive(t ** 2))
    assert ord_differential(dt2, place(Kt, [0, 1])) == 1


def test_differential_degree_minus_two(Kt):
    rng = random.Random(41)
    for _ in range(20):
        f = rand_element(Kt, rng)
        if f.is_zero():
            continue
        omega = Differential(f)
        div = divisor_of_differential(omega)
        assert sum(p.degree * m for p, m in div) == -2


# -- pullback


def test_pullback_examples(Kt, Ks):
    t, s = Kt.gen, Ks.gen
    phi = CoverMap(Ks, Kt, Ks.from_int(2) - s ** 2 / 2)
    assert pullback(phi, t - 2) == -(s ** 2) / 2
    assert pullback(phi, t - 1) == (2 - s ** 2) / 2
    ident = CoverMap(Kt, Kt, t ** 2)
    f = (t ** 3 - 1) / (t + 5)
    assert CoverMap(Kt, Kt, t).pullback(f) == f


def test_pullback_is_homomorphism(Kt, Ks):
    rng = random.Random(51)
    s = Ks.gen
    phi = CoverMap(Ks, Kt, (s ** 3 + 1) / (s - 2))
    for _ in range(20):
        f, g = rand_element(Kt, rng), rand_element(Kt, rng)
        assert phi.pullback(f + g) == phi.pullback(f) + phi.pullback(g)
        assert phi.pullback(f * g) == phi.pullback(f) * phi.pullback(g)


def test_pullback_chain_rule(Kt, Ks):
    rng = random.Random(61)
    s = Ks.gen
    r = Ks.from_int(2) - s ** 2 / 2
    phi = CoverMap(Ks, Kt, r)
    for _ in range(20):
        f = rand_element(Kt, rng)
        assert derive(phi.pullback(f)) == phi.pullback(derive(f)) * derive(r)


def test_cover_composition(Kt, Ks):
    Ku = FunctionField(QQ, "u")
    u = Ku.gen
    s = Ks.gen
    phi1 = CoverMap(Ks, Kt, Ks.from_int(2) - s ** 2 / 2)
    phi2 = CoverMap(Ku, Ks, (u ** 2 - 3) / (u + 1))
    chain = phi1.then(phi2)
    f = Kt.gen ** 2 - 5
    assert chain.pullback(f) == phi2.pullback(phi1.pullback(f))


# -- parser


def test_parse_cubic(Kt):
    cubic = parse("x^3 - (1+t)*x^2 + t*x", Kt)
    assert isinstance(cubic, XPoly)
    assert cubic.degree == 3
    assert cubic[2] == -(Kt.one + Kt.gen)
    assert cubic[1] == Kt.gen
    assert cubic[0].is_zero()


def test_parse_exact_fraction(Kt):
    v = parse("1/4", Kt)
    assert v == Kt.from_fraction(1, 4)


def test_parse_syntax_error_position(Kt):
    with pytest.raises(ParseError) as err:
        parse("x^^2", Kt)
    assert err.value.position == 2


def test_parse_rejects_unknown_variable(Kt):
    with pytest.raises(ParseError):
        parse("x + w", Kt)


def test_parse_rejects_x_in_denominator(Kt):
    with pytest.raises(Exception):
        parse("1/(x - t)", Kt)


def test_parse_division_by_zero_constant(Kt):
    with pytest.raises(ParseError):
        parse("1/(2 - 2)", Kt)


def test_parse_print_roundtrip(Kt):
    rng = random.Random(71)
    for _ in range(40):
        f = rand_element(Kt, rng)
        assert parse_element(str(f), Kt) == f
    K5 = FunctionField(PrimeField(5), "t")
    for _ in range(20):
        f = rand_element(K5, rng)
        assert parse_element(str(f), K5) == f


def test_support_places_includes_infinity(Ks):
    s = Ks.gen
    f = Ks.one / (s ** 2 - 2)
    sup = support_places(f)
    assert Ks.infinity() in sup


def test_place_rejects_reducible_polynomial(Kt):
    with pytest.raises(Exception):
        Kt.place(Kt.poly([-4, 0, 1]))  # (t-2)(t+2)
    # irreducible of degree 2 is fine
    Kt.place(Kt.poly([-2, 0, 1]))


def test_parse_rejects_negative_exponent(Kt):
    with pytest.raises(ParseError):
        parse("t^-2", Kt)
