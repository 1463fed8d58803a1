import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from knottorsion.algebra import QQ, RationalFunctionField
from knottorsion.charvar import (
    INFINITY,
    TraceCoordinates,
    boundary_slope,
    descend_to,
    format_slope,
    load_curve_fixture,
    parse_point,
    peripheral_traces,
    pole_order,
    rep_from_traces,
    specialization_check,
    trace_of_word,
    universal_torsion,
    value_at,
)
from knottorsion.presentation import Word, parse_presentation
from knottorsion.selftest import random_rational_point, random_word
from knottorsion.torsion import mat_trace

QU = RationalFunctionField(QQ, "u")
FREE = parse_presentation("<a,b | aB>")   # only a two-generator frame
fractions = st.fractions(min_value=-9, max_value=9, max_denominator=7)


@pytest.fixture(scope="module")
def m006():
    fix = load_curve_fixture("m006")
    return fix, universal_torsion(fix), peripheral_traces(fix)


# -- trace coordinates ---------------------------------------------------------------

def _lift(x, y, z):
    tc = TraceCoordinates(QQ(x), QQ(y), QQ(z))
    return rep_from_traces(FREE, tc, QQ, validate=False)


@given(fractions, fractions, fractions)
def test_rep_from_traces_realizes_the_character(x, y, z):
    lift = _lift(x, y, z)
    rep, L = lift.representation, lift.field
    a, b = Word.gen(0), Word.gen(1)
    for w, want in ((a, x), (b, y), (a * b, z), (a * b.inverse(), x * y - z)):
        assert descend_to(L, rep.trace(w), QQ) == want


def test_rep_from_traces_parabolic_case_is_reducible():
    lift = _lift(2, 2, 2)
    assert lift.reducible
    assert descend_to(lift.field, lift.representation.trace(Word.gen(0)), QQ) == 2


def test_m037_lift_uses_biquadratic_extension():
    fix = load_curve_fixture("m037")
    lift = fix.representation()
    assert lift.field.base.base == fix.field      # two quadratic steps over Q(u)
    for r in fix.presentation.relators:
        assert descend_to(lift.field, lift.representation.trace(r), fix.field) == fix.field.from_int(2)


@given(st.integers(0, 10 ** 6))
def test_trace_identity_on_random_words(seed):
    rng = random.Random(seed)
    fix = load_curve_fixture("m006")
    u = random_rational_point(rng, fix.excluded)
    lift = rep_from_traces(fix.presentation, fix.specialize(u), QQ, signs=fix.signs)
    rep, K = lift.representation, lift.field
    x, y = random_word(rng, 2, 6), random_word(rng, 2, 6)
    lhs = rep.trace(x * y)
    rhs = K.sub(K.mul(rep.trace(x), rep.trace(y)), rep.trace(x * y.inverse()))
    assert lhs == rhs


def test_trace_of_empty_word_is_two():
    fix = load_curve_fixture("m003")
    lift = fix.representation()
    assert descend_to(lift.field, trace_of_word(lift.representation, Word()), fix.field) == fix.field.from_int(2)


# -- relator and peripheral conditions --------------------------------------------------------

@pytest.mark.parametrize("name", ["m003", "m006", "m037"])
def test_relator_traces_are_identically_two(name):
    fix = load_curve_fixture(name)
    lift = fix.representation()
    for r in fix.presentation.relators:
        tr = descend_to(lift.field, mat_trace(lift.field, lift.representation.image(r)), fix.field)
        assert tr == fix.field.from_int(2)


def test_m006_peripheral_traces(m006):
    fix, _, traces = m006
    assert traces["mu"] == QU.parse("-u*(u^4 - u^2 - 1)/((u - 1)^2*(u + 1)^2)")
    assert traces["lambda"] == QU.parse("-u*(u^4 - 3*u^2 + 3)/((u - 1)*(u + 1))")


# -- pole orders and slopes -----------------------------------------------------------------

def test_pole_orders_m006(m006):
    _, _, traces = m006
    assert pole_order(QU, traces["mu"], Fraction(1)) == 2
    assert pole_order(QU, traces["lambda"], Fraction(1)) == 1
    assert pole_order(QU, QU.from_int(7), Fraction(1)) == 0
    assert pole_order(QU, QU.parse("u^3/(u + 1)"), INFINITY) == 2
    assert pole_order(QU, QU.parse("(u - 1)/u^2"), INFINITY) == 0


def _rational_functions():
    polys = st.lists(st.integers(-3, 3), min_size=1, max_size=4)
    return st.tuples(polys, polys).filter(lambda nd: any(nd[1]))


@given(_rational_functions(), _rational_functions(), st.sampled_from([Fraction(1), Fraction(-2), INFINITY]))
def test_pole_order_subadditive(f, g, pt):
    F = QU.div(QU.make(tuple(QQ(c) for c in f[0])), QU.make(tuple(QQ(c) for c in f[1])))
    G = QU.div(QU.make(tuple(QQ(c) for c in g[0])), QU.make(tuple(QQ(c) for c in g[1])))
    assert pole_order(QU, QU.mul(F, G), pt) <= pole_order(QU, F, pt) + pole_order(QU, G, pt)


@pytest.mark.parametrize("orders, slope", [
    ((2, 1, 1), (1, 2)),
    ((1, 3, 4), (3, -1)),
    ((1, 3, 2), (3, 1)),
    ((1, 2, 3), (2, -1)),
    ((3, 4, 1), (4, 3)),
    ((0, 1, 1), (1, 0)),
])
def test_boundary_slope(orders, slope):
    assert boundary_slope(orders) == slope


def test_boundary_slope_undetermined():
    assert boundary_slope((0, 0, 0)) is None
    assert boundary_slope((1, 1, 5)) is None
    assert format_slope(None) == "undetermined"
    assert format_slope((1, 2)) == "mu*lambda^2"
    assert format_slope((3, -1)) == "mu^3*lambda^-1"


def test_value_at_infinity():
    f = QU.parse("(2*u^2 - 1)/(u^2 - 1)")
    assert value_at(QU, f, INFINITY) == 2
    assert value_at(QU, QU.parse("u"), INFINITY) is None


def test_parse_point():
    assert parse_point("inf") == INFINITY
    assert parse_point("-2") == -2
    assert parse_point("7/3") == Fraction(7, 3)


# -- specialization coherence -------------------------------------------------------------

@pytest.mark.parametrize("name", ["m003", "m006", "m037"])
def test_specialization_coherence(name):
    fix = load_curve_fixture(name)
    T = universal_torsion(fix)
    rng = random.Random(name)
    checked = 0
    for _ in range(20):
        u = random_rational_point(rng, fix.excluded)
        result = specialization_check(fix, T, u)
        if result is None:
            continue
        assert result, f"{name} at u = {u}"
        checked += 1
    assert checked >= 15


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_curve_fixture("m999")
    with pytest.raises(KeyError, match="not a character variety"):
        load_curve_fixture("fig8")
