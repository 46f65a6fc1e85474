import json
import random

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import X, Y, from_sympy, jets, sympy_truncate, to_sympy, units
from planegerms.errors import InputError, InsufficientOrder, JetDomainError, NotAUnit, NotInvertible
from planegerms.jets import (
    CoordChangeJet,
    Jet2,
    PlaneGermJet,
    compose_maps,
    identity_map,
    invert_map,
    parse_expression,
    random_change,
)
from planegerms.rational import rat


def J(text, order):
    return Jet2.parse(text, order)


# -- canonical form -----------------------------------------------------------------------------

def test_zero_coefficients_are_dropped_and_degree_respected():
    j = Jet2({(1, 0): 0, (0, 1): 2, (3, 3): 1}, 3)
    assert dict(j.terms) == {(0, 1): 2}
    assert j == J("2*y", 3)


def test_equality_needs_equal_orders():
    assert J("x", 2) != J("x", 3)


def test_rationals_stay_reduced():
    c = J("6/4*x", 1).coefficient(1, 0)
    assert (c.numerator, c.denominator) == (3, 2)


# -- ring operations ----------------------------------------------------------------------------

def test_difference_of_squares():
    assert J("x+y", 3) * J("x-y", 3) == J("x^2-y^2", 3)


def test_additive_identity():
    j = J("x*y+3*y^4", 5)
    assert j + Jet2.zero(5) == j


def test_product_truncates_to_lowest_order():
    assert J("1+x", 2) * J("1-x+x^2", 2) == Jet2.const(1, 2)


def test_add_takes_min_order():
    s = J("x+y^3", 3) + J("y", 2)
    assert s.order == 2 and s == J("x+y", 2)


# -- derivatives -------------------------------------------------------------------------------

def test_partial_y_power_rule():
    d = J("x*y+y^4", 4).diff("y")
    assert d == J("x+4*y^3", 3)


def test_partial_of_zero():
    assert Jet2.zero(3).diff("x") == Jet2.zero(2)


def test_partial_hand_example():
    assert J("3*y^2-x^2", 2).diff("y") == J("6*y", 1)


def test_partial_needs_order():
    with pytest.raises(InsufficientOrder):
        Jet2.const(1, 0).diff("x")


# -- composition --------------------------------------------------------------------------------

def test_compose_against_brute_force():
    # (y - y^2)^5 = y^5 - 5y^6 + 10y^7 + ...
    got = J("y^5", 7).compose(J("x", 7), J("y-y^2", 7))
    assert got == J("y^5-5*y^6+10*y^7", 7)


def test_compose_identity():
    a = J("x*y+y^5+2/3*x^2*y^3", 6)
    assert a.compose(Jet2.x(6), Jet2.y(6)) == a


def test_compose_binomial():
    assert J("x^2", 2).compose(J("x+y", 2), Jet2.zero(2)) == J("x^2+2*x*y+y^2", 2)


def test_compose_rejects_constant_substituent():
    with pytest.raises(JetDomainError):
        J("x^2", 3).compose(J("1+x", 3), Jet2.y(3))


# -- inverses ------------------------------------------------------------------------------------

def test_invert_geometric_series():
    assert J("1+x", 3).invert_unit() == J("1-x+x^2-x^3", 3)


def test_invert_constant():
    assert Jet2.const(rat("-3/7"), 4).invert_unit() == Jet2.const(rat("-7/3"), 4)


def test_invert_shifted_unit():
    # 1/(1/2 + x) with ratio -2x
    assert J("1/2+x", 2).invert_unit() == J("2-4*x+8*x^2", 2)


def test_invert_non_unit():
    with pytest.raises(NotAUnit):
        J("x+y", 3).invert_unit()


def test_invert_identity_change():
    ident = identity_map(4)
    assert invert_map(ident) == ident


def test_invert_change_by_hand():
    inv = invert_map((J("2*x", 2), J("y+x^2", 2)))
    assert inv == (J("x/2", 2), J("y-x^2/4", 2))


def test_invert_change_newton_step():
    c = rat(5)
    inv = invert_map((J("x", 2), J("y", 2) - J("y^2", 2).scale(c / 5)))
    assert inv == (J("x", 2), J("y", 2) + J("y^2", 2).scale(c / 5))


def test_singular_change_refused():
    with pytest.raises(NotInvertible):
        invert_map((J("x+y", 3), J("2*x+2*y+x^2", 3)))
    with pytest.raises(NotInvertible):
        CoordChangeJet((J("x", 3), J("x^2", 3)), identity_map(3))


# -- coefficient / truncate ----------------------------------------------------------------------

def test_coefficient_read_off():
    j = J("x*y+y^5", 5)
    assert j.coefficient(0, 5) == 1
    assert j.coefficient(2, 2) == 0


def test_truncate():
    assert J("y^5-5*y^6+10*y^7", 7).truncate(6) == J("y^5-5*y^6", 6)


def test_truncate_cannot_create_information():
    with pytest.raises(InsufficientOrder):
        J("x", 3).truncate(4)


# -- parsing and JSON -----------------------------------------------------------------------------

def test_parse_rational_constants_and_variables():
    env = {"c": Jet2.const(rat("2/3"), 4)}
    j = parse_expression("x + c*y^2 - (c/2)*x*y", 4, env)
    assert j == J("x + 2/3*y^2 - 1/3*x*y", 4)


@pytest.mark.parametrize("bad", ["x**y", "import os", "x + z", "2.5*x", "x^-1", "f(x)"])
def test_parse_rejects(bad):
    with pytest.raises(InputError):
        Jet2.parse(bad, 3)


def test_json_format():
    j = J("x*y - 3/2*y^5", 5)
    data = j.to_json()
    assert data["order"] == 5
    assert {"i": 0, "j": 5, "c": "-3/2"} in data["terms"]
    assert {"i": 1, "j": 1, "c": "1"} in data["terms"]
    assert Jet2.from_json(json.loads(json.dumps(data))) == j


def test_germ_json_and_domain():
    f = PlaneGermJet.parse("x", "x*y+y^4", 6)
    assert PlaneGermJet.from_json(f.to_json()) == f
    with pytest.raises(JetDomainError):
        PlaneGermJet.parse("1+x", "y", 3)
    with pytest.raises(InputError):
        PlaneGermJet.from_json({"f1": J("x", 3).to_json(), "f2": J("y", 2).to_json()})


# -- oracles and properties ------------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(jets(order=5), jets(order=5))
def test_product_matches_sympy(a, b):
    want = sympy_truncate(to_sympy(a) * to_sympy(b), 5)
    assert a * b == from_sympy(want, 5)


@settings(max_examples=40, deadline=None)
@given(jets(order=5), jets(order=5, min_degree=1, max_terms=3), jets(order=5, min_degree=1, max_terms=3))
def test_compose_matches_sympy(a, sx, sy):
    want = sympy_truncate(to_sympy(a).subs({X: to_sympy(sx), Y: to_sympy(sy)}, simultaneous=True), 5)
    assert a.compose(sx, sy) == from_sympy(want, 5)


@settings(max_examples=40, deadline=None)
@given(units(order=5))
def test_unit_inverse_matches_sympy(u):
    inv = u.invert_unit()
    assert sympy_truncate(to_sympy(inv) * to_sympy(u), 5) == 1
    assert (inv * u) == Jet2.const(1, 5)


@settings(max_examples=60, deadline=None)
@given(jets(order=4), jets(order=4), jets(order=4))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


@settings(max_examples=30, deadline=None)
@given(jets(order=5), *(jets(order=5, min_degree=1, max_terms=3) for _ in range(4)))
def test_compose_associative(a, s1, s2, t1, t2):
    left = a.compose(s1, s2).compose(t1, t2)
    right = a.compose(s1.compose(t1, t2), s2.compose(t1, t2))
    assert left == right


@settings(max_examples=60, deadline=None)
@given(jets(order=5), jets(order=5))
def test_leibniz(a, b):
    for v in "xy":
        assert (a * b).diff(v) == a.diff(v) * b.truncate(4) + a.truncate(4) * b.diff(v)


@settings(max_examples=40, deadline=None)
@given(jets(order=6))
def test_json_round_trip(a):
    assert Jet2.from_json(json.loads(json.dumps(a.to_json()))) == a


@settings(max_examples=40, deadline=None)
@given(jets(order=5), st.integers(0, 5))
def test_truncate_is_projection(a, d):
    t = a.truncate(d)
    assert t.order == d and t.truncate(d) == t
    assert all(i + j <= d for i, j in t.terms)


def test_change_round_trip_hundred_random():
    rng = random.Random(11)
    for _ in range(100):
        ch = random_change(rng, 6, height=8, density=0.5)
        for m in (ch.source, ch.target):
            inv = invert_map(m)
            assert compose_maps(m, inv) == identity_map(6)
            assert compose_maps(inv, m) == identity_map(6)


def test_change_then_and_inverse_cancel():
    rng = random.Random(5)
    ch = random_change(rng, 5)
    assert ch.then(ch.inverse()).is_identity()
    f = PlaneGermJet.parse("x", "x*y+y^4", 5)
    assert ch.inverse().apply(ch.apply(f)) == f


def test_sympy_oracle_for_change_inverse():
    # (2x, y + x^2) inverted symbolically
    u, v = sp.symbols("u v")
    sol = sp.solve([2 * X - u, Y + X ** 2 - v], [X, Y], dict=True)[0]
    inv = invert_map((J("2*x", 4), J("y+x^2", 4)))
    assert sp.expand(sol[X].subs({u: X, v: Y}) - to_sympy(inv[0])) == 0
    assert sp.expand(sol[Y].subs({u: X, v: Y}) - to_sympy(inv[1])) == 0
