import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from planegerms.polyroots import (
    evaluate,
    fit_rational_function,
    gcd,
    isolate_real_roots,
    primitive_integer,
    refine,
    sample_and_fit,
    square_free,
    trim,
)
from planegerms.rational import rat

t = sp.Symbol("t")


def P(*cs):
    return trim([rat(c) for c in cs])


def as_sympy(p):
    return sp.Add(*(sp.Rational(str(c)) * t ** k for k, c in enumerate(p)))


def test_rational_roots_come_back_exact():
    # 5u^2 - 2u - 3 = (u - 1)(5u + 3)
    roots = isolate_real_roots(P(-3, -2, 5))
    assert roots == [(rat("-3/5"), rat("-3/5")), (rat(1), rat(1))]


def test_irrational_roots_bracketed():
    roots = isolate_real_roots(P(-2, 0, 1), width="1/1000")
    assert len(roots) == 2
    for lo, hi in roots:
        assert lo < hi and hi - lo < rat("1/1000")
        assert evaluate(P(-2, 0, 1), lo) * evaluate(P(-2, 0, 1), hi) < 0


def test_repeated_roots_counted_once():
    p = P(1, -2, 1)  # (t - 1)^2
    assert square_free(p) == P(-1, 1)
    assert isolate_real_roots(p) == [(rat(1), rat(1))]


def test_constants():
    assert isolate_real_roots(P(3)) == []
    with pytest.raises(ValueError):
        isolate_real_roots([])


def test_no_real_roots():
    assert isolate_real_roots(P(1, 0, 1)) == []


def test_primitive_integer():
    assert primitive_integer(P("-3/8", "-1/4", "5/8")) == [-3, -2, 5]
    assert primitive_integer(P(2, -4)) == [-1, 2]


def test_gcd_is_monic():
    assert gcd(P(-1, 0, 1), P(-2, 2)) == P(-1, 1)


def test_refine_keeps_sign_change():
    lo, hi = refine(P(-2, 0, 1), (rat(1), rat(2)), rat("1/4096"))
    assert lo * lo < 2 < hi * hi


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=7))
def test_isolation_matches_sympy(cs):
    p = P(*cs)
    assume(len(p) >= 2)
    want = sorted(sp.Poly(as_sympy(p), t).real_roots())
    got = isolate_real_roots(p)
    assert len(got) == len(set(want))
    for (lo, hi), r in zip(got, sorted(set(want))):
        if lo == hi:
            assert sp.Rational(str(lo)) == r
        else:
            assert sp.Rational(str(lo)) < r < sp.Rational(str(hi))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=3), st.integers(-6, 6), st.integers(1, 6))
def test_rational_root_snapped(cs, a, b):
    # (b t - a) * q(t) always has the rational root a/b
    q = P(*cs)
    assume(q)
    p = [rat(0)] * (len(q) + 1)
    for k, c in enumerate(q):
        p[k] += -a * c
        p[k + 1] += b * c
    roots = isolate_real_roots(trim(p))
    assert (rat(a) / b, rat(a) / b) in roots


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=3))
def test_rational_reconstruction(num, den):
    n, d = P(*num), P(*den)
    assume(n and d)
    nodes = [rat(k) / 3 for k in range(1, 30)]
    nodes = [u for u in nodes if evaluate(d, u)]
    fit = sample_and_fit(lambda u: evaluate(n, u) / evaluate(d, u), nodes, max_degree=8)
    assert fit is not None
    fn, fd = fit
    for u in nodes:
        assert evaluate(fn, u) * evaluate(d, u) == evaluate(n, u) * evaluate(fd, u)
    assert fd[-1] == 1


def test_reconstruction_refuses_when_underdetermined():
    pts = [(rat(k), rat(k * k * k)) for k in range(3)]
    assert fit_rational_function(pts, max_degree=6) is None
