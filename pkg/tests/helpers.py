"""Shared builders for the test suite: sympy bridge, strategies, witnesses."""

from __future__ import annotations

import sympy as sp
from hypothesis import strategies as st

from planegerms.jets import Jet2
from planegerms.projection import MongeForm, Viewpoint, constraint_check
from planegerms.rational import rat

X, Y = sp.symbols("x y")


def to_sympy(j: Jet2) -> sp.Expr:
    return sp.Add(*(
        sp.Rational(int(c.numerator), int(c.denominator)) * X ** i * Y ** k
        for (i, k), c in j.terms.items()
    ))


def sympy_truncate(expr: sp.Expr, order: int) -> sp.Expr:
    poly = sp.Poly(sp.expand(expr), X, Y)
    return sp.Add(*(c * X ** i * Y ** k for (i, k), c in poly.terms() if i + k <= order))


def from_sympy(expr: sp.Expr, order: int) -> Jet2:
    poly = sp.Poly(sp.expand(expr), X, Y)
    return Jet2({(i, k): rat(f"{c.p}/{c.q}") for (i, k), c in poly.terms() if i + k <= order}, order)


# -- hypothesis strategies ------------------------------------------------------------------

small_rats = st.builds(lambda p, q: rat(p) / q, st.integers(-8, 8), st.integers(1, 8))


@st.composite
def jets(draw, order=None, min_degree=0, max_terms=6):
    order = draw(st.integers(1, 6)) if order is None else order
    mons = [(i, d - i) for d in range(min_degree, order + 1) for i in range(d + 1)]
    if not mons:
        return Jet2.zero(order)
    chosen = draw(st.lists(st.sampled_from(mons), max_size=max_terms, unique=True))
    return Jet2({m: draw(small_rats) for m in chosen}, order)


@st.composite
def units(draw, order):
    j = draw(jets(order=order, min_degree=1))
    c = draw(small_rats.filter(bool))
    return j + Jet2.const(c, order)


# -- invariance representatives: one germ per routing row, at the least order that labels it ------

REPRESENTATIVES = {
    "II_4": ("5", 4),
    "II_5": ("6+", 7),
    "II_6": ("8+", 8),
    "II_7": ("10+", 9),
    "I_2": ("4_2+", 3),
    "I_*": ("4_3", 4),
    "III_*": ("11_5", 5),
    "IV_5": ("12", 6),
    "IV_6": ("15", 7),
    "V_1": ("16+", 5),
    "V_2": ("18", 6),
    "VI": ("19", 5),
}


def routing_predicates(pv: dict) -> dict:
    """The routing part of a predicate vector.

    Rows read eta^k lambda(0) only up to the first nonvanishing one, and
    the Hessian of lambda only when d lambda(0) = 0.
    """
    out = {k: v for k, v in pv.items() if not k.startswith("eta^")}
    if out.get("dlambda(0)!=0"):
        out.pop("rk H", None)
        out.pop("sign det H", None)
    k = 1
    while f"eta^{k}lambda(0)!=0" in pv:
        v = pv[f"eta^{k}lambda(0)!=0"]
        out[f"eta^{k}lambda(0)!=0"] = v
        if v:
            break
        k += 1
    return out


# -- projection witnesses ---------------------------------------------------------------------

M = MongeForm.parse
P0 = Viewpoint(0)


def _criterion(m, p, row, name):
    r = constraint_check(m, p, row)
    return dict(r.equations + r.inequations)[name]


def solve_for(m: MongeForm, p: Viewpoint, row: str, name: str, coef: str) -> MongeForm:
    """Set ``coef`` so that the criterion ``name`` of ``row`` vanishes.

    The criterion must be affine in that coefficient; this is checked on
    three sample values before solving.
    """
    vals = [_criterion(m.replace(**{coef: t}), p, row, name) for t in (0, 1, 2)]
    if vals[0] is None:
        raise AssertionError(f"{row}: {name} not evaluated")
    d1, d2 = vals[1] - vals[0], vals[2] - vals[1]
    assert d1 == d2 and d1, (row, name, vals)
    return m.replace(**{coef: -vals[0] / d1})


def build_witnesses() -> dict[str, tuple[MongeForm, Viewpoint]]:
    w = {
        "1": (M("x*y+x^3", 6), Viewpoint(0, 0, 1)),
        "2": (M("x*y+x^3", 6), Viewpoint(0, 1, 0)),
        "3": (M("x*y+x^3", 6), P0),
        "5": (M("x*y+x^4", 6), P0),
        "6": (M("x*y+x^5", 7), Viewpoint(rat("1/3"))),
        "7": (M("x*y+x^5+x^6", 7), P0),
        "8": (M("x*y+x^6", 9), P0),
        "9": (solve_for(M("x*y+x^6+2*x^7", 9), P0, "9", "a08 - 3/5 a07^2", "c80"), P0),
        "10": (M("x*y+x^7", 11), P0),
        "4_2": (M("y^2+x^3", 6), P0),
        "11_5": (M("y^2+x^2*y+x^4", 7), P0),
        "11_7": (solve_for(M("y^2+x^2*y+x^4+x^5", 7), P0, "11_7", "a05", "c50"), P0),
        "12": (M("y^2+x^2*y+x^5", 9), P0),
        "13": (solve_for(M("y^2+x^2*y+x^5+x^6", 9), P0, "13", "a06", "c60"), P0),
        "15": (M("y^2+x^2*y+x^6", 9), P0),
        "4_3": (M("y^2+x^3+3*x^2*y+2*x*y^2+x^4", 6), P0),
        "4_4": (solve_for(M("y^2+x^3+3*x^2*y+2*x*y^2+x^4", 6), P0, "4_4", "a31", "c40"), P0),
        "16": (M("y^2+x^4", 7), P0),
        "17": (solve_for(M("y^2+x^4+x^5", 7), P0, "17", "a05", "c50"), P0),
        "18": (M("y^2+x^3*y+x^5+2*x^6", 9), P0),
        "19": (M("-y^2+x*y^2+x^4+x^3*y+x^2*y^2", 7), P0),
    }
    m = solve_for(M("y^2+x^2*y+x^4+x^5+x^7", 9), P0, "11_9", "a05", "c50")
    w["11_9"] = (solve_for(m, P0, "11_9", "a07 - 2 a15 + 4 a23", "c70"), P0)
    m = solve_for(M("y^2+x^3+3*x^2*y+2*x*y^2+x^4+x^5", 7), P0, "4_5", "a31", "c40")
    w["4_5"] = (solve_for(m, P0, "4_5", "a41 - 1/3 a22^2", "c50"), P0)
    return w


def build_controls(w: dict) -> dict[str, tuple[MongeForm, Viewpoint, str]]:
    """For each row with cod G_W <= 3: a view breaking exactly one inequation (named)."""
    lift = lambda m, k: MongeForm(m.coeffs, k)  # noqa: E731
    return {
        "1": (w["1"][0], P0, "c"),
        "2": (w["2"][0], P0, "(1-a)^2 c20 - (1-a) b c11 + b^2 c02"),
        "3": (M("x*y+x^4", 6), P0, "c30"),
        "5": (M("x*y+x^5", 7), P0, "c40"),
        "6": (*w["7"], "a07 - 5/8 a06^2 [case 0 formulas]"),
        "7": (M("x*y+x^6", 9), P0, "c50"),
        "8": (*w["9"], "a08 - 3/5 a07^2"),
        "9": (solve_for(w["9"][0], P0, "9", "a09 - 7/25 a07^3", "c90"), P0, "a09 - 7/25 a07^3"),
        "4_2": (M("y^2+x^4", 7), P0, "c30"),
        "11_5": (*w["11_7"], "a05"),
        "11_7": (solve_for(lift(w["11_7"][0], 9), P0, "11_7", "a07 - 2 a15 + 4 a23", "c70"), P0,
                 "a07 - 2 a15 + 4 a23"),
        "11_9": (solve_for(w["11_9"][0], P0, "11_9", "c09 - 2 c17", "c90"), P0, "c09 - 2 c17"),
        "12": (*w["13"], "a06"),
        "13": (solve_for(w["13"][0], P0, "13", "a09 - 5/2 a16 - 5/6 a07^2", "c90"), P0,
               "a09 - 5/2 a16 - 5/6 a07^2"),
        "4_3": (*w["4_4"], "a31"),
        "4_4": (*w["4_5"], "a41 - 1/3 a22^2"),
        "4_5": (solve_for(lift(w["4_5"][0], 7), P0, "4_5", "a51 - 2/3 a32 a22 + 1/3 a13 a22^2", "c60"), P0,
                "a51 - 2/3 a32 a22 + 1/3 a13 a22^2"),
        "16": (*w["17"], "a05"),
        "17": (w["17"][0].replace(c40=0), P0, "c40"),
        "19": (solve_for(w["19"][0], P0, "19", "Delta", "c50"), P0, "Delta"),
    }
