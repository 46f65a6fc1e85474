"""Explicit coordinate changes behind the normal-form reductions, as executable fixtures.

Each fixture names a left-hand germ in variables ``(x, y)``, a source
substitution ``x -> sx(x, y), y -> sy(x, y)`` and a target change ``(X, Y)
-> (TX, TY)``.  Applying all three must give the right-hand germ exactly at
the stated jet order.  Parameters enter as rational constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .jets import Jet2, PlaneGermJet, parse_expression
from .rational import Rat, rat


@dataclass(frozen=True)
class Fixture:
    name: str
    params: tuple[str, ...]
    lhs: tuple[str, str]
    source: tuple[str, str]
    target: tuple[str, str]
    rhs: tuple[str, str]
    order: int
    instances: tuple[Mapping[str, str], ...]
    excluded: str = ""

    def _parse(self, text: str, env: Mapping[str, Jet2]) -> Jet2:
        return parse_expression(text, self.order, env)

    def run(self, values: Mapping[str, object]) -> tuple[PlaneGermJet, PlaneGermJet]:
        """Return (transformed left-hand germ, right-hand germ)."""
        o = self.order
        env = {k: Jet2.const(rat(v), o) for k, v in values.items()}
        f = PlaneGermJet(*(self._parse(t, env) for t in self.lhs))
        sx, sy = (self._parse(t, env) for t in self.source)
        g = f.precompose(sx, sy)
        tx, ty = (self._parse(t, {**env, "x": Jet2.x(o), "y": Jet2.y(o)}) for t in self.target)
        # target expressions are written in X, Y; reuse x, y as their names
        out = PlaneGermJet(tx.compose(g.f1, g.f2), ty.compose(g.f1, g.f2))
        rhs = PlaneGermJet(*(self._parse(t, env) for t in self.rhs))
        return out, rhs

    def check(self, values: Mapping[str, object]) -> bool:
        out, rhs = self.run(values)
        return out == rhs


# target expressions use x, y for the target coordinates X, Y
FIXTURES: tuple[Fixture, ...] = (
    Fixture(
        name="II_6: kill y^7",
        params=("c", "d", "e"),
        lhs=("x", "x*y + y^6 + c*y^7 + d*y^8 + e*y^9"),
        source=(
            "x + c/5*x*y + c/5*y^6 - 3*c^3/25*y^8 + c*d/5*y^8 + 14*c^4/125*y^9"
            " - 7*c^2*d/25*y^9 + c*e/5*y^9",
            "y - c/5*y^2 + c^2/25*y^3 - c^3/125*y^4 + c^4/625*y^5 - c^5/3125*y^6"
            " + c^6/15625*y^7 - c^7/78125*y^8 + 2*c^8/390625*y^9",
        ),
        target=("x - c/5*y", "y"),
        rhs=("x", "x*y + y^6 + (d - 3/5*c^2)*y^8 + (e - 7/5*c*d + 14/25*c^3)*y^9"),
        order=9,
        instances=({"c": "5", "d": "0", "e": "0"}, {"c": "1", "d": "2", "e": "-3"}, {"c": "-2/3", "d": "1/2", "e": "7"}),
    ),
    Fixture(
        name="II_7: kill y^8",
        params=("c", "d"),
        lhs=("x", "x*y + y^7 + c*y^8 + d*y^9"),
        source=(
            "x + c/6*x*y + c/6*y^7 - 7*c^3/72*y^9 + c*d/6*y^9",
            "y - c/6*y^2 + c^2/36*y^3 - c^3/216*y^4 + c^4/1296*y^5 - c^5/7776*y^6"
            " + c^6/46656*y^7 - c^7/279936*y^8 - 5*c^8/93312*y^9",
        ),
        target=("x - c/6*y", "y"),
        rhs=("x", "x*y + y^7 + (d - 7/12*c^2)*y^9"),
        order=9,
        instances=({"c": "6", "d": "0"}, {"c": "1", "d": "1"}, {"c": "-3/2", "d": "2/5"}),
    ),
    Fixture(
        name="III_*: kill y^6",
        params=("c", "d"),
        lhs=("x", "x*y^2 + y^4 + c*y^6 + d*y^7"),
        source=("x + c*x*y^2 + c*y^4 + c*d*y^7", "y - c/2*y^3 + 3*c^2/8*y^5 - 9*c^3/16*y^7"),
        target=("x - c*y", "y"),
        rhs=("x", "x*y^2 + y^4 + d*y^7"),
        order=7,
        instances=({"c": "2", "d": "1"}, {"c": "1", "d": "0"}, {"c": "-1/3", "d": "5"}),
    ),
    Fixture(
        name="III_*: kill y^8",
        params=("c", "d"),
        lhs=("x", "x*y^2 + y^4 + c*y^8 + d*y^9"),
        source=(
            "x - c/2*x^2*y^2 - c/2*x*y^4 + c^2/4*x^3*y^4 + c^2/2*x^2*y^6 + c^2/4*x*y^8",
            "y + c/4*x*y^3 - c/4*y^5 - c^2/32*x^2*y^5 - c^2/16*x*y^7 - 5*c^2/8*y^9",
        ),
        target=("x + c/2*x*y", "y"),
        rhs=("x", "x*y^2 + y^4 + d*y^9"),
        order=9,
        instances=({"c": "2", "d": "1"}, {"c": "1", "d": "0"}, {"c": "-4/5", "d": "3"}),
    ),
    Fixture(
        name="V_1: kill x y^4",
        params=("c", "d"),
        lhs=("x", "x^2*y + y^4 + c*x*y^4 + d*y^5"),
        source=("x", "y - c/3*x*y"),
        target=("x", "y + c/3*x*y + c^2/9*x^2*y + c^3/27*x^3*y"),
        rhs=("x", "x^2*y + y^4 + d*y^5"),
        order=5,
        instances=({"c": "3", "d": "1"}, {"c": "1", "d": "0"}, {"c": "-2/7", "d": "-1"}),
    ),
    Fixture(
        name="V_2: kill x y^5",
        params=("d", "e", "g"),
        lhs=("x", "x^2*y + x*y^3 + d*y^5 + e*x*y^5 + g*y^6"),
        source=(
            "x",
            "y + e/(2*(3 - 2*d))*x*y + e^2/(4*(3 - 2*d)^2)*x^2*y + e^3/(8*(3 - 2*d)^3)*x^3*y"
            " - e/(3 - 2*d)*y^3 - 5*e^2/(4*(3 - 2*d)^2)*x*y^3",
        ),
        target=("x", "y + e/(2*(2*d - 3))*x*y"),
        rhs=("x", "x^2*y + x*y^3 + d*y^5 + g*y^6"),
        order=6,
        instances=({"d": "1", "e": "2", "g": "1"}, {"d": "0", "e": "1", "g": "0"}, {"d": "2/3", "e": "-3", "g": "5"}),
        excluded="d != 3/2",
    ),
)


def run_all(fixtures=FIXTURES) -> list[dict]:
    """One record per (fixture, instance) with the outcome and any mismatch."""
    out = []
    for fx in fixtures:
        for inst in fx.instances:
            got, want = fx.run(inst)
            rec = {"fixture": fx.name, "params": dict(inst), "order": fx.order, "ok": got == want}
            if got != want:
                rec["got"] = str(got)
                rec["want"] = str(want)
                rec["difference"] = str(
                    PlaneGermJet((got.f1 - want.f1), (got.f2 - want.f2))
                    if not (got.f1 - want.f1).constant() and not (got.f2 - want.f2).constant()
                    else ""
                )
            out.append(rec)
    return out


def values_as_rat(inst: Mapping[str, str]) -> dict[str, Rat]:
    return {k: rat(v) for k, v in inst.items()}
