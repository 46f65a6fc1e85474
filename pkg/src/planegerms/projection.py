"""Central and parallel projections of a surface in Monge form.

The surface is ``M = {(1 + x, y, f(x, y))}`` near the base point (1, 0, 0),
with tangent plane the xy-plane.  Projecting from ``p = (a, b, c)`` gives

    phi(x, y) = ((y - b) / (1 + x - a), (f(x, y) - c) / (1 + x - a)),

recentred so that the origin maps to the origin.  Throughout ``u = 1 - a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import AssumptionViolated, ContractViolation, InputError, NotApplicable
from .jets import Jet2, PlaneGermJet
from .normalize import SpecifiedJetClass
from .polyroots import fit_rational_function, isolate_real_roots, primitive_integer
from .rational import ZERO, Rat, rat, rat_str
from .recognize import Classification, LiveEvaluator, classify, classify_specified_jet


# -- domain types ------------------------------------------------------------------------------

@dataclass(frozen=True)
class MongeForm:
    """``z = sum c_ij x^i y^j`` over 2 <= i + j <= order."""

    coeffs: Mapping[tuple[int, int], Rat]
    order: int

    def __post_init__(self):
        if self.order < 2:
            raise InputError("a Monge form needs order >= 2")
        clean = {}
        for (i, j), v in self.coeffs.items():
            v = rat(v)
            if not v:
                continue
            if i < 0 or j < 0:
                raise InputError(f"negative exponent in c{i}{j}")
            if i + j < 2:
                raise InputError(f"Monge forms have no terms of degree < 2 (got c{i}{j})")
            if i + j <= self.order:
                clean[(i, j)] = v
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def parse(cls, text: str, order: int) -> "MongeForm":
        j = Jet2.parse(text, order)
        return cls(dict(j.terms), order)

    def c(self, i: int, j: int) -> Rat:
        if i + j > self.order:
            raise NotApplicable(f"c{i}{j} is beyond the Monge order {self.order}")
        return self.coeffs.get((i, j), ZERO)

    def jet(self) -> Jet2:
        return Jet2(self.coeffs, self.order)

    def replace(self, **kw) -> "MongeForm":
        """Copy with coefficients changed, e.g. ``m.replace(c50=2)``."""
        d = dict(self.coeffs)
        for k, v in kw.items():
            i, j = _coeff_index(k)
            d[(i, j)] = rat(v)
        return MongeForm(d, self.order)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "c": [{"i": i, "j": j, "v": rat_str(v)} for (i, j), v in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MongeForm":
        try:
            order = int(data["order"])
            coeffs = {(int(t["i"]), int(t["j"])): rat(t["v"]) for t in data.get("c", [])}
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed Monge form JSON: {exc}") from exc
        return cls(coeffs, order)

    def __str__(self):
        return self.jet().to_expression()


def _coeff_index(name: str) -> tuple[int, int]:
    m = re.fullmatch(r"c(\d)(\d)", name)
    if not m:
        raise InputError(f"not a coefficient name: {name!r}")
    return int(m.group(1)), int(m.group(2))


@dataclass(frozen=True)
class Viewpoint:
    a: Rat
    b: Rat = ZERO
    c: Rat = ZERO

    def __post_init__(self):
        for k in ("a", "b", "c"):
            object.__setattr__(self, k, rat(getattr(self, k)))

    @property
    def u(self) -> Rat:
        return 1 - self.a

    def to_json(self) -> dict:
        return {"a": rat_str(self.a), "b": rat_str(self.b), "c": rat_str(self.c)}

    @classmethod
    def from_json(cls, data: Mapping) -> "Viewpoint":
        try:
            return cls(rat(data["a"]), rat(data.get("b", 0)), rat(data.get("c", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed viewpoint JSON: {exc}") from exc


# -- projection germs --------------------------------------------------------------------------

def central_projection_germ(m: MongeForm, p: Viewpoint) -> PlaneGermJet:
    if not p.u:
        raise AssumptionViolated("a != 1 (a = 1 puts the viewpoint in the plane x = 1 through the base point)")
    o = m.order
    inv = (Jet2.const(p.u, o) + Jet2.x(o)).invert_unit()
    g1 = (Jet2.y(o) - p.b) * inv
    g2 = (m.jet() - p.c) * inv
    return PlaneGermJet(g1 - g1.constant(), g2 - g2.constant())


def parallel_projection_germ(m: MongeForm, direction: tuple = (1, 0)) -> PlaneGermJet:
    """Projection along the tangent direction ``(v1, v2)`` onto the plane it spans with z.

    Uses ``(-v2 x + v1 y, f)``, which differs from the rotated model
    ``(y', f)`` by a linear source change, so its A-type is the same.
    """
    v1, v2 = (rat(t) for t in direction)
    if not v1 and not v2:
        raise InputError("projection direction must be nonzero")
    o = m.order
    return PlaneGermJet(Jet2.x(o).scale(-v2) + Jet2.y(o).scale(v1), m.jet())


def classify_view(m: MongeForm, p: Viewpoint, crosscheck: bool = False) -> Classification:
    return classify(central_projection_germ(m, p), crosscheck=crosscheck)


# -- case equations --------------------------------------------------------------------------

H_FOCAL = "a07 - 5/8 a06^2 [case 0 formulas]"
HESS = "C(1-a)+D"
RANK1 = "(1-a)c12+c02"
KERNEL = "(1-a)^2 c20 - (1-a) b c11 + b^2 c02"

# class the projection germ must be in for criterion values to make sense
ROW_CLASS = {
    "8": "II_6", "9": "II_6", "10": "II_7",
    "11_5": "III_*", "11_7": "III_*", "11_9": "III_*",
    "12": "IV_5", "13": "IV_5", "15": "IV_6",
    "4_3": "I_*", "4_4": "I_*", "4_5": "I_*",
    "16": "V_1", "17": "V_1", "18": "V_2", "19": "VI",
}


@dataclass(frozen=True)
class RowSpec:
    row: str
    case: int | None
    equations: tuple[str, ...]
    inequations: tuple[str, ...]
    cod_gw: int


def _r(row, case, eqs, ineqs, cod):
    return RowSpec(row, case, tuple(eqs), tuple(ineqs), cod)


_A31, _A41 = "a31", "a41 - 1/3 a22^2"
_C1 = ("c", "c20", "b c02")

ROWS: dict[str, RowSpec] = {s.row: s for s in (
    _r("1", None, [], ["c"], 0),
    _r("2", None, ["c"], [KERNEL], 0),
    _r("3", 0, ["b", "c"], ["c30"], 0),
    _r("5", 0, ["b", "c", "c30"], ["c40"], 1),
    _r("6", 0, ["b", "c", "c30", "c40"], ["c50", H_FOCAL], 2),
    _r("7", 0, ["b", "c", "c30", "c40", H_FOCAL], ["c50"], 2),
    _r("8", 0, ["b", "c", "c30", "c40", "c50"], ["c60", "a08 - 3/5 a07^2"], 3),
    _r("9", 0, ["b", "c", "c30", "c40", "c50", "a08 - 3/5 a07^2"], ["c60", "a09 - 7/25 a07^3"], 3),
    _r("10", 0, ["b", "c", "c30", "c40", "c50", "c60"], ["c70", "a09 - 7/12 a08^2"], 4),
    _r("4_2", 1, _C1, [HESS, "c30"], 1),
    _r("11_5", 1, _C1 + ("c30",), [HESS, "c40", "a05"], 2),
    _r("11_7", 1, _C1 + ("c30", "a05"), [HESS, "c40", "a07 - 2 a15 + 4 a23"], 2),
    _r("11_9", 1, _C1 + ("c30", "a05", "a07 - 2 a15 + 4 a23"), [HESS, "c40", "c09 - 2 c17"], 3),
    _r("12", 1, _C1 + ("c30", "c40"), [HESS, "c50", "a06"], 3),
    _r("13", 1, _C1 + ("c30", "c40", "a06"), [HESS, "c50", "a09 - 5/2 a16 - 5/6 a07^2"], 3),
    _r("15", 1, _C1 + ("c30", "c40", "c50"), [HESS, "c60", "a07"], 4),
    _r("4_3", 2, ["b", "c", "c20", HESS], ["c30", _A31], 1),
    _r("4_4", 2, ["b", "c", "c20", HESS, _A31], ["c30", _A41], 2),
    _r("4_5", 2, ["b", "c", "c20", HESS, _A31, _A41], ["c30", "a51 - 2/3 a32 a22 + 1/3 a13 a22^2"], 3),
    _r("16", 2, ["b", "c", "c20", "c30", "c21"], [RANK1, "c40", "a05"], 3),
    _r("17", 2, ["b", "c", "c20", "c30", "c21", "a05"], [RANK1, "c40"], 3),
    _r("18", 2, ["b", "c", "c20", "c30", "c21", "c40"],
       [RANK1, "b13", "a05 - 3/2", "a05 - 9/5", "a06 (5 a05 - 9) + 15 a14 a05"], 4),
    _r("19", 3, ["b", "c", "c20", "c30", "c21", RANK1], ["eta^3 lambda(0)", "p", "Delta"], 3),
)}

_CRITERIA = {
    n for rowdef in ROWS.values() for n in rowdef.equations + rowdef.inequations
    if not re.fullmatch(r"[abc]|c\d\d|b c02", n) and n not in (KERNEL, HESS, RANK1)
    and not n.startswith("eta^")
} | {H_FOCAL}

# the pure-x coefficient that plays the role of eta^k lambda(0) in the Monge-level equations
_ETA_SUBSTITUTE = {
    1: {"c30": 2, "c40": 3, "c50": 4, "c60": 5},
    2: {"c30": 2, "c40": 3, "c50": 4},
}


def _standing(m: MongeForm, case: int | None) -> list[str]:
    if case is None:
        return []
    if case == 0:
        return ["c20 = 0", "c02 = 0", "c11 != 0"]
    return ["c11 = 0"]


def _check_standing(m: MongeForm, case: int | None) -> None:
    for s in _standing(m, case):
        name, op, _ = s.split()
        v = m.c(*_coeff_index(name))
        if (op == "=" and v) or (op == "!=" and not v):
            raise AssumptionViolated(s)


@dataclass
class ConstraintReport:
    row: str
    case: int | None
    standing: list[str]
    equations: list[tuple[str, Rat | None]]
    inequations: list[tuple[str, Rat | None]]
    satisfied: bool
    flags: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        enc = lambda v: None if v is None else rat_str(v)  # noqa: E731
        return {
            "row": self.row,
            "case": self.case,
            "standing": self.standing,
            "equations": [{"name": n, "value": enc(v)} for n, v in self.equations],
            "inequations": [{"name": n, "value": enc(v)} for n, v in self.inequations],
            "satisfied": self.satisfied,
            "flags": self.flags,
            "notes": self.notes,
        }


class _Quantities:
    """Evaluates the names used in :data:`ROWS` for one (m, p)."""

    def __init__(self, m: MongeForm, p: Viewpoint, row: RowSpec):
        self.m, self.p, self.row = m, p, row
        self.germ = central_projection_germ(m, p)
        self.live = LiveEvaluator(self.germ)
        self.notes: list[str] = []
        self.intrinsic = False
        self._crit: LiveEvaluator | None | bool = False

    def value(self, name: str) -> Rat | None:
        m, p, u = self.m, self.p, self.p.u
        if name in ("a", "b", "c"):
            return getattr(p, name)
        if name == "b c02":
            return p.b * m.c(0, 2)
        if re.fullmatch(r"c\d\d", name):
            if self.intrinsic and name in _ETA_SUBSTITUTE.get(self.row.case, {}):
                k = _ETA_SUBSTITUTE[self.row.case][name]
                return self._intrinsic(f"eta^{k} lambda(0)")
            return m.c(*_coeff_index(name))
        if name == KERNEL:
            return u * u * m.c(2, 0) - u * p.b * m.c(1, 1) + p.b * p.b * m.c(0, 2)
        if name == HESS:
            if self.intrinsic:
                return self._intrinsic("det H_lambda(0)")
            c = m.c
            return (3 * c(3, 0) * c(1, 2) - c(2, 1) ** 2) * u + 3 * c(0, 2) * c(3, 0)
        if name == RANK1:
            return u * m.c(1, 2) + m.c(0, 2)
        if name == H_FOCAL:
            if not (m.c(1, 1) and m.c(5, 0)):
                self.notes.append(f"{name} needs c11 c50 != 0")
                return None
            return h_focal_value(m, p)
        if name.startswith("eta^"):
            return self._intrinsic(name)
        return self._criterion(name)

    def _intrinsic(self, name: str) -> Rat | None:
        if self.live.value("corank") != 1:
            self.notes.append(f"{name} is undefined: the projection germ is not of corank one")
            return None
        return self.live.value(name)

    def _criterion(self, name: str) -> Rat | None:
        if self._crit is False:
            want = ROW_CLASS.get(self.row.row)
            got = classify_specified_jet(self.germ)
            if want is None or str(got) != want:
                self.notes.append(f"projection germ is in class {got}, not {want}; criteria not evaluated")
                self._crit = None
            else:
                ev = LiveEvaluator(self.germ)
                ev.set_class(SpecifiedJetClass(want))
                self._crit = ev
        if self._crit is None:
            return None
        ev = self._crit
        if name in ("a05 - 3/2", "a05 - 9/5"):
            return ev.value("a05") - rat(name.split(" - ")[1])
        return ev.value(name)


def constraint_check(m: MongeForm, p: Viewpoint, row: str) -> ConstraintReport:
    """Evaluate one projection row's defining equations and inequations at (m, p).

    Case 1 carries the dlambda condition ``b c02 = 0``.  With ``b = 0`` the
    Monge-level (parabolic) equations are used.  With ``b != 0`` and ``c02 = 0``
    the umbilic branch applies and the equations that stand for
    ``eta^k lambda(0) = 0`` and the Hessian root are evaluated intrinsically
    on the projection germ instead.
    """
    if row not in ROWS:
        raise InputError(f"unknown projection row {row!r}; known: {', '.join(ROWS)}")
    rowdef = ROWS[row]
    _check_standing(m, rowdef.case)
    q = _Quantities(m, p, rowdef)
    flags: list[str] = []
    if rowdef.case == 1:
        if not p.b:
            flags.append("parabolic_branch")
        elif not m.c(0, 2):
            q.intrinsic = True
            flags.append("umbilic_branch")
    # a criterion is only meaningful once every earlier condition holds
    blocked = False
    eqs, ineqs = [], []
    for names, out, want_zero in ((rowdef.equations, eqs, True), (rowdef.inequations, ineqs, False)):
        for n in names:
            if blocked and n in _CRITERIA:
                v = None
            else:
                v = q.value(n)
            out.append((n, v))
            if v is None or (not v) != want_zero:
                blocked = True
    if blocked:
        q.notes.append("criteria after the first failing condition are not evaluated")
    ok = all(v is not None and not v for _, v in eqs) and all(v is not None and v for _, v in ineqs)
    return ConstraintReport(row, rowdef.case, _standing(m, rowdef.case), eqs, ineqs, ok, flags, q.notes)


def h_focal_value(m: MongeForm, p: Viewpoint) -> Rat:
    """a07 - 5/8 a06^2 for case 0 on the a-axis, from closed formulas.

    Valid for c20 = c02 = c30 = c40 = 0, c11 c50 != 0 and b = c = 0.
    """
    c, u = m.c, p.u
    c11, c21, c31, c50, c60, c70 = c(1, 1), c(2, 1), c(3, 1), c(5, 0), c(6, 0), c(7, 0)
    if not c11 or not c50:
        raise AssumptionViolated("c11 c50 != 0")
    a06 = ((-5 * c21 * c50 + c11 * c60) * u - c11 * c50) / (c11 * c50 * u)
    a07 = (
        (20 * c21 ** 2 * c50 - 5 * c11 * c31 * c50 - 6 * c11 * c21 * c60 + c11 ** 2 * c70) * u ** 2
        + (6 * c11 * c21 * c50 - c11 ** 2 * c60) * u
        + c11 ** 2 * c50
    ) / (c11 ** 2 * c50 * u ** 2)
    return a07 - rat("5/8") * a06 ** 2


# -- focal points ------------------------------------------------------------------------------

# class on the line -> (quantity whose zero marks the focal point, type there)
FOCAL_QUANTITY = {
    "II_5": ("a07 - 5/8 a06^2", "7"),
    "II_6": ("a08 - 3/5 a07^2", "9"),
    "III_*": ("a05", "11_7"),
    "IV_5": ("a06", "13"),
    "I_*": ("a31", "4_4"),
    "V_1": ("a05", "17"),
    "I_2": ("det H_lambda(0)", "4_3"),
}
# zero of the quantity fixes the label with no further condition
_DECIDED_AT_ZERO = {"II_5", "V_1"}

_NODES = tuple(rat(s) for s in (
    "1/2", "2/3", "3/4", "4/3", "3/2", "2", "5/2", "3", "4", "5", "7/3", "5/4",
    "-1/2", "-1", "-2", "-3", "-4/3", "-5/2", "1/3", "1/5", "-1/3", "7/2", "-7/4", "9/4",
    "6", "-5", "2/7", "-2/9",
))


@dataclass
class FocalRoot:
    a_interval: tuple[Rat, Rat]
    left_label: str
    right_label: str
    root_label: str
    verified: bool

    @property
    def exact(self) -> bool:
        return self.a_interval[0] == self.a_interval[1]

    def to_json(self) -> dict:
        return {
            "a_interval": [rat_str(self.a_interval[0]), rat_str(self.a_interval[1])],
            "exact": self.exact,
            "left_label": self.left_label,
            "right_label": self.right_label,
            "root_label": self.root_label,
            "root_label_verified": self.verified,
        }


@dataclass
class FocalScan:
    line_class: str
    quantity: str
    numerator: list[int]
    denominator: list[Rat]
    roots: list[FocalRoot]
    segments: list[tuple[Rat, str]]
    degenerate: bool = False
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "line": "b = c = 0",
            "class": self.line_class,
            "quantity": self.quantity,
            "numerator_in_u": self.numerator,
            "denominator_in_u": [rat_str(c) for c in self.denominator],
            "degenerate": self.degenerate,
            "roots": [r.to_json() for r in self.roots],
            "samples": [{"a": rat_str(a), "label": lab} for a, lab in self.segments],
            "flags": self.flags,
        }


def _tag(got) -> str:
    return got.tag if isinstance(got, SpecifiedJetClass) else str(got)


def _quantity_on_line(m: MongeForm, u: Rat, cls: str, quantity: str) -> Rat | None:
    germ = central_projection_germ(m, Viewpoint(1 - u))
    if quantity == "det H_lambda(0)":
        ev = LiveEvaluator(germ)
        return ev.value(quantity) if ev.value("corank") == 1 else None
    if _tag(classify_specified_jet(germ)) != cls:
        return None
    ev = LiveEvaluator(germ)
    ev.set_class(SpecifiedJetClass(cls))
    return ev.value(quantity)


def focal_scan(m: MongeForm, width="1/1024", max_degree: int = 16) -> FocalScan:
    """Focal points of ``m`` on the viewpoint line b = c = 0.

    The branch quantity is recovered as an exact rational function of
    ``u = 1 - a`` from exact evaluations, and the real roots of its
    numerator are isolated by Sturm bisection.  Labels are sampled on each
    side.  At a rational root the label is computed exactly; at an
    irrational one it is the type that the certificate logic assigns when
    the quantity vanishes.
    """
    ref = None
    for u in _NODES:
        got = _tag(classify_specified_jet(central_projection_germ(m, Viewpoint(1 - u))))
        if got in FOCAL_QUANTITY:
            ref = got
            break
    if ref is None:
        raise NotApplicable("the projection along this line is in no class with a focal quantity")
    quantity, zero_type = FOCAL_QUANTITY[ref]
    pts = []
    for u in _NODES:
        v = _quantity_on_line(m, u, ref, quantity)
        if v is not None:
            pts.append((u, v))
    fit = fit_rational_function(pts, max_degree)
    if fit is None:
        raise ContractViolation(f"{quantity} is not a rational function of u of degree <= {max_degree}")
    P, Q = fit
    flags = []
    if not P:
        return FocalScan(ref, quantity, [], Q, [], [(rat(0), classify_view(m, Viewpoint(0)).label)], True,
                         ["quantity vanishes identically on the line"])
    roots_u = [iv for iv in isolate_real_roots(P, width=rat(width)) if not (iv[0] <= 0 <= iv[1])]
    roots_a = sorted((1 - hi, 1 - lo) for lo, hi in roots_u)
    # the point a = 1 is excluded from the line
    cuts = sorted(roots_a + [(rat(1), rat(1))])
    samples = []
    prev = cuts[0][0] - 1
    samples.append(prev)
    for (lo1, hi1), (lo2, hi2) in zip(cuts, cuts[1:]):
        samples.append((hi1 + lo2) / 2)
    samples.append(cuts[-1][1] + 1)
    labels = [classify_view(m, Viewpoint(a)).label for a in samples]
    out = []
    for k, iv in enumerate(cuts):
        if iv == (1, 1):
            continue
        if iv[0] == iv[1]:
            lab = classify_view(m, Viewpoint(iv[0])).label
            verified = True
        else:
            lab = zero_type
            verified = ref in _DECIDED_AT_ZERO
            if not verified:
                flags.append("generic_next_discriminant_assumed")
        out.append(FocalRoot(iv, labels[k], labels[k + 1], lab, verified))
    return FocalScan(ref, quantity, primitive_integer(P), Q, out, list(zip(samples, labels)), False,
                     sorted(set(flags)))
