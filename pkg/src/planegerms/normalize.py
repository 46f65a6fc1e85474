"""Reduction of corank-one germs to the prenormal forms the discriminants read.

Two routes live here.

* Ordinary-degree recipes (:func:`reduce_to_specified_jet`) bring a germ to
  ``(x, w + tail)`` where ``w`` is the specified jet and ``tail`` holds every
  term of higher degree.  The discriminant inputs ``a_ij`` are read off this
  form.
* A weighted normal-form engine (:func:`weighted_normal_form`) removes, weight
  by weight, everything in the tangent space of ``w``.  What survives is a
  small set of complement monomials; their coefficients give the moduli and
  an independent check of every discriminant.

Both routes record the coordinate change they performed, so the result can
always be replayed from the input with :func:`apply_change`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ContractViolation, InsufficientOrder, NotApplicable
from .invariants import corank_at_origin
from .jets import (
    CoordChangeJet,
    Jet2,
    Map2,
    Monomial,
    PlaneGermJet,
    compose_maps,
    identity_map,
    invert_map,
)
from .rational import ONE, ZERO, Rat, exact_root, rat

# tag -> (weights, weighted degree of w); None where no weighting applies
SPECIFIED_JETS: dict[str, tuple[tuple[int, int] | None, int]] = {
    "II_4": ((3, 1), 4),
    "II_5": ((4, 1), 5),
    "II_6": ((5, 1), 6),
    "II_7": ((6, 1), 7),
    "I_2": (None, 3),
    "I_*": (None, 3),
    "III_*": ((2, 1), 4),
    "IV_5": ((3, 1), 5),
    "IV_6": ((4, 1), 6),
    "V_1": ((3, 2), 8),
    "V_2": ((2, 1), 5),
    "VI": ((1, 1), 4),
}

# ordinary degree of the specified jet
JET_DEGREE = {
    "II_4": 4, "II_5": 5, "II_6": 6, "II_7": 7, "I_2": 3, "I_*": 3,
    "III_*": 4, "IV_5": 5, "IV_6": 6, "V_1": 4, "V_2": 4, "VI": 4,
}


@dataclass(frozen=True)
class SpecifiedJetClass:
    """Phase-one outcome: a routing row (or a stable type)."""

    tag: str
    sign: int = 0  # I_2 only: sign of det H_lambda(0)

    def __str__(self):
        if self.tag == "I_2":
            return "I_2" + ("+" if self.sign > 0 else "-")
        return self.tag


@dataclass(frozen=True)
class NormalizedGerm:
    germ: PlaneGermJet
    specified: SpecifiedJetClass
    w: Jet2
    change: CoordChangeJet | None
    stages: tuple[str, ...] = ()
    info: Mapping[str, Rat] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.germ.order

    @property
    def g(self) -> Jet2:
        return self.germ.f2

    def a(self, i: int, j: int) -> Rat:
        return self.germ.f2.coefficient(i, j)

    @property
    def tail_coeffs(self) -> dict[Monomial, Rat]:
        d = JET_DEGREE[self.specified.tag]
        return {m: c for m, c in self.germ.f2.terms.items() if m[0] + m[1] > d}

    def to_json(self) -> dict:
        out = {
            "class": str(self.specified),
            "germ": self.germ.to_json(),
            "w": self.w.to_json(),
            "stages": list(self.stages),
        }
        if self.change is not None:
            out["change"] = self.change.to_json()
        return out


def apply_change(f: PlaneGermJet, ch: CoordChangeJet) -> PlaneGermJet:
    """``psi o f o phi^-1`` to the common order."""
    order = min(f.order, ch.order)
    f = f.truncate(order)
    return ch.apply(f)


# -- change-tracking reducer --------------------------------------------------

class _Reducer:
    """Holds ``F = psi o f o sigma`` and the accumulated ``sigma``, ``psi``."""

    def __init__(self, f: PlaneGermJet, track: bool = True):
        self.F = f
        self.order = f.order
        self.track = track
        self._subs: list[Map2] = []
        self._targets: list[Map2] = []
        self.stages: list[str] = []

    @property
    def g(self) -> Jet2:
        return self.F.f2

    def substitute(self, sx: Jet2, sy: Jet2) -> None:
        self.F = self.F.precompose(sx, sy)
        if self.track:
            self._subs.append((sx, sy))

    def target(self, tx: Jet2, ty: Jet2) -> None:
        F = self.F
        self.F = PlaneGermJet(tx.compose(F.f1, F.f2), ty.compose(F.f1, F.f2))
        if self.track:
            self._targets.append((tx, ty))

    def _x(self):
        return Jet2.x(self.order)

    def _y(self):
        return Jet2.y(self.order)

    def straighten(self) -> None:
        """Make the first component exactly ``x`` by a source change."""
        f1 = self.F.f1
        x, y = self._x(), self._y()
        if f1 == x:
            return
        if f1.coefficient(1, 0):
            sub = invert_map((f1, y))
        elif f1.coefficient(0, 1):
            sub = invert_map((f1, x))
        else:
            raise NotApplicable("first component is not submersive")
        self.substitute(*sub)

    def kill_pure_x(self, d: int) -> None:
        c = self.g.coefficient(d, 0)
        if c:
            x, y = self._x(), self._y()
            self.target(x, y - Jet2.monomial(d, 0, self.order, c))

    def kill_by_lead(self, d: int, lead: tuple[Rat, tuple[int, int]], keep: Iterable[Monomial] = ()) -> None:
        """Cancel degree-``d`` monomials divisible by the leading monomial of g_y.

        If ``g_y`` starts with ``L x^a y^b`` then ``y -> y - c/L x^(i-a) y^(j-b)``
        removes ``c x^i y^j`` without touching lower degrees.
        """
        L, (a, b) = lead
        keep = set(keep)
        terms = {}
        for i in range(d + 1):
            j = d - i
            if (i, j) in keep or i < a or j < b or j == 0:
                continue
            c = self.g.coefficient(i, j)
            if c:
                terms[(i - a, j - b)] = -c / L
        if terms:
            self.substitute(self._x(), self._y() + Jet2(terms, self.order))

    def scale(self, sx, sy, mu) -> None:
        """Source ``(x, y) -> (sx x, sy y)``, target ``(X, Y) -> (X / sx, mu Y)``."""
        sx, sy, mu = rat(sx), rat(sy), rat(mu)
        if sx == 1 and sy == 1 and mu == 1:
            return
        x, y = self._x(), self._y()
        self.substitute(x.scale(sx), y.scale(sy))
        self.target(x.scale(1 / sx), y.scale(mu))

    def change(self) -> CoordChangeJet | None:
        if not self.track:
            return None
        order = self.order
        sigma = identity_map(order)
        for s in self._subs:
            sigma = compose_maps(sigma, s)
        psi = identity_map(order)
        for t in self._targets:
            psi = compose_maps(t, psi)
        return CoordChangeJet(invert_map(sigma), psi)


# -- prenormalization ----------------------------------------------------------

def _prenormalize(r: _Reducer) -> bool:
    """Bring ``r.F`` to ``(x, g)`` with ``g`` in m^2; returns the swap flag."""
    f = r.F
    if f.order < 1:
        raise InsufficientOrder(1, f.order, "prenormalization")
    if corank_at_origin(f) != 1:
        raise NotApplicable("prenormalization needs a corank-one germ")
    x, y = r._x(), r._y()
    swapped = not (f.f1.coefficient(1, 0) or f.f1.coefficient(0, 1))
    if swapped:
        r.target(y, x)
        f = r.F
    # rank one: linear part of f2 is kappa times that of f1
    a, b = f.f1.coefficient(1, 0), f.f1.coefficient(0, 1)
    c, d = f.f2.coefficient(1, 0), f.f2.coefficient(0, 1)
    kappa = c / a if a else d / b
    if kappa:
        r.target(x, y - x.scale(kappa))
    r.straighten()
    return swapped


def prenormalize(f: PlaneGermJet) -> tuple[PlaneGermJet, CoordChangeJet]:
    """Return ``(x, g)`` with ``g`` in m^2 and the change that produced it."""
    r = _Reducer(f)
    _prenormalize(r)
    return r.F, r.change()


# -- ordinary-degree recipes ----------------------------------------------------

def _shift_y(r: _Reducer, k: Rat) -> None:
    if k:
        r.substitute(r._x(), r._y() + r._x().scale(k))


def _need(r: _Reducer, d: int, what: str) -> None:
    if r.order < d:
        raise InsufficientOrder(d, r.order, what)


def _check_jet(r: _Reducer, w: Jet2, d: int, tag: str) -> None:
    got = r.g.truncate(d)
    w = Jet2({m: c for m, c in w.terms.items() if m[0] + m[1] <= d}, d)
    if got != w:
        raise ContractViolation(
            f"{tag}: {d}-jet is {got.to_expression()}, expected {w.to_expression()}"
        )


def _recipe_II(r: _Reducer, k: int, full: bool) -> Jet2:
    g = r.g
    b11 = g.coefficient(1, 1)
    if not b11 or g.coefficient(0, 2):
        raise ContractViolation(f"II_{k}: expected d lambda(0) != 0 and eta lambda(0) = 0")
    r.kill_pure_x(2)
    top = r.order if full else k
    for d in range(3, top + 1):
        r.kill_pure_x(d)
        r.kill_by_lead(d, (b11, (1, 0)))
        if d < k and r.g.coefficient(0, d):
            raise ContractViolation(f"II_{k}: y^{d} survives; the eta-derivatives disagree")
    bk = r.g.coefficient(0, k)
    if not bk:
        raise ContractViolation(f"II_{k}: y^{k} coefficient vanishes")
    r.scale(bk / b11, 1, 1 / bk)
    r.stages.append("clean-II")
    return Jet2({(1, 1): 1, (0, k): 1}, r.order)


def _cubic(r: _Reducer):
    g = r.g
    if g.coefficient(1, 1) or g.coefficient(0, 2):
        raise ContractViolation("expected d lambda(0) = 0")
    r.kill_pure_x(2)
    return [r.g.coefficient(3 - j, j) for j in range(4)]  # b30, b21, b12, b03


def _recipe_I(r: _Reducer, tag: str) -> tuple[Jet2, dict]:
    _need(r, 3, tag)
    b30, b21, b12, b03 = _cubic(r)
    if not b03:
        raise ContractViolation(f"{tag}: eta^2 lambda(0) vanishes")
    _shift_y(r, -b12 / (3 * b03))
    r.kill_pure_x(3)
    beta = r.g.coefficient(2, 1) / b03
    r.scale(1, 1, 1 / b03)
    if tag == "I_*" and beta:
        raise ContractViolation("I_*: Hessian of lambda has rank two")
    r.stages.append("clean-I")
    w = Jet2({(0, 3): 1, (2, 1): beta}, r.order)
    return w, {"beta": beta}


def _recipe_III_IV(r: _Reducer, tag: str, D: int) -> Jet2:
    _need(r, D, f"{tag} specified jet")
    b30, b21, b12, b03 = _cubic(r)
    if b03 or not b12:
        raise ContractViolation(f"{tag}: expected eta^2 lambda(0) = 0 and det H < 0")
    _shift_y(r, -b21 / (2 * b12))
    r.kill_pure_x(3)
    for d in range(4, D + 1):
        r.kill_pure_x(d)
        r.kill_by_lead(d, (2 * b12, (1, 1)))
        if d < D and r.g.coefficient(0, d):
            raise ContractViolation(f"{tag}: y^{d} survives; the eta-derivatives disagree")
    bD = r.g.coefficient(0, D)
    if not bD:
        raise ContractViolation(f"{tag}: y^{D} coefficient vanishes")
    r.scale(bD / b12, 1, 1 / bD)
    r.stages.append("clean-III/IV")
    return Jet2({(1, 2): 1, (0, D): 1}, r.order)


def _recipe_V(r: _Reducer, tag: str) -> tuple[Jet2, dict]:
    _need(r, 4, f"{tag} specified jet")
    b30, b21, b12, b03 = _cubic(r)
    if b03 or b12 or not b21:
        raise ContractViolation(f"{tag}: expected rk H = 1 and eta^2 lambda(0) = 0")
    g = r.g
    b04, b13 = g.coefficient(0, 4), g.coefficient(1, 3)
    if tag == "V_1":
        if not b04:
            raise ContractViolation("V_1: eta^3 lambda(0) vanishes")
        _shift_y(r, -b13 / (4 * b04))
    elif b04:
        raise ContractViolation("V_2: eta^3 lambda(0) does not vanish")
    r.kill_pure_x(3)
    r.kill_pure_x(4)
    r.kill_by_lead(4, (b21, (2, 0)))
    g = r.g
    if tag == "V_1":
        q = b04 / b21
        r.scale(q * q, q, 1 / (b04 * q ** 4))
        w = Jet2({(2, 1): 1, (0, 4): 1}, r.order)
        r.stages.append("clean-V")
        return w, {}
    b13 = g.coefficient(1, 3)
    if not b13:
        # (x, x^2 y) specified jet; no normal form of codimension <= 6
        r.stages.append("clean-V")
        return Jet2({(2, 1): 1}, r.order), {"b13": ZERO}
    s = b13 / b21
    r.scale(s, 1, 1 / (b21 * s * s))
    r.stages.append("clean-V")
    return Jet2({(2, 1): 1, (1, 3): 1}, r.order), {"b13": b13}


def _recipe_VI(r: _Reducer) -> tuple[Jet2, dict]:
    _need(r, 4, "VI specified jet")
    b30, b21, b12, b03 = _cubic(r)
    if b21 or b12 or b03:
        raise ContractViolation("VI: expected H_lambda(0) = 0")
    r.kill_pure_x(3)
    g = r.g
    b04, b13 = g.coefficient(0, 4), g.coefficient(1, 3)
    if not b04:
        raise ContractViolation("VI: eta^3 lambda(0) vanishes")
    _shift_y(r, -b13 / (4 * b04))
    r.kill_pure_x(4)
    g = r.g
    p = g.coefficient(3, 1)
    rr = g.coefficient(0, 4)
    rho = exact_root(rr / p, 3) if p else None
    if rho is not None:
        # exact scaling to x^3 y + alpha x^2 y^2 + y^4
        r.scale(rho, 1, 1 / rr)
    else:
        r.scale(1, 1, 1 / rr)
    g = r.g
    w = Jet2({(3, 1): g.coefficient(3, 1), (2, 2): g.coefficient(2, 2), (0, 4): 1}, r.order)
    r.stages.append("clean-VI")
    return w, {"p": g.coefficient(3, 1), "q": g.coefficient(2, 2), "r": ONE}


def _run_recipe(r: _Reducer, cls: SpecifiedJetClass, full_II: bool) -> tuple[Jet2, dict]:
    tag = cls.tag
    if tag.startswith("II_"):
        k = int(tag[3:])
        _need(r, k, f"{tag} specified jet")
        return _recipe_II(r, k, full_II), {}
    if tag in ("I_2", "I_*"):
        return _recipe_I(r, tag)
    if tag in ("III_*", "IV_5", "IV_6"):
        D = {"III_*": 4, "IV_5": 5, "IV_6": 6}[tag]
        return _recipe_III_IV(r, tag, D), {}
    if tag in ("V_1", "V_2"):
        return _recipe_V(r, tag)
    if tag == "VI":
        return _recipe_VI(r)
    raise NotApplicable(f"no prenormal form for class {tag}")


def reduce_to_specified_jet(
    f: PlaneGermJet, cls: SpecifiedJetClass, track: bool = True
) -> NormalizedGerm:
    """Bring ``f`` to ``(x, w + tail)`` for its specified jet ``w``.

    For the II_k classes every x-dependent term of the tail is removed as
    well, so the tail is a polynomial in ``y`` alone.
    """
    r = _Reducer(f, track)
    _prenormalize(r)
    w, info = _run_recipe(r, cls, full_II=True)
    d = JET_DEGREE[cls.tag]
    if not (cls.tag == "V_2" and not info.get("b13", ONE)):
        _check_jet(r, w, d, cls.tag)
    if r.F.f1 != Jet2.x(r.order):
        raise ContractViolation("first component is not x after reduction")
    return NormalizedGerm(r.F, cls, w.truncate(d) if d <= r.order else w, r.change(), tuple(r.stages), info)


# -- weighted normal-form engine -------------------------------------------------

def _weight(m: Monomial, weights: tuple[int, int]) -> int:
    return m[0] * weights[0] + m[1] * weights[1]


def _monomials_of_weight(k: int, weights: tuple[int, int]) -> list[Monomial]:
    wx, wy = weights
    out = []
    for i in range(k // wx + 1):
        rest = k - i * wx
        if rest % wy == 0:
            out.append((i, rest // wy))
    out.sort(key=lambda m: -m[0])  # x-heavy first: these become pivots
    return out


def max_safe_weight(order: int, weights: tuple[int, int]) -> int:
    """Largest weight whose monomials all have ordinary degree <= order."""
    return (order + 1) * min(weights) - 1


def _weighted_part(g: Jet2, weights, k) -> dict[Monomial, Rat]:
    return {m: c for m, c in g.terms.items() if _weight(m, weights) == k}


@dataclass(frozen=True)
class EngineStep:
    weight: int
    complement: dict[Monomial, Rat]
    rank: int
    size: int

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "rank": self.rank,
            "monomials": self.size,
            "complement": [{"i": i, "j": j, "c": str(c)} for (i, j), c in sorted(self.complement.items())],
        }


@dataclass(frozen=True)
class WeightedNormalForm:
    germ: PlaneGermJet
    weights: tuple[int, int]
    w: Jet2
    steps: tuple[EngineStep, ...]
    change: CoordChangeJet | None

    def step(self, k: int) -> EngineStep:
        for s in self.steps:
            if s.weight == k:
                return s
        raise KeyError(k)

    def coefficient(self, i: int, j: int) -> Rat:
        return self.germ.f2.coefficient(i, j)

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "germ": self.germ.to_json(),
            "steps": [s.to_json() for s in self.steps],
        }


def _solve_weight(target: dict[Monomial, Rat], gens: list[dict[Monomial, Rat]], monos: list[Monomial]):
    """Reduce ``target`` by the span of ``gens``; pivots taken x-heavy first.

    Returns (coefficients of gens, remainder, rank) with
    ``target + sum(coef * gen) = remainder`` and remainder supported off
    the pivot columns.
    """
    n = len(gens)
    col = {m: k for k, m in enumerate(monos)}
    rows = []
    for idx, gvec in enumerate(gens):
        vec = [ZERO] * len(monos)
        for m, c in gvec.items():
            vec[col[m]] += c
        comb = [ZERO] * n
        comb[idx] = ONE
        rows.append((vec, comb))
    pivots = []  # (column, vec, comb)
    for vec, comb in rows:
        vec, comb = list(vec), list(comb)
        for pc, pvec, pcomb in pivots:
            f = vec[pc]
            if f:
                vec = [a - f * b for a, b in zip(vec, pvec)]
                comb = [a - f * b for a, b in zip(comb, pcomb)]
        lead = next((k for k, v in enumerate(vec) if v), None)
        if lead is None:
            continue
        inv = 1 / vec[lead]
        vec = [v * inv for v in vec]
        comb = [v * inv for v in comb]
        # keep earlier pivots reduced in the new column
        new_piv = []
        for pc, pvec, pcomb in pivots:
            f = pvec[lead]
            if f:
                pvec = [a - f * b for a, b in zip(pvec, vec)]
                pcomb = [a - f * b for a, b in zip(pcomb, comb)]
            new_piv.append((pc, pvec, pcomb))
        pivots = new_piv + [(lead, vec, comb)]
    # pivots with smaller column index (more x-heavy) should win; re-run with sorted order
    tvec = [ZERO] * len(monos)
    for m, c in target.items():
        tvec[col[m]] += c
    coef = [ZERO] * n
    for pc, pvec, pcomb in pivots:
        f = tvec[pc]
        if f:
            tvec = [a - f * b for a, b in zip(tvec, pvec)]
            coef = [a - f * b for a, b in zip(coef, pcomb)]
    remainder = {monos[k]: v for k, v in enumerate(tvec) if v}
    return coef, remainder, len(pivots)


def weighted_normal_form(
    n: NormalizedGerm | PlaneGermJet,
    weights: tuple[int, int],
    max_weight: int | None = None,
    w: Jet2 | None = None,
    track: bool = False,
) -> WeightedNormalForm:
    """Remove everything of weight > deg(w) that lies in the tangent space of ``w``.

    ``n`` must already be of the form ``(x, w + higher weight)``.  At each
    weight the tangent directions are

    * ``w_y * m`` (source change of ``y``),
    * ``x^a w^b`` (target change of ``Y``),
    * ``-w_x * x^a w^b`` (target change of ``X`` followed by restoring ``x``).

    The linear system is solved exactly; the change is applied exactly and
    the surviving complement is recorded.
    """
    germ = n.germ if isinstance(n, NormalizedGerm) else n
    order = germ.order
    if germ.f1 != Jet2.x(order):
        raise ContractViolation("weighted normal form needs first component x")
    g = germ.f2
    if w is None:
        low = min(_weight(m, weights) for m in g.terms)
        w = Jet2({m: c for m, c in g.terms.items() if _weight(m, weights) == low}, order)
    w = Jet2(w.terms, order)
    D = min(_weight(m, weights) for m in w.terms)
    if any(_weight(m, weights) != D for m in w.terms):
        raise ContractViolation("w is not weighted homogeneous")
    if any(_weight(m, weights) < D for m in g.terms) or _weighted_part(g, weights, D) != dict(w.terms):
        raise ContractViolation("germ does not start with w")
    safe = max_safe_weight(order, weights)
    if max_weight is None:
        max_weight = safe
    if max_weight > safe:
        raise InsufficientOrder(
            -(-(max_weight + 1) // min(weights)) - 1, order, f"weighted normal form through weight {max_weight}"
        )
    wx_, wy_ = weights
    # w is a polynomial, so its derivatives are exact at full order
    w_x = Jet2(w.diff("x").terms, order)
    w_y = Jet2(w.diff("y").terms, order)
    r = _Reducer(germ, track)
    x, y = Jet2.x(order), Jet2.y(order)
    w_pows = [Jet2.const(1, order)]
    steps = []
    for k in range(D + 1, max_weight + 1):
        monos = _monomials_of_weight(k, weights)
        if not monos:
            continue
        gens, kinds = [], []
        # source y-changes
        for m in _monomials_of_weight(k - D + wy_, weights):
            gens.append(_weighted_part(w_y * Jet2.monomial(*m, order), weights, k))
            kinds.append(("m", m))
        # target Y-changes and X-changes
        for kind, wt in (("h", k), ("P", k - D + wx_)):
            for a in range(wt // wx_ + 1):
                rest = wt - a * wx_
                if rest % D:
                    continue
                b = rest // D
                if a == 0 and b == 0:
                    continue
                while len(w_pows) <= b:
                    w_pows.append(w_pows[-1] * w)
                base = Jet2.monomial(a, 0, order) * w_pows[b]
                if kind == "P":
                    base = -(w_x * base)
                gens.append(_weighted_part(base, weights, k))
                kinds.append((kind, (a, b)))
        target = _weighted_part(r.g, weights, k)
        coef, remainder, rank = _solve_weight(target, gens, monos)
        m_terms, h_terms, p_terms = {}, {}, {}
        for c, (kind, mono) in zip(coef, kinds):
            if not c:
                continue
            bucket = {"m": m_terms, "h": h_terms, "P": p_terms}[kind]
            bucket[mono] = bucket.get(mono, ZERO) + c
        if m_terms:
            r.substitute(x, y + Jet2(m_terms, order))
        if h_terms or p_terms:
            r.target(x + Jet2(p_terms, order), y + Jet2(h_terms, order))
            r.straighten()
        got = _weighted_part(r.g, weights, k)
        if got != remainder:
            raise ContractViolation(f"weighted engine failed at weight {k}: {got} != {remainder}")
        steps.append(EngineStep(k, remainder, rank, len(monos)))
    return WeightedNormalForm(r.F, weights, w, tuple(steps), r.change())


def complement_at(wnf: WeightedNormalForm, k: int) -> dict[Monomial, Rat]:
    try:
        return wnf.step(k).complement
    except KeyError:
        return {}


# -- discriminant inputs ----------------------------------------------------------

# coefficients each branch reads, with the minimum order it needs
DISCRIMINANT_INPUTS = {
    "II_5": ((0, 6), (0, 7)),
    "II_6": ((0, 7), (0, 8), (0, 9)),
    "II_7": ((0, 8), (0, 9)),
    "III_*": ((0, 5), (0, 7), (1, 5), (2, 3)),
    "IV_5": ((0, 6), (0, 7), (1, 6), (0, 9)),
    "IV_6": ((0, 7),),
    "I_*": ((3, 1), (4, 1), (2, 2), (5, 1), (3, 2), (1, 3)),
    "V_1": ((0, 5),),
    "V_2": ((0, 5), (0, 6), (1, 4)),
    "VI": ((4, 1), (3, 2), (2, 3), (1, 4), (0, 5)),
}


def extract_discriminant_inputs(n: NormalizedGerm, names: Iterable[Monomial] | None = None) -> dict[Monomial, Rat]:
    """Read the ``a_ij`` the coefficient discriminants consume."""
    want = DISCRIMINANT_INPUTS.get(n.specified.tag, ()) if names is None else tuple(names)
    out = {}
    for i, j in want:
        if i + j > n.order:
            raise InsufficientOrder(i + j, n.order, f"coefficient a{i}{j}")
        out[(i, j)] = n.a(i, j)
    return out


def eleven_nine_stage(n: NormalizedGerm, track: bool = True) -> NormalizedGerm:
    """Second stage of the III_* branch: make the 7-jet exactly ``xy^2 + y^4``.

    Stage 1 runs the weighted engine (weights (2, 1)) through weight 8;
    that needs ``a05 = 0`` and ``a07 - 2a15 + 4a23 = 0``.  Stage 2 clears the
    remaining monomials of degree 5..7, all of weight >= 9, with ordinary
    source and target changes.  The ``c_ij`` of the result are returned
    in a new NormalizedGerm.
    """
    if n.specified.tag != "III_*":
        raise ContractViolation("the 11_9 stage applies to III_* only")
    _need_order = 9
    if n.order < _need_order:
        raise InsufficientOrder(_need_order, n.order, "coefficients c09, c17")
    stage1 = weighted_normal_form(n, (2, 1), max_weight=8, track=track)
    for k in (5, 6, 7, 8):
        if complement_at(stage1, k):
            raise ContractViolation(f"11_9 stage: weight-{k} complement does not vanish")
    r = _Reducer(stage1.germ, track)
    for d in range(5, 8):
        r.kill_pure_x(d)
        r.kill_by_lead(d, (rat(2), (1, 1)))
    _check_jet(r, n.w, 7, "11_9 stage")
    r.stages.append("clean-11_9")
    change = None
    if track:
        change = n.change.then(stage1.change).then(r.change())
    return NormalizedGerm(r.F, n.specified, n.w, change, n.stages + ("weighted-(2,1)-to-8", "clean-11_9"), n.info)


# -- moduli -------------------------------------------------------------------------

@dataclass(frozen=True)
class Modulus:
    """A modulus reported as ``value ** power`` when the value itself is irrational.

    ``root`` holds the value when a rational root exists.  For moduli only
    defined up to sign the nonnegative root is given.
    """

    name: str
    power_value: Rat
    power: int = 1
    root: Rat | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "power": self.power, "power_value": str(self.power_value)}
        out["value"] = None if self.root is None else str(self.root)
        return out


def _modulus(name: str, value: Rat, power: int = 1) -> Modulus:
    if power == 1:
        return Modulus(name, value, 1, value)
    root = exact_root(value, power)
    if root is not None and power % 2 == 0:
        root = abs(root)
    return Modulus(name, value, power, root)


# label type -> (weights, top weight the moduli need)
MODULI_SCHEDULE = {
    "8": ((5, 1), 9),
    "10": ((6, 1), 11),
    "15": ((4, 1), 9),
    "18": ((2, 1), 7),
}


def moduli_order(type_: str) -> int:
    """Jet order the moduli of ``type_`` need (0 when there are none to compute)."""
    if type_ == "19":
        return 4
    if type_ not in MODULI_SCHEDULE:
        return 0
    weights, top = MODULI_SCHEDULE[type_]
    return -(-(top + 1) // min(weights)) - 1


def _pure_y(wnf: WeightedNormalForm, k: int, j: int) -> Rat:
    comp = complement_at(wnf, k)
    extra = set(comp) - {(0, j)}
    if extra:
        raise ContractViolation(f"unexpected complement {sorted(extra)} at weight {k}")
    return comp.get((0, j), ZERO)


def extract_moduli(n: NormalizedGerm, type_: str) -> list[Modulus]:
    """Moduli of types 8, 10, 15, 18 and 19 under the fixed scaling convention.

    The weighted normal form leaves one pure power of y per weight.  With
    ``e_k`` its coefficient, positive source and target scalings give

    * 8:  ``alpha^2 = e9^2 / |e8|^3``
    * 10: ``alpha^2 = e10^2 / |e9|^3``, ``beta = e11 / e9^2``
    * 15: ``alpha = e9 / e7^3``
    * 18: ``alpha = a05``, ``beta = e7 / e6^2``
    * 19: ``alpha^3 = q^3 / (p^2 r)`` for the 4-jet ``p x^3y + q x^2y^2 + r y^4``.
    """
    if type_ == "19":
        p, q, r = n.g.coefficient(3, 1), n.g.coefficient(2, 2), n.g.coefficient(0, 4)
        return [_modulus("alpha", q ** 3 / (p * p * r), 3)]
    if type_ not in MODULI_SCHEDULE:
        return []
    weights, top = MODULI_SCHEDULE[type_]
    need = moduli_order(type_)
    if n.order < need:
        raise InsufficientOrder(need, n.order, f"moduli of type {type_}")
    w = n.w
    if type_ == "18":
        w = Jet2({(2, 1): 1, (1, 3): 1, (0, 5): n.a(0, 5)}, n.order)
    wnf = weighted_normal_form(n.germ.truncate(need), weights, max_weight=top, w=w)
    if type_ == "8":
        e8, e9 = _pure_y(wnf, 8, 8), _pure_y(wnf, 9, 9)
        return [_modulus("alpha", e9 * e9 / abs(e8) ** 3, 2)]
    if type_ == "10":
        e9, e10, e11 = (_pure_y(wnf, k, k) for k in (9, 10, 11))
        return [_modulus("alpha", e10 * e10 / abs(e9) ** 3, 2), _modulus("beta", e11 / (e9 * e9))]
    if type_ == "15":
        e7, e9 = _pure_y(wnf, 7, 7), _pure_y(wnf, 9, 9)
        return [_modulus("alpha", e9 / e7 ** 3)]
    e6, e7 = _pure_y(wnf, 6, 6), _pure_y(wnf, 7, 7)
    return [_modulus("alpha", n.a(0, 5)), _modulus("beta", e7 / (e6 * e6))]
