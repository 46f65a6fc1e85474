"""Two-phase recognition: routing on eta^k lambda(0), then coefficient discriminants.

The decision logic reads every quantity through an evaluator with a single
``value(name)`` method.  :class:`LiveEvaluator` computes values from a germ;
:class:`ReplayEvaluator` serves them back from a certificate.  Running the
same logic on both is what makes a certificate replayable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import ContractViolation, InsufficientOrder
from .invariants import (
    corank_at_origin,
    eta_iterates,
    hessian_of,
    lambda_of,
    null_field,
)
from .jets import Jet2, PlaneGermJet
from .normalize import (
    NormalizedGerm,
    SpecifiedJetClass,
    complement_at,
    eleven_nine_stage,
    extract_moduli,
    moduli_order,
    reduce_to_specified_jet,
    weighted_normal_form,
    Modulus,
)
from .rational import Rat, rat, sign

OUT_OF_SCOPE = "OutOfScope"

# reason codes
R_CORANK2 = "corank2"
R_ETA_FLAT = "eta_flat"
R_DET_POS = "table3_gap:det_positive_eta2_zero"
R_RANK0 = "table3_gap:rank0_eta3_zero"

VI_DELTA = "Delta"


class OutOfScope(Exception):
    """Internal signal carrying a reason code."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


# -- certificate --------------------------------------------------------------------

def _encode(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (tuple, list)):
        return [_encode(v) for v in value]
    return str(value)


def _decode(value):
    if isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, list):
        return tuple(_decode(v) for v in value)
    return rat(value)


@dataclass(frozen=True)
class Entry:
    predicate: str
    name: str
    value: object
    holds: bool

    def to_json(self) -> dict:
        return {"predicate": self.predicate, "name": self.name, "value": _encode(self.value), "holds": self.holds}


@dataclass
class Certificate:
    entries: list[Entry] = field(default_factory=list)
    branch: list[str] = field(default_factory=list)
    discriminants: dict[str, Rat] = field(default_factory=dict)
    moduli: list[Modulus] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    stages: list[str] = field(default_factory=list)
    normal_form_sign: int | None = None
    crosscheck: dict | None = None

    def values(self) -> dict[str, object]:
        return {e.name: e.value for e in self.entries}

    def to_json(self) -> dict:
        out = {
            "predicates": [e.to_json() for e in self.entries],
            "branch": list(self.branch),
            "discriminants": {k: str(v) for k, v in self.discriminants.items()},
            "stages": list(self.stages),
        }
        if self.normal_form_sign is not None:
            out["normal_form_sign"] = self.normal_form_sign
        if self.crosscheck is not None:
            out["crosscheck"] = self.crosscheck
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        cert = cls()
        for e in data.get("predicates", []):
            cert.entries.append(Entry(e["predicate"], e["name"], _decode(e["value"]), bool(e["holds"])))
        cert.branch = list(data.get("branch", []))
        cert.discriminants = {k: rat(v) for k, v in data.get("discriminants", {}).items()}
        cert.stages = list(data.get("stages", []))
        return cert


@dataclass
class Classification:
    label: str
    type: str | None
    certificate: Certificate
    reason: str | None = None
    specified: str | None = None

    @property
    def out_of_scope(self) -> bool:
        return self.label == OUT_OF_SCOPE

    @property
    def moduli(self) -> dict[str, Modulus]:
        return {m.name: m for m in self.certificate.moduli}

    def to_json(self) -> dict:
        cert = self.certificate
        moduli = {m.name: m.to_json() for m in cert.moduli}
        out = {
            "label": self.label,
            "type": self.type,
            "moduli": moduli,
            "certificate": [e.to_json() for e in cert.entries],
            "flags": list(cert.flags),
            "branch": list(cert.branch),
            "discriminants": {k: str(v) for k, v in cert.discriminants.items()},
            "stages": list(cert.stages),
        }
        if self.reason is not None:
            out["reason"] = self.reason
        if self.specified is not None:
            out["specified_jet"] = self.specified
        if cert.normal_form_sign is not None:
            out["normal_form_sign"] = cert.normal_form_sign
        if cert.crosscheck is not None:
            out["crosscheck"] = cert.crosscheck
        return out


# -- evaluators -----------------------------------------------------------------------

class LiveEvaluator:
    """Computes named quantities from a germ on demand, each at most once."""

    def __init__(self, f: PlaneGermJet):
        self.f = f
        self._cache: dict[str, object] = {}
        self._lam: Jet2 | None = None
        self._etas: list[Jet2] | None = None
        self._eta = None
        self.cls: SpecifiedJetClass | None = None
        self.normalized: NormalizedGerm | None = None
        self.stage2: NormalizedGerm | None = None
        self.stages: list[str] = []

    # plumbing
    def lam(self) -> Jet2:
        if self._lam is None:
            self._lam = lambda_of(self.f)
        return self._lam

    def eta(self):
        if self._eta is None:
            self._eta = null_field(self.f)
        return self._eta

    def eta_power(self, k: int) -> Rat:
        if self.f.order < k + 1:
            raise InsufficientOrder(k + 1, self.f.order, f"eta^{k} lambda(0)")
        if self._etas is None or len(self._etas) <= k:
            self._etas = eta_iterates(self.lam(), self.eta(), k)
        return self._etas[k].constant()

    def set_class(self, cls: SpecifiedJetClass) -> None:
        self.cls = cls

    def norm(self) -> NormalizedGerm:
        if self.normalized is None:
            self.normalized = reduce_to_specified_jet(self.f, self.cls, track=False)
            self.stages.extend(self.normalized.stages)
        return self.normalized

    def a(self, i: int, j: int) -> Rat:
        n = self.norm()
        if i + j > n.order:
            raise InsufficientOrder(i + j, n.order, f"coefficient a{i}{j}")
        return n.a(i, j)

    def c(self, i: int, j: int) -> Rat:
        if self.stage2 is None:
            self.stage2 = eleven_nine_stage(self.norm(), track=False)
            self.stages.append("stage 2: weighted (2,1) through weight 8, then degrees 5..7 cleared")
        return self.stage2.a(i, j)

    def value(self, name: str):
        if name not in self._cache:
            self._cache[name] = self._compute(name)
        return self._cache[name]

    def _compute(self, name: str):
        if name == "corank":
            return corank_at_origin(self.f)
        if name == "lambda(0)":
            return self.lam().constant()
        if name.startswith("eta^") and name.endswith(" lambda(0)"):
            return self.eta_power(int(name[4:name.index(" ")]))
        if name == "dlambda(0)":
            if self.f.order < 2:
                raise InsufficientOrder(2, self.f.order, "d lambda(0)")
            lam = self.lam()
            return (lam.coefficient(1, 0), lam.coefficient(0, 1))
        if name in ("rk H_lambda(0)", "det H_lambda(0)"):
            if self.f.order < 3:
                raise InsufficientOrder(3, self.f.order, "Hessian of lambda")
            h = hessian_of(self.lam())
            return h.rank if name.startswith("rk") else h.det
        if name in DISCRIMINANTS:
            return DISCRIMINANTS[name](self)
        raise KeyError(name)


class ReplayEvaluator:
    """Serves recorded values; a missing name means the certificate is incomplete."""

    def __init__(self, values: dict[str, object]):
        self._values = values
        self.stages: list[str] = []

    def set_class(self, cls) -> None:
        pass

    def value(self, name: str):
        try:
            return self._values[name]
        except KeyError:
            raise ContractViolation(f"certificate lacks the value of {name!r}") from None


# -- discriminants (closed forms) --------------------------------------------------------

def _vi_delta(ev: LiveEvaluator) -> Rat:
    """Delta for a 4-jet p x^3y + q x^2y^2 + r y^4 (p, r nonzero).

    Equals the classical Delta divided by a nonzero source scale, so its
    vanishing is decided exactly without cube roots.
    """
    n = ev.norm()
    p, q, r = n.a(3, 1), n.a(2, 2), n.a(0, 4)
    a41, a32, a23, a14, a05 = (ev.a(i, 5 - i) for i in (4, 3, 2, 1, 0))
    return (
        8 * q * a41 / (p * p)
        - 12 * a32 / p
        - 4 * q * q * a23 / (p * p * r)
        + 4 * q * a14 / (p * r)
        + 3 * a05 / r
        + 2 * q ** 3 * a05 / (p * p * r * r)
    )


DISCRIMINANTS: dict[str, Callable[[LiveEvaluator], object]] = {
    "a07 - 5/8 a06^2": lambda e: e.a(0, 7) - rat("5/8") * e.a(0, 6) ** 2,
    "a08 - 3/5 a07^2": lambda e: e.a(0, 8) - rat("3/5") * e.a(0, 7) ** 2,
    "a09 - 7/25 a07^3": lambda e: e.a(0, 9) - rat("7/25") * e.a(0, 7) ** 3,
    "a09 - 7/12 a08^2": lambda e: e.a(0, 9) - rat("7/12") * e.a(0, 8) ** 2,
    "a05": lambda e: e.a(0, 5),
    "a07 - 2 a15 + 4 a23": lambda e: e.a(0, 7) - 2 * e.a(1, 5) + 4 * e.a(2, 3),
    "c09 - 2 c17": lambda e: e.c(0, 9) - 2 * e.c(1, 7),
    "a06": lambda e: e.a(0, 6),
    "a09 - 5/2 a16 - 5/6 a07^2": lambda e: e.a(0, 9) - rat("5/2") * e.a(1, 6) - rat("5/6") * e.a(0, 7) ** 2,
    "a07": lambda e: e.a(0, 7),
    "a31": lambda e: e.a(3, 1),
    "a41 - 1/3 a22^2": lambda e: e.a(4, 1) - e.a(2, 2) ** 2 / 3,
    "a51 - 2/3 a32 a22 + 1/3 a13 a22^2": lambda e: (
        e.a(5, 1) - rat("2/3") * e.a(3, 2) * e.a(2, 2) + e.a(1, 3) * e.a(2, 2) ** 2 / 3
    ),
    "b13": lambda e: e.norm().info["b13"],
    "a06 (5 a05 - 9) + 15 a14 a05": lambda e: e.a(0, 6) * (5 * e.a(0, 5) - 9) + 15 * e.a(1, 4) * e.a(0, 5),
    "p": lambda e: e.a(3, 1),
    VI_DELTA: _vi_delta,
}


# -- decision logic -----------------------------------------------------------------------

class _Decider:
    def __init__(self, ev):
        self.ev = ev
        self.cert = Certificate()

    def _record(self, predicate: str, name: str, value, holds: bool) -> bool:
        self.cert.entries.append(Entry(predicate, name, value, holds))
        return holds

    def nonzero(self, name: str, shown: str | None = None) -> bool:
        v = self.ev.value(name)
        holds = any(v) if isinstance(v, tuple) else bool(v)
        return self._record(f"{shown or name} != 0", name, v, holds)

    def disc(self, name: str) -> Rat:
        v = self.ev.value(name)
        self.cert.discriminants[name] = v
        self._record(f"{name} != 0", name, v, bool(v))
        return v

    def value(self, name: str, predicate: str, test) -> object:
        v = self.ev.value(name)
        self._record(predicate, name, v, bool(test(v)))
        return v

    def enter(self, cls: SpecifiedJetClass) -> None:
        self.cert.branch.append(str(cls))
        self.ev.set_class(cls)

    # phase one
    def specified(self):
        c = self.value("corank", "corank = 1", lambda v: v == 1)
        if c == 0:
            self.cert.branch.append("REGULAR")
            return "1"
        if c == 2:
            raise OutOfScope(R_CORANK2)
        if self.nonzero("eta^1 lambda(0)"):
            self.cert.branch.append("FOLD")
            return "2"
        if self.nonzero("dlambda(0)"):
            if self.nonzero("eta^2 lambda(0)"):
                self.cert.branch.append("CUSP")
                return "3"
            for k in range(4, 8):
                if self.nonzero(f"eta^{k - 1} lambda(0)"):
                    return SpecifiedJetClass(f"II_{k}")
            raise OutOfScope(R_ETA_FLAT)
        rk = self.value("rk H_lambda(0)", "rk H_lambda(0) = 2", lambda v: v == 2)
        if rk == 2:
            det = self.value("det H_lambda(0)", "det H_lambda(0) < 0", lambda v: v < 0)
            if det > 0:
                if self.nonzero("eta^2 lambda(0)"):
                    return SpecifiedJetClass("I_2", 1)
                raise OutOfScope(R_DET_POS)
            if self.nonzero("eta^2 lambda(0)"):
                return SpecifiedJetClass("I_2", -1)
            if self.nonzero("eta^3 lambda(0)"):
                return SpecifiedJetClass("III_*")
            if self.nonzero("eta^4 lambda(0)"):
                return SpecifiedJetClass("IV_5")
            if self.nonzero("eta^5 lambda(0)"):
                return SpecifiedJetClass("IV_6")
            raise OutOfScope("cod>=7:case1")
        if rk == 1:
            self._record("rk H_lambda(0) = 1", "rk H_lambda(0)", rk, True)
            if self.nonzero("eta^2 lambda(0)"):
                return SpecifiedJetClass("I_*")
            if self.nonzero("eta^3 lambda(0)"):
                return SpecifiedJetClass("V_1")
            return SpecifiedJetClass("V_2")
        if self.nonzero("eta^3 lambda(0)"):
            return SpecifiedJetClass("VI")
        raise OutOfScope(R_RANK0)

    # phase two
    def label(self, cls: SpecifiedJetClass) -> str:
        tag = cls.tag
        s = lambda v: "+" if v > 0 else "-"  # noqa: E731
        if tag == "I_2":
            return "4_2" + s(cls.sign)
        if tag == "II_4":
            return "5"
        if tag == "II_5":
            v = self.disc("a07 - 5/8 a06^2")
            return "6" + s(v) if v else "7"
        if tag == "II_6":
            v = self.disc("a08 - 3/5 a07^2")
            if v:
                return "8" + s(v)
            if self.disc("a09 - 7/25 a07^3"):
                return "9"
            raise OutOfScope("cod>=7:II_6")
        if tag == "II_7":
            v = self.disc("a09 - 7/12 a08^2")
            if v:
                self.cert.flags.append("generic_moduli_assumed")
                return "10" + s(v)
            raise OutOfScope("cod>=7:II_7")
        if tag == "III_*":
            if self.disc("a05"):
                return "11_5"
            if self.disc("a07 - 2 a15 + 4 a23"):
                return "11_7"
            self.cert.branch.append("III_*:stage2")
            if self.disc("c09 - 2 c17"):
                return "11_9"
            raise OutOfScope("cod>=7:III_*")
        if tag == "IV_5":
            if self.disc("a06"):
                return "12"
            v = self.disc("a09 - 5/2 a16 - 5/6 a07^2")
            if v:
                return "13" + s(v)
            raise OutOfScope("cod>=7:IV_5")
        if tag == "IV_6":
            if self.disc("a07"):
                return "15"
            raise OutOfScope("cod>=7:IV_6")
        if tag == "I_*":
            v = self.disc("a31")
            if v:
                self.cert.normal_form_sign = sign(v)
                return "4_3"
            v = self.disc("a41 - 1/3 a22^2")
            if v:
                return "4_4" + s(v)
            v = self.disc("a51 - 2/3 a32 a22 + 1/3 a13 a22^2")
            if v:
                self.cert.normal_form_sign = sign(v)
                return "4_5"
            raise OutOfScope("cod>=7:I_*")
        if tag == "V_1":
            v = self.disc("a05")
            return "16" + s(v) if v else "17"
        if tag == "V_2":
            if not self.nonzero("b13", "coefficient of x y^3"):
                raise OutOfScope("v2_x2y")
            a05 = self.value("a05", "a05 not in {3/2, 9/5}", lambda v: v not in (rat("3/2"), rat("9/5")))
            if a05 in (rat("3/2"), rat("9/5")):
                raise OutOfScope("v2_exceptional_a05")
            if self.disc("a06 (5 a05 - 9) + 15 a14 a05"):
                self.cert.flags.append("generic_moduli_assumed")
                return "18"
            raise OutOfScope("cod>=7:V_2")
        if tag == "VI":
            if not self.nonzero("p", "coefficient of x^3 y"):
                raise OutOfScope("vi_no_x3y")
            if self.disc(VI_DELTA):
                return "19"
            raise OutOfScope("vi_delta_zero")
        raise ContractViolation(f"unknown class {tag}")

    def run(self) -> tuple[str, str | None, str | None]:
        """Returns (label, reason, specified-jet tag)."""
        specified = None
        try:
            first = self.specified()
            if isinstance(first, str):
                return first, None, None
            specified = first
            self.enter(specified)
            return self.label(specified), None, str(specified)
        except OutOfScope as oos:
            return OUT_OF_SCOPE, oos.reason, None if specified is None else str(specified)


def _type_of(label: str) -> str | None:
    if label == OUT_OF_SCOPE:
        return None
    return label.rstrip("+-")


# -- public API ------------------------------------------------------------------------------

def classify_specified_jet(f: PlaneGermJet) -> SpecifiedJetClass | str:
    """Phase one only.

    Returns a :class:`SpecifiedJetClass`, one of the stable labels
    ``"1"``, ``"2"``, ``"3"``, or ``"OutOfScope:<reason>"``.
    """
    d = _Decider(LiveEvaluator(f))
    try:
        return d.specified()
    except OutOfScope as oos:
        return f"{OUT_OF_SCOPE}:{oos.reason}"


def classify(f: PlaneGermJet, crosscheck: bool = False, moduli: bool = True) -> Classification:
    """Label ``f`` with its A-type and a replayable certificate.

    Raises :class:`InsufficientOrder` when the germ is too short for the
    branch it falls in.  Moduli that would need more order than the germ
    carries are skipped with the flag ``moduli_unavailable``.
    """
    ev = LiveEvaluator(f)
    d = _Decider(ev)
    label, reason, specified = d.run()
    cert = d.cert
    cert.stages = list(ev.stages)
    if ev._eta is not None and ev._eta.swapped:
        cert.flags.insert(0, "swap")
    type_ = _type_of(label)
    if moduli and type_ in ("8", "10", "15", "18", "19"):
        need = moduli_order(type_)
        if f.order < need:
            cert.flags.append("moduli_unavailable")
        else:
            cert.moduli = extract_moduli(ev.norm(), type_)
    result = Classification(label, type_, cert, reason, specified)
    if crosscheck:
        cert.crosscheck = dual_route(f, result, ev)
    return result


def replay(cert: Certificate | dict, f: PlaneGermJet | None = None) -> str:
    """Re-run the decision logic on recorded values; returns the label.

    With ``f`` given, every recorded value is first recomputed from ``f``
    and compared.
    """
    if isinstance(cert, dict):
        cert = Certificate.from_json(cert)
    values = cert.values()
    if f is not None:
        live = LiveEvaluator(f)
        d_live = _Decider(live)
        d_live.run()
        fresh = d_live.cert.values()
        for name, v in values.items():
            if fresh.get(name) != v:
                raise ContractViolation(f"recorded {name} = {v} but the germ gives {fresh.get(name)}")
    label, _, _ = _Decider(ReplayEvaluator(values)).run()
    return label


# -- dual route -----------------------------------------------------------------------------------

# class -> (weights, [(discriminant name, weight of the complement it should match)])
DUAL = {
    "II_5": ((4, 1), [("a07 - 5/8 a06^2", 7)]),
    "II_6": ((5, 1), [("a08 - 3/5 a07^2", 8), ("a09 - 7/25 a07^3", 9)]),
    "II_7": ((6, 1), [("a09 - 7/12 a08^2", 9)]),
    "III_*": ((2, 1), [("a05", 5), ("a07 - 2 a15 + 4 a23", 7), ("c09 - 2 c17", 9)]),
    "IV_5": ((3, 1), [("a06", 6), ("a09 - 5/2 a16 - 5/6 a07^2", 9)]),
    "IV_6": ((4, 1), [("a07", 7)]),
    "V_1": ((3, 2), [("a05", 10)]),
    "V_2": ((2, 1), [("a06 (5 a05 - 9) + 15 a14 a05", 6)]),
    "VI": ((1, 1), [(VI_DELTA, 5)]),
}


def dual_route(f: PlaneGermJet, result: Classification, ev: LiveEvaluator | None = None) -> dict:
    """Check each evaluated discriminant against the weighted normal form.

    The weighted engine works from the tangent space of the specified jet
    alone, so agreement of the zero patterns is an independent check of the
    closed-form coefficient formulas.  For 4_k labels the check is the
    splitting-lemma test of lambda instead.
    """
    out: dict = {"checks": []}
    if result.type in ("4_2", "4_3", "4_4", "4_5"):
        ok = crosscheck_4k(f, result.label)
        out["checks"].append({"what": "lambda is A_(k-1) and eta^2 lambda(0) != 0", "agrees": ok})
        out["agrees"] = ok
        return out
    specified = result.specified
    if specified is None or specified.rstrip("+-") not in DUAL:
        out["agrees"] = True
        return out
    ev = ev or LiveEvaluator(f)
    if ev.cls is None:
        ev.set_class(SpecifiedJetClass(specified))
    n = ev.norm()
    weights, pairs = DUAL[specified]
    w = n.w
    if specified == "V_2":
        w = Jet2({(2, 1): 1, (1, 3): 1, (0, 5): n.a(0, 5)}, n.order)
    agrees = True
    wnf_cache = {}
    for name, k in pairs:
        if name not in result.certificate.discriminants:
            continue
        disc = result.certificate.discriminants[name]
        germ = n.germ
        top = k
        if specified == "III_*" and k == 9:
            germ = ev.stage2.germ if ev.stage2 is not None else eleven_nine_stage(n, track=False).germ
        need = -(-(top + 1) // min(weights)) - 1
        if germ.order < need:
            out["checks"].append({"discriminant": name, "skipped": f"needs order {need}"})
            continue
        key = (id(germ), top)
        if key not in wnf_cache:
            wnf_cache[key] = weighted_normal_form(germ.truncate(need), weights, max_weight=top, w=w)
        comp = complement_at(wnf_cache[key], k)
        ok = bool(comp) == bool(disc)
        agrees &= ok
        out["checks"].append({
            "discriminant": name,
            "value": str(disc),
            "weight": k,
            "complement": {f"x^{i}y^{j}": str(c) for (i, j), c in sorted(comp.items())},
            "agrees": ok,
        })
    out["agrees"] = agrees
    return out


# -- 4_k cross-check -----------------------------------------------------------------------------------

def ak_type_of_function(g: Jet2) -> int | None:
    """The k of an A_k function germ, by the splitting lemma; None otherwise.

    Regular points (nonzero linear part) and germs of Hessian rank 0 return
    None, as does a residual that vanishes to the available order.
    """
    if g.order < 2:
        raise InsufficientOrder(2, g.order, "A_k type")
    if g.constant():
        raise ContractViolation("A_k type needs g(0) = 0")
    if g.coefficient(1, 0) or g.coefficient(0, 1):
        return None
    h = hessian_of(g)
    if h.rank == 2:
        return 1
    if h.rank == 0:
        return None
    order = g.order
    x, y = Jet2.x(order), Jet2.y(order)
    a, b, c = g.coefficient(2, 0), g.coefficient(1, 1), g.coefficient(0, 2)
    # coordinates (u, v) with quadratic part c0 u^2
    if a:
        G = g.compose(x - y.scale(b / (2 * a)), y)  # x = u - b/(2a) v
        c0 = a
    else:
        G = g.compose(y, x)  # quadratic part c y^2 becomes c u^2
        c0 = c
    # G(u, v) with u = x, v = y; solve G_u(u(v), v) = 0 one degree per pass.
    # An error of degree d in u moves G(u(v), v) only from degree 2d on.
    Gu = G.diff("x")
    v = Jet2.y(order - 1)
    u = Jet2.zero(order - 1)
    for _ in range(order):
        r = Gu.compose(u, v)
        if r.is_zero():
            break
        u = u - r.scale(1 / (2 * c0))
    residual = G.compose(Jet2(u.terms, order), Jet2.y(order))
    val = residual.valuation()
    return None if val is None else val - 1


def crosscheck_4k(f: PlaneGermJet, label: str | None = None) -> bool:
    """True iff lambda is of type A_(k-1) and eta^2 lambda(0) != 0 for a 4_k germ."""
    if label is None:
        label = classify(f, moduli=False).label
    if not label.startswith("4_"):
        raise ContractViolation(f"crosscheck_4k needs a 4_k germ, got {label}")
    k = int(label[2])
    lam = lambda_of(f)
    eta2 = eta_iterates(lam, null_field(f), 2)[2].constant()
    return ak_type_of_function(lam) == k - 1 and eta2 != 0
