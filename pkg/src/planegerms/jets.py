"""Truncated bivariate power series over the rationals.

A :class:`Jet2` is a sparse map ``(i, j) -> coefficient`` of the monomials
``x**i * y**j`` together with an explicit truncation order.  Operations never
invent precision: the order of a result is the smallest order that went into
it, and asking for more than is stored raises :class:`InsufficientOrder`.

Plane map-germs and coordinate changes are pairs of jets; see
:class:`PlaneGermJet` and :class:`CoordChangeJet`.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    InputError,
    InsufficientOrder,
    JetDomainError,
    NotAUnit,
    NotInvertible,
)
from .rational import ONE, ZERO, Rat, rat, rat_str

Monomial = tuple[int, int]


def _clean(terms: Mapping[Monomial, object], order: int) -> dict[Monomial, Rat]:
    out = {}
    for (i, j), c in terms.items():
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent in monomial {(i, j)}")
        if i + j > order:
            continue
        c = rat(c)
        if c:
            out[(int(i), int(j))] = c
    return out


class Jet2:
    """Immutable truncated polynomial in ``x`` and ``y``."""

    __slots__ = ("_terms", "_order", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, order: int = 0):
        if order < 0:
            raise ValueError("jet order must be >= 0")
        self._order = int(order)
        self._terms = _clean(terms or {}, self._order)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Rat], order: int) -> "Jet2":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._order = order
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "Jet2":
        return cls._raw({}, order)

    @classmethod
    def const(cls, value, order: int) -> "Jet2":
        return cls({(0, 0): value}, order)

    @classmethod
    def x(cls, order: int) -> "Jet2":
        return cls({(1, 0): 1}, order)

    @classmethod
    def y(cls, order: int) -> "Jet2":
        return cls({(0, 1): 1}, order)

    @classmethod
    def monomial(cls, i: int, j: int, order: int, coeff=1) -> "Jet2":
        return cls({(i, j): coeff}, order)

    @classmethod
    def parse(cls, text: str, order: int) -> "Jet2":
        """Build a jet from an expression such as ``"x*y + y^5 - 3/8*y^7"``."""
        return parse_expression(text, order)

    # -- accessors --------------------------------------------------------
    @property
    def order(self) -> int:
        return self._order

    @property
    def terms(self) -> Mapping[Monomial, Rat]:
        return MappingProxyType(self._terms)

    def coefficient(self, i: int, j: int) -> Rat:
        if i + j > self._order:
            raise InsufficientOrder(i + j, self._order, f"coefficient of x^{i}y^{j}")
        return self._terms.get((i, j), ZERO)

    def __getitem__(self, key: Monomial) -> Rat:
        return self.coefficient(*key)

    def constant(self) -> Rat:
        return self._terms.get((0, 0), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> int | None:
        """Lowest total degree present, None for the zero jet."""
        if not self._terms:
            return None
        return min(i + j for i, j in self._terms)

    def homogeneous_part(self, d: int) -> "Jet2":
        return Jet2._raw({m: c for m, c in self._terms.items() if sum(m) == d}, self._order)

    def weighted_part(self, wx: int, wy: int, k: int) -> "Jet2":
        return Jet2._raw(
            {m: c for m, c in self._terms.items() if wx * m[0] + wy * m[1] == k}, self._order
        )

    def sorted_terms(self) -> list[tuple[Monomial, Rat]]:
        return sorted(self._terms.items(), key=lambda t: (t[0][0] + t[0][1], -t[0][0]))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Jet2):
            return NotImplemented
        return self._order == other._order and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._order, frozenset(self._terms.items())))
        return self._hash

    def equal_to_order(self, other: "Jet2", d: int) -> bool:
        return self.truncate(d)._terms == other.truncate(d)._terms

    # -- ring operations --------------------------------------------------
    def _coerce(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return other
        return Jet2.const(other, self._order)

    def __add__(self, other):
        if not isinstance(other, Jet2):
            try:
                other = rat(other)
            except TypeError:
                return NotImplemented
            other = Jet2.const(other, self._order)
        order = min(self._order, other._order)
        out = {m: c for m, c in self._terms.items() if m[0] + m[1] <= order}
        for m, c in other._terms.items():
            if m[0] + m[1] > order:
                continue
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Jet2._raw(out, order)

    __radd__ = __add__

    def __neg__(self):
        return Jet2._raw({m: -c for m, c in self._terms.items()}, self._order)

    def __sub__(self, other):
        if not isinstance(other, Jet2):
            try:
                other = rat(other)
            except TypeError:
                return NotImplemented
            other = Jet2.const(other, self._order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Jet2":
        c = rat(c)
        if not c:
            return Jet2.zero(self._order)
        return Jet2._raw({m: c * v for m, v in self._terms.items()}, self._order)

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        order = min(self._order, other._order)
        return _mul(self._terms, other._terms, order)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.invert_unit()
        c = rat(other)
        if not c:
            raise ZeroDivisionError("division of a jet by zero")
        return self.scale(1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Jet2.const(ONE, self._order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus ---------------------------------------------------------
    def truncate(self, d: int) -> "Jet2":
        if d > self._order:
            raise InsufficientOrder(d, self._order, "truncation")
        if d < 0:
            raise ValueError("truncation order must be >= 0")
        return Jet2._raw({m: c for m, c in self._terms.items() if m[0] + m[1] <= d}, d)

    def with_order(self, d: int) -> "Jet2":
        """Same as :meth:`truncate` but returns self when nothing changes."""
        return self if d == self._order else self.truncate(d)

    def diff(self, var: str) -> "Jet2":
        if self._order < 1:
            raise InsufficientOrder(1, self._order, f"d/d{var}")
        out = {}
        if var == "x":
            for (i, j), c in self._terms.items():
                if i:
                    out[(i - 1, j)] = i * c
        elif var == "y":
            for (i, j), c in self._terms.items():
                if j:
                    out[(i, j - 1)] = j * c
        else:
            raise ValueError(f"unknown variable {var!r}")
        return Jet2._raw({m: c for m, c in out.items() if m[0] + m[1] <= self._order - 1}, self._order - 1)

    def evaluate_origin_derivative(self, i: int, j: int) -> Rat:
        """``d^(i+j) / dx^i dy^j`` at the origin."""
        return self.coefficient(i, j) * _factorial(i) * _factorial(j)

    def compose(self, sx: "Jet2", sy: "Jet2") -> "Jet2":
        """Return ``self(sx, sy)``; both substituents must vanish at 0."""
        if sx.constant() or sy.constant():
            raise JetDomainError("substituted series must have zero constant term")
        order = min(self._order, sx._order, sy._order)
        if not self._terms:
            return Jet2.zero(order)
        max_i = max(i for i, _ in self._terms)
        max_j = max(j for _, j in self._terms)
        sx = sx.with_order(order)
        sy = sy.with_order(order)
        xp = _powers(sx, max_i, order)
        yp = _powers(sy, max_j, order)
        by_j: dict[int, list[tuple[int, Rat]]] = {}
        for (i, j), c in self._terms.items():
            if i + j <= order:
                by_j.setdefault(j, []).append((i, c))
        acc: dict[Monomial, Rat] = {}
        for j, row in by_j.items():
            inner: dict[Monomial, Rat] = {}
            for i, c in row:
                for m, v in xp[i].items():
                    if m[0] + m[1] + j <= order:
                        inner[m] = inner.get(m, ZERO) + c * v
            inner = {m: v for m, v in inner.items() if v}
            part = _mul(inner, yp[j], order)._terms if j else inner
            for m, v in part.items():
                acc[m] = acc.get(m, ZERO) + v
        return Jet2._raw({m: v for m, v in acc.items() if v}, order)

    def invert_unit(self) -> "Jet2":
        c0 = self.constant()
        if not c0:
            raise NotAUnit("jet with zero constant term has no multiplicative inverse")
        inv0 = 1 / c0
        t = (self - c0).scale(inv0)  # self = c0 (1 + t)
        # 1/(1+t) by Horner: 1 - t(1 - t(1 - ...))
        result = Jet2.const(ONE, self._order)
        for _ in range(self._order):
            result = Jet2.const(ONE, self._order) - t * result
        return result.scale(inv0)

    # -- presentation -----------------------------------------------------
    def __repr__(self):
        return f"Jet2({self.to_expression()!r}, order={self._order})"

    def to_expression(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in self.sorted_terms():
            mono = "*".join(
                p for p in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if p
            )
            if not mono:
                parts.append(rat_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "order": self._order,
            "terms": [{"i": i, "j": j, "c": rat_str(c)} for (i, j), c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Jet2":
        try:
            order = data["order"]
            raw = data["terms"]
            if not isinstance(order, int) or isinstance(order, bool):
                raise InputError("jet 'order' must be an integer")
            terms: dict[Monomial, Rat] = {}
            for t in raw:
                key = (int(t["i"]), int(t["j"]))
                if key in terms:
                    raise InputError(f"duplicate monomial {key} in jet JSON")
                terms[key] = rat(str(t["c"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed jet JSON: {exc}") from exc
        for (i, j) in terms:
            if i + j > order:
                raise InputError(f"term x^{i}y^{j} exceeds declared order {order}")
        return cls(terms, order)


_FACT = [1]


def _factorial(n: int) -> int:
    while len(_FACT) <= n:
        _FACT.append(_FACT[-1] * len(_FACT))
    return _FACT[n]


def _mul(a: Mapping[Monomial, Rat], b: Mapping[Monomial, Rat], order: int) -> Jet2:
    if not a or not b:
        return Jet2.zero(order)
    b_sorted = sorted(b.items(), key=lambda t: t[0][0] + t[0][1])
    out: dict[Monomial, Rat] = {}
    for (i1, j1), c1 in a.items():
        room = order - i1 - j1
        if room < 0:
            continue
        for (i2, j2), c2 in b_sorted:
            if i2 + j2 > room:
                break
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, ZERO) + c1 * c2
    return Jet2._raw({m: c for m, c in out.items() if c}, order)


def _powers(s: Jet2, n: int, order: int) -> list[dict[Monomial, Rat]]:
    pw = [{(0, 0): ONE}]
    cur = Jet2.const(ONE, order)
    for _ in range(n):
        cur = cur * s
        pw.append(cur._terms)
    return pw


# -- expression parsing ------------------------------------------------------

def parse_expression(text: str, order: int, variables: Mapping[str, Jet2] | None = None) -> Jet2:
    """Parse a polynomial expression in ``x`` and ``y`` into a jet.

    Accepts ``+ - *``, integer powers via ``^`` or ``**``, division by
    nonzero rational constants and parentheses.  Additional named jets can
    be passed in ``variables``.
    """
    env = {"x": Jet2.x(order), "y": Jet2.y(order)}
    if variables:
        env.update(variables)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse expression {text!r}: {exc.msg}") from exc
    value = _eval_node(tree.body, env, order)
    if not isinstance(value, Jet2):
        value = Jet2.const(value, order)
    return value


def _eval_node(node, env, order):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return rat(node.value)
        raise InputError(f"only integer literals are allowed, got {node.value!r}")
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise InputError(f"unknown symbol {node.id!r}")
        return env[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, env, order)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, env, order)
        if isinstance(node.op, ast.Pow):
            if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                raise InputError("exponents must be integer literals")
            n = node.right.value
            if n < 0:
                raise InputError("negative exponents are not allowed")
            return left ** n
        right = _eval_node(node.right, env, order)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            if isinstance(left, Jet2) or isinstance(right, Jet2):
                if not isinstance(left, Jet2):
                    left, right = right, left
                return left * right
            return left * right
        if isinstance(node.op, ast.Div):
            if isinstance(right, Jet2):
                if right.valuation() is None or right.valuation() > 0 or len(right.terms) > 1:
                    raise InputError("can only divide by nonzero constants")
                right = right.constant()
            if not right:
                raise InputError("division by zero")
            return left / right
    raise InputError(f"unsupported syntax in expression: {ast.dump(node)}")


# -- plane map-germs ---------------------------------------------------------

@dataclass(frozen=True)
class PlaneGermJet:
    """The r-jet of a map-germ (R^2,0) -> (R^2,0)."""

    f1: Jet2
    f2: Jet2

    def __post_init__(self):
        if self.f1.order != self.f2.order:
            order = min(self.f1.order, self.f2.order)
            object.__setattr__(self, "f1", self.f1.truncate(order))
            object.__setattr__(self, "f2", self.f2.truncate(order))
        if self.f1.constant() or self.f2.constant():
            raise JetDomainError("map-germ components must vanish at the origin")

    @classmethod
    def parse(cls, f1: str, f2: str, order: int) -> "PlaneGermJet":
        return cls(Jet2.parse(f1, order), Jet2.parse(f2, order))

    @property
    def order(self) -> int:
        return self.f1.order

    def truncate(self, d: int) -> "PlaneGermJet":
        return PlaneGermJet(self.f1.truncate(d), self.f2.truncate(d))

    def precompose(self, sx: Jet2, sy: Jet2) -> "PlaneGermJet":
        """``f(sx, sy)``: substitute source coordinates."""
        return PlaneGermJet(self.f1.compose(sx, sy), self.f2.compose(sx, sy))

    def swapped(self) -> "PlaneGermJet":
        return PlaneGermJet(self.f2, self.f1)

    def linear_part(self) -> tuple[tuple[Rat, Rat], tuple[Rat, Rat]]:
        return (
            (self.f1.coefficient(1, 0), self.f1.coefficient(0, 1)),
            (self.f2.coefficient(1, 0), self.f2.coefficient(0, 1)),
        )

    def __str__(self):
        return f"({self.f1.to_expression()}, {self.f2.to_expression()}) + O({self.order + 1})"

    def to_json(self) -> dict:
        return {"order": self.order, "f1": self.f1.to_json(), "f2": self.f2.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "PlaneGermJet":
        """Accept ``{"f1": jet, "f2": jet}`` or ``{"order": n, "f": ["expr", "expr"]}``."""
        if not isinstance(data, Mapping):
            raise InputError("germ JSON must be an object")
        try:
            if "f" in data:
                order = data["order"]
                if not isinstance(order, int) or isinstance(order, bool):
                    raise InputError("germ 'order' must be an integer")
                e1, e2 = data["f"]
                return cls.parse(str(e1), str(e2), order)
            f1 = Jet2.from_json(data["f1"])
            f2 = Jet2.from_json(data["f2"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed germ JSON: {exc}") from exc
        if f1.order != f2.order:
            raise InputError("germ components must share one order")
        if "order" in data and data["order"] != f1.order:
            raise InputError("germ 'order' disagrees with component orders")
        try:
            return cls(f1, f2)
        except JetDomainError as exc:
            raise InputError(str(exc)) from exc


# -- maps and coordinate changes ----------------------------------------------

Map2 = tuple[Jet2, Jet2]


def identity_map(order: int) -> Map2:
    return (Jet2.x(order), Jet2.y(order))


def compose_maps(outer: Map2, inner: Map2) -> Map2:
    """``outer o inner``."""
    return (outer[0].compose(*inner), outer[1].compose(*inner))


def linear_matrix(m: Map2) -> tuple[tuple[Rat, Rat], tuple[Rat, Rat]]:
    return (
        (m[0].coefficient(1, 0), m[0].coefficient(0, 1)),
        (m[1].coefficient(1, 0), m[1].coefficient(0, 1)),
    )


def invert_map(m: Map2) -> Map2:
    """Compositional inverse of an origin-preserving jet map.

    Solves ``m(inv(u)) = u`` degree by degree: with ``m = L + N`` the
    iteration ``inv <- L^-1 (u - N(inv))`` fixes one more degree per pass.
    """
    order = min(m[0].order, m[1].order)
    if m[0].constant() or m[1].constant():
        raise JetDomainError("map must fix the origin")
    (a, b), (c, d) = linear_matrix(m)
    det = a * d - b * c
    if not det:
        raise NotInvertible("linear part of the coordinate change is singular")
    ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
    n0 = m[0] - Jet2({(1, 0): a, (0, 1): b}, order)
    n1 = m[1] - Jet2({(1, 0): c, (0, 1): d}, order)
    u, v = Jet2.x(order), Jet2.y(order)
    inv = (u.scale(ia) + v.scale(ib), u.scale(ic) + v.scale(id_))
    if order >= 1:
        inv = (inv[0].truncate(1), inv[1].truncate(1))
    for k in range(2, order + 1):
        # degree-k terms of inv do not affect N(inv) through degree k
        p = (Jet2._raw(dict(inv[0]._terms), k), Jet2._raw(dict(inv[1]._terms), k))
        r0 = u.truncate(k) - n0.truncate(k).compose(*p)
        r1 = v.truncate(k) - n1.truncate(k).compose(*p)
        inv = (r0.scale(ia) + r1.scale(ib), r0.scale(ic) + r1.scale(id_))
    if order < 2:
        return (inv[0].with_order(order), inv[1].with_order(order))
    return inv


@dataclass(frozen=True)
class CoordChangeJet:
    """Source change ``phi`` and target change ``psi``; acts as ``psi o f o phi^-1``."""

    source: Map2
    target: Map2

    def __post_init__(self):
        for name, m in (("source", self.source), ("target", self.target)):
            if m[0].constant() or m[1].constant():
                raise JetDomainError(f"{name} change must fix the origin")
            (a, b), (c, d) = linear_matrix(m)
            if not (a * d - b * c):
                raise NotInvertible(f"{name} change has a singular linear part")

    @classmethod
    def identity(cls, order: int) -> "CoordChangeJet":
        return cls(identity_map(order), identity_map(order))

    @property
    def order(self) -> int:
        return min(j.order for j in (*self.source, *self.target))

    def inverse(self) -> "CoordChangeJet":
        return CoordChangeJet(invert_map(self.source), invert_map(self.target))

    def then(self, other: "CoordChangeJet") -> "CoordChangeJet":
        """The change that applies ``self`` first and ``other`` second."""
        return CoordChangeJet(
            compose_maps(other.source, self.source),
            compose_maps(other.target, self.target),
        )

    def apply(self, f: PlaneGermJet) -> PlaneGermJet:
        sub = invert_map(self.source)
        return self.apply_with_substitution(f, sub)

    def apply_with_substitution(self, f: PlaneGermJet, sub: Map2) -> PlaneGermJet:
        g = f.precompose(*sub)
        return PlaneGermJet(self.target[0].compose(g.f1, g.f2), self.target[1].compose(g.f1, g.f2))

    def is_identity(self, order: int | None = None) -> bool:
        order = self.order if order is None else order
        ident = identity_map(order)
        return all(
            m.truncate(order) == e for pair in (self.source, self.target) for m, e in zip(pair, ident)
        )

    def to_json(self) -> dict:
        return {
            "source": [j.to_json() for j in self.source],
            "target": [j.to_json() for j in self.target],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CoordChangeJet":
        try:
            src = tuple(Jet2.from_json(j) for j in data["source"])
            tgt = tuple(Jet2.from_json(j) for j in data["target"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed change JSON: {exc}") from exc
        if len(src) != 2 or len(tgt) != 2:
            raise InputError("a change needs two source and two target components")
        return cls(src, tgt)


def random_jet(rng, order: int, height: int = 8, density: float = 1.0, min_degree: int = 0,
               max_degree: int | None = None) -> Jet2:
    """Random jet with coefficients p/q, |p| <= height, 1 <= q <= height."""
    max_degree = order if max_degree is None else min(order, max_degree)
    terms = {}
    for d in range(min_degree, max_degree + 1):
        for i in range(d + 1):
            if rng.random() < density:
                p = rng.randint(-height, height)
                q = rng.randint(1, height)
                if p:
                    terms[(i, d - i)] = rat(p) / q
    return Jet2(terms, order)


def random_change(rng, order: int, height: int = 8, density: float = 0.5,
                  max_degree: int | None = None) -> CoordChangeJet:
    """Random origin-preserving source/target change with invertible linear part."""

    def one_map():
        while True:
            a, b, c, d = (rat(rng.randint(-height, height)) / rng.randint(1, height) for _ in range(4))
            if a * d - b * c:
                break

        lin0 = Jet2({(1, 0): a, (0, 1): b}, order)
        lin1 = Jet2({(1, 0): c, (0, 1): d}, order)
        n0 = random_jet(rng, order, height, density, 2, max_degree)
        n1 = random_jet(rng, order, height, density, 2, max_degree)
        return (lin0 + n0, lin1 + n1)

    return CoordChangeJet(one_map(), one_map())


def iter_monomials(d: int) -> Iterable[Monomial]:
    for i in range(d, -1, -1):
        yield (i, d - i)
