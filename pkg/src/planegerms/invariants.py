"""Jacobian determinant, null vector field and the derivatives routing reads.

For a corank-one germ ``f = (f1, f2)`` the canonical null field is
``eta = (df1/dy, -df1/dx)`` after swapping components when ``f1`` has no
linear part.  Then ``df(eta) = (0, -lambda)`` identically, so ``eta`` spans
the kernel of ``df`` along ``lambda = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientOrder, NotApplicable
from .jets import Jet2, PlaneGermJet
from .rational import ZERO, Rat


@dataclass(frozen=True)
class NullFieldJet:
    eta1: Jet2
    eta2: Jet2
    swapped: bool = False

    @property
    def order(self) -> int:
        return min(self.eta1.order, self.eta2.order)

    def apply(self, g: Jet2) -> Jet2:
        """``eta g = eta1 g_x + eta2 g_y``; costs one order of ``g``."""
        return self.eta1 * g.diff("x") + self.eta2 * g.diff("y")

    def at_origin(self) -> tuple[Rat, Rat]:
        return (self.eta1.constant(), self.eta2.constant())


@dataclass(frozen=True)
class HessianData:
    h: tuple[tuple[Rat, Rat], tuple[Rat, Rat]]
    rank: int
    det: Rat

    def to_json(self) -> dict:
        return {
            "h": [[str(v) for v in row] for row in self.h],
            "rank": self.rank,
            "det": str(self.det),
        }


def lambda_of(f: PlaneGermJet) -> Jet2:
    if f.order < 1:
        raise InsufficientOrder(1, f.order, "Jacobian determinant")
    return f.f1.diff("x") * f.f2.diff("y") - f.f1.diff("y") * f.f2.diff("x")


def linear_rank(f: PlaneGermJet) -> int:
    (a, b), (c, d) = f.linear_part()
    if a * d - b * c:
        return 2
    return 1 if any((a, b, c, d)) else 0


def corank_at_origin(f: PlaneGermJet) -> int:
    if f.order < 1:
        raise InsufficientOrder(1, f.order, "corank")
    return 2 - linear_rank(f)


def null_field(f: PlaneGermJet) -> NullFieldJet:
    if corank_at_origin(f) != 1:
        raise NotApplicable("the canonical null field needs a corank-one germ")
    swapped = not (f.f1.coefficient(1, 0) or f.f1.coefficient(0, 1))
    g1 = f.f2 if swapped else f.f1
    return NullFieldJet(g1.diff("y"), -g1.diff("x"), swapped)


def eta_iterates(lam: Jet2, eta: NullFieldJet, kmax: int) -> list[Jet2]:
    """``[lambda, eta lambda, ..., eta^kmax lambda]`` as jets."""
    out = [lam]
    cur = lam
    for k in range(1, kmax + 1):
        if cur.order < 1:
            raise InsufficientOrder(k + 1, lam.order + 1, f"eta^{k} lambda(0)")
        cur = eta.apply(cur)
        out.append(cur)
    return out


def eta_power_lambda(f: PlaneGermJet, k: int, eta: NullFieldJet | None = None) -> Rat:
    """Value at 0 of ``eta^k lambda``; needs ``order(f) >= k + 1``."""
    if f.order < k + 1:
        raise InsufficientOrder(k + 1, f.order, f"eta^{k} lambda(0)")
    eta = null_field(f) if eta is None else eta
    return eta_iterates(lambda_of(f), eta, k)[k].constant()


def d_lambda(f: PlaneGermJet) -> tuple[Rat, Rat]:
    if f.order < 2:
        raise InsufficientOrder(2, f.order, "d lambda(0)")
    lam = lambda_of(f)
    return (lam.coefficient(1, 0), lam.coefficient(0, 1))


def hessian_of(g: Jet2) -> HessianData:
    if g.order < 2:
        raise InsufficientOrder(2, g.order, "Hessian")
    hxx = 2 * g.coefficient(2, 0)
    hxy = g.coefficient(1, 1)
    hyy = 2 * g.coefficient(0, 2)
    det = hxx * hyy - hxy * hxy
    if det:
        rank = 2
    elif hxx or hxy or hyy:
        rank = 1
    else:
        rank = 0
    return HessianData(((hxx, hxy), (hxy, hyy)), rank, det)


def hessian_lambda(f: PlaneGermJet) -> HessianData:
    if f.order < 3:
        raise InsufficientOrder(3, f.order, "Hessian of lambda")
    return hessian_of(lambda_of(f))


def predicate_vector(f: PlaneGermJet, eta: NullFieldJet | None = None, kmax: int = 6) -> dict:
    """Truth values of every routing predicate computable at this order.

    Used by the invariance tests; values that need more order than ``f``
    carries are omitted rather than guessed.
    """
    eta = null_field(f) if eta is None else eta
    lam = lambda_of(f)
    out: dict[str, object] = {"lambda(0)!=0": bool(lam.constant())}
    if f.order >= 2:
        out["dlambda(0)!=0"] = bool(lam.coefficient(1, 0) or lam.coefficient(0, 1))
    if f.order >= 3:
        hd = hessian_of(lam)
        out["rk H"] = hd.rank
        out["sign det H"] = (hd.det > 0) - (hd.det < 0)
    kmax = min(kmax, f.order - 1)
    vals = eta_iterates(lam, eta, kmax)
    for k in range(1, kmax + 1):
        out[f"eta^{k}lambda(0)!=0"] = vals[k].constant() != ZERO
    return out
