"""Exact univariate polynomials over Q: Sturm root isolation and rational fitting.

Polynomials are lists of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from typing import Callable, Sequence

from .rational import ZERO, Rat, rat, sign

Poly = list


def trim(p: Sequence) -> Poly:
    q = [rat(c) for c in p]
    while q and not q[-1]:
        q.pop()
    return q


def degree(p: Poly) -> int:
    return len(p) - 1


def evaluate(p: Poly, x) -> Rat:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return trim([k * c for k, c in enumerate(p)][1:])


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        t = a[-1] / lead
        q[k] = t
        for i, c in enumerate(b):
            a[i + k] -= t * c
        a = trim(a)
    return trim(q), a


def monic(p: Poly) -> Poly:
    return [c / p[-1] for c in p] if p else []


def gcd(a: Poly, b: Poly) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def square_free(p: Poly) -> Poly:
    """p / gcd(p, p'), monic."""
    p = trim(p)
    if degree(p) < 1:
        return monic(p)
    g = gcd(p, derivative(p))
    return monic(divmod_poly(p, g)[0])


def primitive_integer(p: Poly) -> list[int]:
    """Scale p to coprime integer coefficients with positive leading term."""
    from math import gcd as igcd, lcm

    p = trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        den = lcm(den, int(c.denominator))
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = igcd(g, c)
    s = 1 if ints[-1] > 0 else -1
    return [s * c // g for c in ints]


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _variations(seq: list[Poly], x) -> int:
    signs = [sign(evaluate(s, x)) for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: list[Poly], lo, hi) -> int:
    """Number of distinct real roots in (lo, hi]."""
    return _variations(seq, lo) - _variations(seq, hi)


def root_bound(p: Poly) -> Rat:
    """Cauchy bound: every real root has |x| < bound."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=ZERO)


def isolate_real_roots(p: Poly, width=None) -> list[tuple[Rat, Rat]]:
    """Disjoint intervals each holding exactly one real root of ``p``.

    An interval ``(r, r)`` is an exact rational root; otherwise the root
    lies strictly inside ``(lo, hi)`` and neither endpoint is a root.
    Intervals are refined until narrower than ``width`` when given.
    """
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has no isolated roots")
    if degree(p) == 0:
        return []
    q = square_free(p)
    seq = sturm_sequence(q)
    b = root_bound(q)
    out: list[tuple[Rat, Rat]] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if not evaluate(q, hi):
            out.append((hi, hi))
            n -= 1
            if n == 0:
                continue
        elif n == 1 and evaluate(q, lo):
            out.append((lo, hi))
            continue
        # split; a root at hi is found again on the right and deduplicated
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    out = sorted(set(out))
    out = [_snap_rational(q, iv) for iv in out]
    if width is not None:
        out = [refine(q, iv, rat(width)) for iv in out]
    return out


def _snap_rational(p: Poly, interval: tuple[Rat, Rat]) -> tuple[Rat, Rat]:
    """Collapse an interval to its root when that root is rational.

    A rational root has the form k / lead for an integer k once ``p`` has
    integer coefficients, so an interval narrower than 1 / |lead| holds at
    most one candidate.
    """
    lo, hi = interval
    if lo == hi:
        return interval
    ints = primitive_integer(p)
    lead = abs(ints[-1])
    lo, hi = refine(p, interval, rat(1) / (2 * lead))
    if lo == hi:
        return (lo, hi)
    k = -((-lo.numerator * lead) // lo.denominator)  # ceil(lo * lead)
    cand = rat(k) / lead
    if lo < cand < hi and not evaluate(p, cand):
        return (cand, cand)
    return (lo, hi)


def refine(p: Poly, interval: tuple[Rat, Rat], width) -> tuple[Rat, Rat]:
    lo, hi = interval
    if lo == hi:
        return interval
    slo = sign(evaluate(p, lo))
    while hi - lo >= width:
        mid = (lo + hi) / 2
        s = sign(evaluate(p, mid))
        if s == 0:
            return (mid, mid)
        if s == slo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


# -- exact rational reconstruction ----------------------------------------------------------

def _nullspace_vector(rows: list[list[Rat]], ncols: int) -> list[Rat] | None:
    """A nonzero kernel vector if the kernel is exactly one-dimensional."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    v = [ZERO] * ncols
    v[fc] = rat(1)
    for i, c in enumerate(pivots):
        v[c] = -m[i][fc]
    return v


def fit_rational_function(
    points: Sequence[tuple[Rat, Rat]], max_degree: int, spare: int = 3
) -> tuple[Poly, Poly] | None:
    """Smallest-degree P/Q through all ``points`` with deg P + deg Q <= max_degree.

    Every fit is checked on all points, and at least ``spare`` points beyond
    the number of unknowns are required, so a returned fit is
    overdetermined.  Returns ``(P, Q)`` in lowest terms with Q monic.
    """
    pts = [(rat(x), rat(y)) for x, y in points]
    for total in range(max_degree + 1):
        if total + 2 + spare > len(pts):
            break
        for m in range(total + 1):
            n = total - m
            rows = []
            for x, y in pts:
                xp = [x ** k for k in range(max(n, m) + 1)]
                rows.append(xp[: n + 1] + [-y * xp[k] for k in range(m + 1)])
            v = _nullspace_vector(rows, n + m + 2)
            if v is None:
                continue
            P, Q = trim(v[: n + 1]), trim(v[n + 1:])
            if not Q or any(not evaluate(Q, x) for x, _ in pts):
                continue
            g = gcd(P, Q) if P else [rat(1)]
            if degree(g) > 0:
                P, Q = divmod_poly(P, g)[0], divmod_poly(Q, g)[0]
            lead = Q[-1]
            return [c / lead for c in P], [c / lead for c in Q]
    return None


def sample_and_fit(
    func: Callable[[Rat], Rat], nodes: Sequence[Rat], max_degree: int, spare: int = 3
) -> tuple[Poly, Poly] | None:
    return fit_rational_function([(u, func(u)) for u in nodes], max_degree, spare)
