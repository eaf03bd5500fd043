"""The projection calculus E(G) and the inverse semigroup G_E.

A projection ``e0 (1-e1) ... (1-en)`` is stored as its *support*: the set of
idempotents ``f`` whose principal-filter character ``chi_f(e) = [e >= f]``
evaluates the expression to 1. Products are intersections and ``1 - e`` is
complementation, so E(G) becomes the Boolean algebra of subsets of G0.

An element ``g p`` of G_E is the pair ``GE(g, P)`` with ``P`` intersected
with ``supp(g* g)``. The regular representation on ``l^2(G)`` is kept as an
independent oracle for equality and zero tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

import numpy as np

from .errors import NotIdempotent
from .semigroup import FiniteInverseSemigroup

SupportSet = frozenset


class _Zero:
    """The zero of G_E (an algebra zero, not a semigroup element)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "ZERO"


ZERO = _Zero()


@dataclass(frozen=True, order=True)
class GE:
    g: int
    P: frozenset

    def key(self):
        return (self.g, tuple(sorted(self.P)))


GEValue = Union[GE, _Zero]


def _check_idempotent(S, e):
    if not S.is_idempotent(e):
        raise NotIdempotent(f"element {e} is not idempotent", witness=e)


def supp_of_idempotent(S: FiniteInverseSemigroup, e: int) -> frozenset:
    _check_idempotent(S, e)
    return S.downsets[e]


def proj_expr(S: FiniteInverseSemigroup, e0: int, subtract: Iterable[int] = ()) -> frozenset:
    """Support of ``e0 (1-e1) ... (1-en)``."""
    out = set(supp_of_idempotent(S, e0))
    for e in subtract:
        out -= supp_of_idempotent(S, e)
    return frozenset(out)


def source(S, g: int) -> frozenset:
    """``supp(g* g)``."""
    return S.downsets[S.mul(S.inv(g), g)]


def range_(S, g: int) -> frozenset:
    """``supp(g g*)``."""
    return S.downsets[S.mul(g, S.inv(g))]


def conj(S: FiniteInverseSemigroup, g: int, P: frozenset) -> frozenset:
    """Support of ``g p g*``: ``{f <= g g* : g* f g in P}``."""
    gs = S.inv(g)
    return frozenset(f for f in range_(S, g) if S.mul(S.mul(gs, f), g) in P)


def ge(S: FiniteInverseSemigroup, g: int, P: Iterable[int] | None = None) -> GEValue:
    """Normalised G_E value ``g p``; ``P=None`` means ``p = g* g``."""
    src = source(S, g)
    P = src if P is None else frozenset(P) & src
    return GE(g, P) if P else ZERO


def ge_mul(S: FiniteInverseSemigroup, x: GEValue, y: GEValue) -> GEValue:
    """``(g p)(h q) = (gh)(h* p h)q``."""
    if x is ZERO or y is ZERO:
        return ZERO
    gh = S.mul(x.g, y.g)
    P = conj(S, S.inv(y.g), x.P) & y.P & source(S, gh)
    return GE(gh, P) if P else ZERO


def ge_star(S: FiniteInverseSemigroup, x: GEValue) -> GEValue:
    if x is ZERO:
        return ZERO
    return GE(S.inv(x.g), conj(S, x.g, x.P))


def ge_eq(S: FiniteInverseSemigroup, x: GEValue, y: GEValue) -> bool:
    if x is ZERO or y is ZERO:
        return x is y
    return x.P == y.P and all(S.mul(x.g, f) == S.mul(y.g, f) for f in x.P)


def ge_range(S, x: GEValue) -> frozenset:
    """Support of the range projection ``x x*``."""
    return frozenset() if x is ZERO else conj(S, x.g, x.P)


def ge_leq_projection(S, x: GEValue, Q: frozenset) -> bool:
    """``q >= x x*`` for a projection with support ``Q``."""
    return ge_range(S, x) <= Q


def canonical_key(S, x: GEValue):
    """A hashable key equal for ``ge_eq``-equal values.

    The action of ``x`` on the idempotents in its support determines it, so
    the tuple ``(P, g f for f in P)`` is a complete invariant.
    """
    if x is ZERO:
        return None
    fs = tuple(sorted(x.P))
    return (fs, tuple(S.mul(x.g, f) for f in fs))


def regular_rep(S: FiniteInverseSemigroup, x: GEValue) -> np.ndarray:
    """Matrix of ``x`` on ``l^2(G)``: ``delta_h -> [h h* in P] delta_{g h}``."""
    n = S.size
    M = np.zeros((n, n), dtype=np.int64)
    if x is ZERO:
        return M
    for h in range(n):
        if S.mul(h, S.inv(h)) in x.P:
            M[S.mul(x.g, h), h] = 1
    return M


def projection_rep(S, P: frozenset) -> np.ndarray:
    """Diagonal matrix of the projection with support ``P`` on ``l^2(G)``."""
    return np.diag([int(S.mul(h, S.inv(h)) in P) for h in range(S.size)])


def all_ge_values(S: FiniteInverseSemigroup) -> list[GE]:
    """Every nonzero element of G_E up to ``ge_eq``; exponential in ``|G0|``."""
    from itertools import combinations

    seen = {}
    for g in range(S.size):
        src = sorted(source(S, g))
        for k in range(1, len(src) + 1):
            for P in combinations(src, k):
                x = GE(g, frozenset(P))
                seen.setdefault(canonical_key(S, x), x)
    return sorted(seen.values(), key=GE.key)


@lru_cache(maxsize=None)
def _mobius_table(S: FiniteInverseSemigroup) -> dict:
    """Mobius function ``mu(y, f)`` of the poset of idempotents."""
    idem = S.idempotent_list
    down = S.downsets
    mu = {}
    for f in idem:
        below = sorted(down[f], key=lambda y: len(down[y]), reverse=True)
        mu[(f, f)] = 1
        for y in below:
            if y == f:
                continue
            # mu(y, f) = -sum_{y < z <= f} mu(z, f)
            mu[(y, f)] = -sum(mu[(z, f)] for z in down[f]
                              if z != y and y in down[z])
    return mu


def projection_expansion(S: FiniteInverseSemigroup, P: frozenset) -> dict:
    """Integer coefficients ``c`` with ``p = sum_y c[y] * y`` over idempotents.

    Obtained by Mobius inversion of ``[x <= f]`` on the semilattice.
    """
    mu = _mobius_table(S)
    coef: dict[int, int] = {}
    for f in P:
        for y in S.downsets[f]:
            coef[y] = coef.get(y, 0) + mu[(y, f)]
    return {y: c for y, c in sorted(coef.items()) if c}


def ge_expansion(S: FiniteInverseSemigroup, x: GEValue) -> dict:
    """``g p = sum_y c[y] * (g y)`` as a combination of elements of ``G``."""
    if x is ZERO:
        return {}
    out: dict[int, int] = {}
    for y, c in projection_expansion(S, x.P).items():
        gy = S.mul(x.g, y)
        out[gy] = out.get(gy, 0) + c
    return {k: v for k, v in sorted(out.items()) if v}
