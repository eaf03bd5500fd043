"""Finite inverse semigroups given by multiplication tables.

Elements are dense integer indices ``0..n-1``. The involution ``star`` is
always derived from the table, never supplied.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import (BadParams, NoInverse, NonUniqueInverse, NotAssociative,
                     NotIdempotent)


@dataclass(frozen=True, eq=False)
class FiniteInverseSemigroup:
    """A validated finite inverse semigroup.

    Construct through :func:`validate` (or :func:`builtin`), which computes
    ``star`` and rejects tables that are not inverse semigroups.
    """

    mult: np.ndarray
    star: np.ndarray
    labels: tuple = field(default=())

    @property
    def size(self) -> int:
        return len(self.mult)

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def inv(self, a: int) -> int:
        return int(self.star[a])

    def is_idempotent(self, e: int) -> bool:
        return self.mult[e, e] == e

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def to_json(self) -> dict:
        return {"n": self.size, "mult": self.mult.tolist()}

    @cached_property
    def idempotent_list(self) -> tuple:
        return tuple(e for e in range(self.size) if self.is_idempotent(e))

    @cached_property
    def downsets(self) -> dict:
        """``e -> {f idempotent : f <= e}`` for every idempotent ``e``."""
        idem = self.idempotent_list
        return {e: frozenset(f for f in idem if self.mult[f, e] == f) for e in idem}


@dataclass(frozen=True, eq=False)
class SubInverseSemigroup:
    parent: FiniteInverseSemigroup
    members: tuple

    def __contains__(self, g) -> bool:
        return g in self._member_set

    @cached_property
    def _member_set(self):
        return frozenset(self.members)

    def idempotents(self) -> list[int]:
        return [g for g in self.members if self.parent.is_idempotent(g)]


def validate(mult_table, labels: Sequence[str] = ()) -> FiniteInverseSemigroup:
    """Check that ``mult_table`` is an inverse semigroup and derive ``star``.

    Raises NotAssociative, NoInverse or NonUniqueInverse, each carrying a
    witness (triple or element index).
    """
    m = np.asarray(mult_table, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise BadParams("multiplication table must be a nonempty square array")
    n = m.shape[0]
    if m.min() < 0 or m.max() >= n:
        raise BadParams("table entries out of range")

    # (ab)c vs a(bc) for all triples, vectorised
    left = m[m[:, :, None], np.arange(n)[None, None, :]]
    right = m[np.arange(n)[:, None, None], m[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", witness=(a, b, c))

    star = np.empty(n, dtype=np.int64)
    for g in range(n):
        cands = [h for h in range(n)
                 if m[m[g, h], g] == g and m[m[h, g], h] == h]
        if not cands:
            raise NoInverse(f"element {g} has no generalized inverse", witness=g)
        if len(cands) > 1:
            raise NonUniqueInverse(f"element {g} has inverses {cands}", witness=g)
        star[g] = cands[0]
    star.setflags(write=False)
    m.setflags(write=False)
    return FiniteInverseSemigroup(m, star, tuple(labels))


def is_inverse_by_idempotents(mult_table) -> bool:
    """Regular with commuting idempotents. Must agree with :func:`validate`."""
    m = np.asarray(mult_table)
    n = len(m)
    for g in range(n):
        if not any(m[m[g, h], g] == g for h in range(n)):
            return False
    idem = [e for e in range(n) if m[e, e] == e]
    return all(m[e, f] == m[f, e] for e, f in combinations(idem, 2))


def idempotents(S: FiniteInverseSemigroup) -> list[int]:
    return [e for e in range(S.size) if S.is_idempotent(e)]


def natural_leq(S: FiniteInverseSemigroup, e: int, f: int) -> bool:
    """``e <= f`` in the semilattice of idempotents, i.e. ``ef = e``."""
    for x in (e, f):
        if not S.is_idempotent(x):
            raise NotIdempotent(f"element {x} is not idempotent", witness=x)
    return S.mul(e, f) == e


def sub_closure(S: FiniteInverseSemigroup, generators: Iterable[int]) -> SubInverseSemigroup:
    members = set()
    frontier = set()
    for g in generators:
        if not 0 <= g < S.size:
            raise BadParams(f"generator {g} out of range")
        frontier.update((g, S.inv(g)))
    while frontier:
        members |= frontier
        new = set()
        for a in members:
            for b in members:
                c = S.mul(a, b)
                if c not in members:
                    new.add(c)
                    new.add(S.inv(c))
        frontier = new - members
    if not members:
        raise BadParams("empty generating set")
    return SubInverseSemigroup(S, tuple(sorted(members)))


def whole(S: FiniteInverseSemigroup) -> SubInverseSemigroup:
    return SubInverseSemigroup(S, tuple(range(S.size)))


# -- builtin families ---------------------------------------------------------

def partial_injections(n: int) -> list[tuple]:
    """All partial injections of ``{0..n-1}`` as image tuples (``-1`` = undefined).

    Ordered by decreasing rank, then lexicographically; the identity comes
    first and the empty map last.
    """
    maps = []
    for k in range(n, -1, -1):
        block = []
        for dom in combinations(range(n), k):
            for img in permutations(range(n), k):
                t = [-1] * n
                for x, y in zip(dom, img):
                    t[x] = y
                block.append(tuple(t))
        maps.extend(sorted(block))
    return maps


def _compose(g: tuple, h: tuple) -> tuple:
    # (g h)(x) = g(h(x))
    return tuple(-1 if h[x] < 0 else g[h[x]] for x in range(len(h)))


def _pinj_label(t: tuple) -> str:
    pairs = [f"{x}>{y}" for x, y in enumerate(t) if y >= 0]
    return "{" + ",".join(pairs) + "}"


def symmetric_inverse_monoid(n: int) -> FiniteInverseSemigroup:
    if n < 0:
        raise BadParams("n must be nonnegative")
    maps = partial_injections(n)
    index = {t: i for i, t in enumerate(maps)}
    table = [[index[_compose(g, h)] for h in maps] for g in maps]
    S = validate(table, labels=[_pinj_label(t) for t in maps])
    object.__setattr__(S, "_maps", maps)
    return S


def pinj_maps(S: FiniteInverseSemigroup) -> list[tuple]:
    """The partial injections behind a symmetric inverse monoid."""
    return S._maps


def group(mult_table) -> FiniteInverseSemigroup:
    S = validate(mult_table)
    if len(idempotents(S)) != 1:
        raise BadParams("a group table has exactly one idempotent")
    return S


def cyclic_group(n: int) -> FiniteInverseSemigroup:
    if n < 1:
        raise BadParams("n must be positive")
    return validate([[(i + j) % n for j in range(n)] for i in range(n)])


def semilattice(meet_table) -> FiniteInverseSemigroup:
    S = validate(meet_table)
    m = S.mult
    if not all(S.is_idempotent(e) for e in range(S.size)) or not (m == m.T).all():
        raise BadParams("meet table must be commutative and idempotent")
    return S


def chain(n: int) -> FiniteInverseSemigroup:
    """The ``n``-element chain ``0 < 1 < ... < n-1`` under meet."""
    return semilattice([[min(i, j) for j in range(n)] for i in range(n)])


def brandt(n: int, group_table) -> FiniteInverseSemigroup:
    """Brandt semigroup ``B(K, n)``: triples ``(i, k, j)`` plus a zero (last index)."""
    K = group(group_table)
    if n < 1:
        raise BadParams("n must be positive")
    triples = list(product(range(n), range(K.size), range(n)))
    index = {t: i for i, t in enumerate(triples)}
    zero = len(triples)
    table = []
    for (i, a, j) in triples:
        row = []
        for (k, b, l) in triples:
            row.append(index[(i, K.mul(a, b), l)] if j == k else zero)
        row.append(zero)
        table.append(row)
    table.append([zero] * (zero + 1))
    labels = [f"({i},{a},{j})" for (i, a, j) in triples] + ["0"]
    return validate(table, labels=labels)


FAMILIES = {
    "symmetric_inverse_monoid": symmetric_inverse_monoid,
    "group": group,
    "cyclic_group": cyclic_group,
    "semilattice": semilattice,
    "chain": chain,
    "brandt": brandt,
}


def builtin(name: str, *params) -> FiniteInverseSemigroup:
    try:
        family = FAMILIES[name]
    except KeyError:
        raise BadParams(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    try:
        return family(*params)
    except TypeError as exc:
        raise BadParams(f"bad parameters for {name}: {exc}")
