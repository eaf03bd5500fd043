"""Unit atoms of E(H'), the groupoid H, the set G_H and the quotient G_H/H."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import NotEquivalence, RangeNotAtom
from .projections import (GE, ZERO, canonical_key, ge, ge_mul, ge_range,
                          ge_star, source)
from .semigroup import FiniteInverseSemigroup, SubInverseSemigroup


@dataclass(frozen=True)
class AtomSet:
    """One atom (minimal nonzero projection of E(H')) per idempotent of H'."""

    idempotents: tuple
    supports: tuple

    def index(self, P) -> int | None:
        try:
            return self.supports.index(P)
        except ValueError:
            return None

    def __len__(self):
        return len(self.supports)

    def union(self) -> frozenset:
        return frozenset().union(*self.supports)


def unit_atoms(G: FiniteInverseSemigroup, Hp: SubInverseSemigroup) -> AtomSet:
    idem = sorted(Hp.idempotents())
    down = G.downsets
    supports = []
    for e in idem:
        P = set(down[e])
        for e2 in idem:
            if e2 != e and e2 in down[e]:
                P -= down[e2]
        if not P:
            raise AssertionError(f"empty atom below idempotent {e}")
        supports.append(frozenset(P))
    return AtomSet(tuple(idem), tuple(supports))


class _Lookup:
    """Index of G_E values up to ``ge_eq``."""

    def __init__(self, G, values):
        self.G = G
        self.values = list(values)
        self._idx = {canonical_key(G, v): i for i, v in enumerate(self.values)}

    def find(self, x) -> int | None:
        if x is ZERO:
            return None
        return self._idx.get(canonical_key(self.G, x))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _dedupe(G, pairs):
    """Keep the lexicographically least ``(g, atom index)`` of each value."""
    seen = {}
    for key, x in sorted(pairs, key=lambda p: p[0]):
        seen.setdefault(canonical_key(G, x), (key, x))
    return [x for key, x in sorted(seen.values(), key=lambda p: p[0])]


@dataclass(eq=False)
class GroupoidH:
    G: FiniteInverseSemigroup
    atoms: AtomSet
    elements: list
    source: list
    range: list
    raw_pairs: int = 0

    @cached_property
    def lookup(self) -> _Lookup:
        return _Lookup(self.G, self.elements)

    def find(self, x):
        return self.lookup.find(x)

    @cached_property
    def units(self) -> list[int]:
        return [self.find(ge(self.G, e, P)) for e, P in
                zip(self.atoms.idempotents, self.atoms.supports)]

    def compose(self, i: int, j: int) -> int | None:
        if self.source[i] != self.range[j]:
            return None
        return self.find(ge_mul(self.G, self.elements[i], self.elements[j]))

    def inverse(self, i: int) -> int:
        return self.find(ge_star(self.G, self.elements[i]))

    def __len__(self):
        return len(self.elements)


def build_groupoid(G: FiniteInverseSemigroup, Hp: SubInverseSemigroup,
                   atoms: AtomSet | None = None) -> GroupoidH:
    atoms = atoms or unit_atoms(G, Hp)
    pairs = []
    for t in Hp.members:
        for a, P in enumerate(atoms.supports):
            x = ge(G, t, P)
            if x is not ZERO:
                pairs.append(((t, a), x))
    elements = _dedupe(G, pairs)
    src, rng = [], []
    for x in elements:
        s = atoms.index(x.P)
        r = atoms.index(ge_range(G, x))
        if s is None or r is None:
            raise RangeNotAtom(f"{x} does not run between atoms", witness=(x.g, sorted(x.P)))
        src.append(s)
        rng.append(r)
    return GroupoidH(G, atoms, elements, src, rng, raw_pairs=len(pairs))


def gh_pairs(G: FiniteInverseSemigroup, atoms: AtomSet) -> list:
    """All defining pairs ``(g, atom)`` with ``g* g >= atom`` before deduplication."""
    return [(g, a) for g in range(G.size) for a, P in enumerate(atoms.supports)
            if P <= source(G, g)]


def build_GH(G: FiniteInverseSemigroup, Hp: SubInverseSemigroup,
             atoms: AtomSet | None = None) -> list[GE]:
    """Nonzero ``g e`` with ``e`` an atom below ``g* g``, one per distinct value."""
    atoms = atoms or unit_atoms(G, Hp)
    pairs = [((g, a), GE(g, atoms.supports[a])) for g, a in gh_pairs(G, atoms)]
    return _dedupe(G, pairs)


@dataclass(eq=False)
class CosetSpace:
    G: FiniteInverseSemigroup
    atoms: AtomSet
    H: GroupoidH
    gh: _Lookup
    classes: list
    class_of: list
    reps: list
    raw_pairs: int

    @property
    def gh_size(self) -> int:
        return len(self.gh)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def find(self, x) -> int | None:
        return self.gh.find(x)

    def atom_of(self, i: int) -> int:
        return self.atoms.index(self.gh[i].P)

    def rep(self, c: int) -> GE:
        return self.gh[self.reps[c]]

    def in_gh_after(self, s: int, x: GE) -> bool:
        """``s x in G_H`` via the criterion ``s* s >= x x*``."""
        return ge_range(self.G, x) <= source(self.G, s)

    def left(self, s: int, i: int) -> int | None:
        """Index of ``s h`` for ``h = gh[i]`` when it lies in G_H, else ``None``."""
        x = self.gh[i]
        if not self.in_gh_after(s, x):
            return None
        j = self.find(ge_mul(self.G, ge(self.G, s), x))
        if j is None:
            raise AssertionError("criterion passed but product left G_H")
        return j

    def act(self, g: int, c: int) -> int | None:
        j = self.left(g, self.reps[c])
        return None if j is None else self.class_of[j]

    def act_by_product(self, g: int, c: int) -> int | None:
        """Cross-check of :meth:`act` using only ``ge_mul`` and membership."""
        j = self.find(ge_mul(self.G, ge(self.G, g), self.rep(c)))
        return None if j is None else self.class_of[j]

    def equiv(self, i: int, j: int) -> bool:
        return self.class_of[i] == self.class_of[j]

    def to_json(self) -> dict:
        G = self.G
        action = []
        for g in range(G.size):
            for c in range(self.n_classes):
                d = self.act(g, c)
                if d is not None:
                    action.append([g, c, d])
        return {
            "atoms": [sorted(P) for P in self.atoms.supports],
            "groupoid": {
                "elements": [[x.g, sorted(x.P)] for x in self.H.elements],
                "source": list(self.H.source),
                "range": list(self.H.range),
            },
            "gh_size": self.gh_size,
            "gh_pairs": self.raw_pairs,
            "gh": [[x.g, sorted(x.P)] for x in self.gh],
            "classes": [list(c) for c in self.classes],
            "reps": list(self.reps),
            "action": action,
        }

    def to_dot(self) -> str:
        lines = ["digraph cosets {"]
        for c in range(self.n_classes):
            x = self.rep(c)
            lines.append(f'  c{c} [label="{self.G.label(x.g)}|{sorted(x.P)}"];')
        for g in range(self.G.size):
            for c in range(self.n_classes):
                d = self.act(g, c)
                if d is not None and not (d == c and self.G.is_idempotent(g)):
                    lines.append(f'  c{c} -> c{d} [label="{self.G.label(g)}"];')
        lines.append("}")
        return "\n".join(lines)


def quotient(G: FiniteInverseSemigroup, GH: list, H: GroupoidH) -> CosetSpace:
    look = _Lookup(G, GH)
    n = len(look)
    rel = [[False] * n for _ in range(n)]
    for i, x in enumerate(look):
        for t in H.elements:
            j = look.find(ge_mul(G, x, t))
            if j is not None:
                rel[i][j] = True
    for i in range(n):
        if not rel[i][i]:
            raise NotEquivalence(f"relation not reflexive at {i}", witness=(i,))
        for j in range(n):
            if rel[i][j] and not rel[j][i]:
                raise NotEquivalence(f"relation not symmetric at {i},{j}", witness=(i, j))
            if rel[i][j]:
                for k in range(n):
                    if rel[j][k] and not rel[i][k]:
                        raise NotEquivalence("relation not transitive", witness=(i, j, k))
    class_of = [-1] * n
    classes = []
    for i in range(n):
        if class_of[i] < 0:
            members = [j for j in range(n) if rel[i][j]]
            for j in members:
                class_of[j] = len(classes)
            classes.append(members)
    atoms = H.atoms
    reps = [min(c, key=lambda i: (look[i].g, atoms.index(look[i].P))) for c in classes]
    return CosetSpace(G, atoms, H, look, classes, class_of, reps, raw_pairs=0)


def coset_space(G: FiniteInverseSemigroup, Hp: SubInverseSemigroup) -> CosetSpace:
    """Atoms, groupoid, G_H and the quotient in one call."""
    atoms = unit_atoms(G, Hp)
    H = build_groupoid(G, Hp, atoms)
    GH = build_GH(G, Hp, atoms)
    cs = quotient(G, GH, H)
    cs.raw_pairs = len(gh_pairs(G, atoms))
    return cs
