"""G-algebras, their extension to G_E, algebraic crossed products over
standard elements, Sieben quotients and groupoid crossed products."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import algebra as alg_mod
from .algebra import FDStarAlgebra, blocks, ideal_closure, orth, quotient, radical
from .cosets import GroupoidH, _Lookup, build_groupoid, unit_atoms
from .errors import (CentralityAxiomFails, IndexNotClosed, NotHomomorphism,
                     NotStarEndo)
from .projections import (ZERO, ge, ge_mul, ge_star, projection_expansion,
                          regular_rep)
from .semigroup import FiniteInverseSemigroup, SubInverseSemigroup, whole


@dataclass(eq=False)
class GAlgebra:
    """A C*-model ``alg`` with a semigroup action of ``acting`` (G or H')."""

    G: FiniteInverseSemigroup
    alg: FDStarAlgebra
    action: dict
    acting: SubInverseSemigroup
    name: str = ""

    @property
    def dim(self) -> int:
        return self.alg.dim

    def alpha(self, g: int) -> np.ndarray:
        return self.action[g]

    @cached_property
    def atoms(self):
        return unit_atoms(self.G, self.acting)

    @cached_property
    def atom_projections(self) -> list:
        """``q_m = alpha_m prod_{e < m} (1 - alpha_e)`` for each atom."""
        idem = self.atoms.idempotents
        down = self.G.downsets
        eye = np.eye(self.dim)
        out = []
        for m in idem:
            q = self.action[m].astype(complex)
            for e in idem:
                if e != m and e in down[m]:
                    q = q @ (eye - self.action[e])
            out.append(q)
        return out

    def proj(self, P: frozenset) -> np.ndarray:
        """``alpha_p`` for the projection with support ``P``."""
        q = np.zeros((self.dim, self.dim), dtype=complex)
        covered = set()
        for Q, qm in zip(self.atoms.supports, self.atom_projections):
            if Q <= P:
                q = q + qm
                covered |= Q
            elif Q & P:
                raise ValueError(f"support {sorted(P)} splits an atom of the acting semigroup")
        return q

    def ext(self, x) -> np.ndarray:
        """Extended action ``alpha_{g p} = alpha_g alpha_p`` on G_E values."""
        if x is ZERO:
            return np.zeros((self.dim, self.dim), dtype=complex)
        return self.action[x.g] @ self.proj(x.P)

    def ext_mobius(self, x) -> np.ndarray:
        """``alpha_{g p}`` through the Mobius expansion of ``p`` (G-algebras only)."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        if x is ZERO:
            return out
        for y, c in projection_expansion(self.G, x.P).items():
            out = out + c * self.action[self.G.mul(x.g, y)]
        return out

    def restrict(self, Hp: SubInverseSemigroup) -> "GAlgebra":
        return GAlgebra(self.G, self.alg, {t: self.action[t] for t in Hp.members}, Hp,
                        name=self.name)


def validate_g_algebra(G: FiniteInverseSemigroup, alg: FDStarAlgebra, action,
                       acting: SubInverseSemigroup | None = None, tol: float = 1e-10,
                       name: str = "") -> GAlgebra:
    acting = acting or whole(G)
    d = alg.dim
    action = {g: np.asarray(action[g], dtype=complex).reshape(d, d) for g in acting.members}
    c = alg.structure
    for g in acting.members:
        a = action[g]
        if d and np.abs(a @ alg.invol - alg.invol @ np.conj(a)).max() > tol:
            raise NotStarEndo(f"alpha_{g} does not commute with *", witness=g)
        # alpha(b_i b_j) = alpha(b_i) alpha(b_j)
        if d:
            lhs = np.einsum("ijm,km->ijk", c, a)
            rhs = np.einsum("pi,qj,pqk->ijk", a, a, c, optimize=True)
            if np.abs(lhs - rhs).max() > tol:
                raise NotStarEndo(f"alpha_{g} is not multiplicative", witness=g)
    for g in acting.members:
        for h in acting.members:
            if np.abs(action[G.mul(g, h)] - action[g] @ action[h]).max(initial=0) > tol:
                raise NotHomomorphism(f"alpha_{g} alpha_{h} != alpha_{g}{h}", witness=(g, h))
    for g in acting.members:
        e = action[G.mul(g, G.inv(g))]
        if not d:
            continue
        # e(b_i) b_j vs b_i e(b_j)
        lhs = np.einsum("pi,pjk->ijk", e, c)
        rhs = np.einsum("qj,iqk->ijk", e, c)
        bad = np.argwhere(np.abs(lhs - rhs).max(axis=2) > tol)
        if len(bad):
            i, j = (int(v) for v in bad[0])
            raise CentralityAxiomFails(f"gg*(a) b != a gg*(b) for g={g}", witness=(g, i, j))
    return GAlgebra(G, alg, action, acting, name=name)


def pinj_action(G: FiniteInverseSemigroup) -> dict:
    """Permutation action of a symmetric inverse monoid on ``C^n``.

    ``alpha_g(a)_i = a_{g^{-1}(i)}`` for ``i`` in the range of ``g``, else 0.
    """
    from .semigroup import pinj_maps

    maps = pinj_maps(G)
    n = len(maps[0])
    out = {}
    for idx, t in enumerate(maps):
        m = np.zeros((n, n))
        for x, y in enumerate(t):
            if y >= 0:
                m[y, x] = 1
        out[idx] = m
    return out


def trivial_action(G: FiniteInverseSemigroup, dim: int, members=None) -> dict:
    members = range(G.size) if members is None else members
    return {g: np.eye(dim) for g in members}


# -- crossed products ---------------------------------------------------------

class StandardSpan:
    """Span of standard elements ``a x s`` with ``a`` in ``A_{s s*}``.

    Elements are dicts ``{index position: coefficient vector in A}``;
    coefficients are normalised by ``a -> alpha_{s s*}(a)``.
    """

    def __init__(self, ga: GAlgebra, index, name: str = ""):
        self.ga = ga
        self.G = ga.G
        self.index = index if isinstance(index, _Lookup) else _Lookup(ga.G, index)
        self.name = name
        G = self.G
        self.alpha = [ga.ext(s) for s in self.index]
        self.rproj = [ga.ext(ge_mul(G, s, ge_star(G, s))) for s in self.index]
        self.bases = [orth(p) for p in self.rproj]
        self.offsets = np.cumsum([0] + [b.shape[1] for b in self.bases])

    @property
    def dim(self) -> int:
        return int(self.offsets[-1])

    def block(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i + 1])

    def coords(self, x: dict) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        for i, a in x.items():
            v[self.block(i)] += self.bases[i].conj().T @ (self.rproj[i] @ a)
        return v

    def element(self, v) -> dict:
        return {i: self.bases[i] @ v[self.block(i)] for i in range(len(self.index))
                if self.bases[i].shape[1]}

    def standard(self, i: int, a) -> dict:
        return {i: self.rproj[i] @ np.asarray(a, dtype=complex)}

    def basis_family(self) -> list:
        """The standard elements ``(index position, coefficient)`` behind the basis."""
        return [(i, self.bases[i][:, p]) for i in range(len(self.index))
                for p in range(self.bases[i].shape[1])]

    def random(self, rng, density: float = 0.6) -> dict:
        out = {}
        for i in range(len(self.index)):
            r = self.bases[i].shape[1]
            if r and rng.random() < density:
                out[i] = self.bases[i] @ (rng.standard_normal(r) + 1j * rng.standard_normal(r))
        return out


class CrossedProduct(StandardSpan):
    """``span{a x s : s in index, a in A_{s s*}}`` with the product
    ``(a x s)(b x t) = a s(b) x st`` and ``(b x t)* = t*(b*) x t*``.
    """

    def __init__(self, ga: GAlgebra, index, name: str = "", check_closed: bool = True):
        super().__init__(ga, index, name=name)
        if check_closed:
            self._check_closed()

    def _check_closed(self):
        n = len(self.index)
        for i in range(n):
            if self.index_star(i) is None:
                raise IndexNotClosed("index set not closed under star", witness=(i,))
            for j in range(n):
                if self.index_mul(i, j) is False:
                    raise IndexNotClosed("index set not closed under products", witness=(i, j))

    def index_mul(self, i: int, j: int):
        """Position of ``s_i s_j``; ``None`` for Zero, ``False`` if outside the index."""
        x = ge_mul(self.G, self.index[i], self.index[j])
        if x is ZERO:
            return None
        k = self.index.find(x)
        return False if k is None else k

    def index_star(self, i: int):
        return self.index.find(ge_star(self.G, self.index[i]))

    def mul(self, x: dict, y: dict) -> dict:
        A = self.ga.alg
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                k = self.index_mul(i, j)
                if k is None:
                    continue
                if k is False:
                    raise IndexNotClosed("product left the index set", witness=(i, j))
                c = self.rproj[k] @ A.mul(a, self.alpha[i] @ b)
                out[k] = out[k] + c if k in out else c
        return out

    def star(self, x: dict) -> dict:
        A = self.ga.alg
        out: dict = {}
        for i, b in x.items():
            k = self.index_star(i)
            c = self.rproj[k] @ (self.alpha[k] @ A.star(b))
            out[k] = out[k] + c if k in out else c
        return out

    # -- structure constants -------------------------------------------------

    @cached_property
    def algebra(self) -> FDStarAlgebra:
        A = self.ga.alg
        n, d = len(self.index), self.dim
        c = np.zeros((d, d, d), dtype=complex)
        J = np.zeros((d, d), dtype=complex)
        for i in range(n):
            Ui = self.bases[i]
            if not Ui.shape[1]:
                continue
            for j in range(n):
                Uj = self.bases[j]
                if not Uj.shape[1]:
                    continue
                k = self.index_mul(i, j)
                if k is None:
                    continue
                if k is False:
                    raise IndexNotClosed("product left the index set", witness=(i, j))
                prods = np.einsum("abm,ap,bq->pqm", A.structure, Ui, self.alpha[i] @ Uj, optimize=True)
                prods = prods @ self.rproj[k].T
                c[self.block(i), self.block(j), self.block(k)] += prods @ self.bases[k].conj()
            k = self.index_star(i)
            imgs = self.rproj[k] @ self.alpha[k] @ (A.invol @ np.conj(Ui))
            J[self.block(k), self.block(i)] += self.bases[k].conj().T @ imgs
        return FDStarAlgebra(c, J, name=self.name)


class GroupoidCrossedProduct(CrossedProduct):
    """``A x H``: products only along composable arrows of the groupoid."""

    def __init__(self, ga: GAlgebra, H: GroupoidH, name: str = ""):
        self.H = H
        super().__init__(ga, H.lookup, name=name, check_closed=False)

    def index_mul(self, i, j):
        return self.H.compose(i, j)

    def index_star(self, i):
        return self.H.inverse(i)


def build_acp(ga: GAlgebra, S, name: str = "") -> CrossedProduct:
    return CrossedProduct(ga, S, name=name)


def members_as_ge(G: FiniteInverseSemigroup, members) -> list:
    return [ge(G, g) for g in members]


def groupoid_cp(ga: GAlgebra, H: GroupoidH, name: str = "") -> GroupoidCrossedProduct:
    return GroupoidCrossedProduct(ga, H, name=name)


def independence_check(cp: CrossedProduct, family=None, tol: float = 1e-10) -> bool:
    """Linear independence of standard elements in the regular model.

    ``a x s`` is sent to ``regular_rep(s) (x) a``; a family of standard
    elements is independent iff these tensors have full rank.
    """
    family = cp.basis_family() if family is None else family
    if not family:
        return True
    vecs = []
    for i, a in family:
        R = regular_rep(cp.G, cp.index[i]).reshape(-1)
        vecs.append(np.kron(R, cp.rproj[i] @ np.asarray(a, dtype=complex)))
    M = np.stack(vecs, axis=1)
    return alg_mod.rank(M, tol) == len(family)


@dataclass(eq=False)
class SiebenQuotient:
    cp: CrossedProduct
    algebra: FDStarAlgebra
    Q: np.ndarray
    relation_dim: int
    ideal_dim: int
    generators: tuple = field(default=())

    def project(self, x: dict) -> np.ndarray:
        """Coordinates in the quotient of a crossed-product element."""
        return self.Q.conj().T @ self.cp.coords(x)

    def project_vec(self, v) -> np.ndarray:
        return self.Q.conj().T @ v


def sieben_relations(cp: CrossedProduct, generators=None) -> np.ndarray:
    """Columns ``e(a) x s - a x es`` for idempotents ``e`` and basis ``a``."""
    G = cp.G
    if generators is None:
        generators = sorted({s.g for s in cp.index
                             if G.is_idempotent(s.g) and s.P == G.downsets[s.g]})
    d = cp.ga.dim
    cols = []
    for e in generators:
        E = ge(G, e)
        ae = cp.ga.alpha(e)
        for i, s in enumerate(cp.index):
            k = cp.index.find(ge_mul(G, E, s))
            x = ge_mul(G, E, s)
            if x is not ZERO and k is None:
                raise IndexNotClosed(f"e s outside the index for e={e}", witness=(e, i))
            for p in range(d):
                a = np.zeros(d, dtype=complex)
                a[p] = 1
                rel = {i: cp.rproj[i] @ (ae @ a)}
                if k is not None:
                    rel[k] = rel.get(k, 0) - cp.rproj[k] @ a
                cols.append(cp.coords(rel))
    if not cols:
        return np.zeros((cp.dim, 0), dtype=complex)
    return np.stack(cols, axis=1)


def sieben_quotient(cp: CrossedProduct, generators=None, name: str = "") -> SiebenQuotient:
    R = sieben_relations(cp, generators)
    rel = orth(R)
    ideal = ideal_closure(cp.algebra, rel) if rel.shape[1] else rel
    Qalg, Q = quotient(cp.algebra, ideal, name=name or cp.name)
    return SiebenQuotient(cp, Qalg, Q, rel.shape[1], ideal.shape[1],
                          tuple(generators) if generators is not None else ())


def carrier_projection(ga: GAlgebra, Hp: SubInverseSemigroup) -> np.ndarray:
    """``alpha_p`` for ``p`` the sum of the unit atoms of H'."""
    atoms = unit_atoms(ga.G, Hp)
    return ga.proj(atoms.union())


def crosscheck_thm72(ga: GAlgebra, Hp: SubInverseSemigroup, seed: int = alg_mod.DEFAULT_SEED) -> dict:
    """Sieben quotient of ``A x_alg H'`` against the groupoid crossed product ``A x H``."""
    G = ga.G
    gaH = ga if ga.acting.members == Hp.members else ga.restrict(Hp)
    acp = build_acp(gaH, members_as_ge(G, Hp.members), name="A x_alg H'")
    sq = sieben_quotient(acp, generators=Hp.idempotents())
    H = build_groupoid(G, Hp)
    gcp = groupoid_cp(gaH, H, name="A x H")
    b1 = blocks(sq.algebra, seed)
    b2 = blocks(gcp.algebra, seed)
    return {
        "sieben_dim": sq.algebra.dim,
        "groupoid_dim": gcp.dim,
        "sieben_blocks": b1.to_json(),
        "groupoid_blocks": b2.to_json(),
        "sieben_radical_dim": int(radical(sq.algebra).shape[1]),
        "groupoid_radical_dim": int(radical(gcp.algebra).shape[1]),
        "carrier_dim": alg_mod.rank(carrier_projection(ga, Hp)),
        "ok": sq.algebra.dim == gcp.dim and b1.blocks == b2.blocks and b1.radical_dim == 0,
    }
