"""Induced algebras ``Ind_{H'}^G(D)`` and the Morita equivalence
``Ind(D) x^ G ~ D x^ H'``.

Sections ``f: G_H -> D`` are vectors of length ``|G_H| * dim D`` with blocks
ordered like ``CosetSpace.gh``. A section is fixed by its value at a class
representative ``g``; that value lies in the image of the source atom and is
fixed by the stabilizer ``{t in H : g t = g}``. The other values follow from
``f(g t) = t*(f(g))``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as alg_mod
from .algebra import blocks, orth, rank
from .bimodule import Imprimitivity
from .cosets import CosetSpace, coset_space
from .crossed import (CrossedProduct, GAlgebra, build_acp, members_as_ge,
                      sieben_quotient, validate_g_algebra)
from .errors import StabilizerInconsistent
from .projections import ge_mul, ge_star
from .semigroup import SubInverseSemigroup

EQ_TOL = 1e-12


@dataclass(eq=False)
class InducedAlgebra:
    D: GAlgebra
    Hp: SubInverseSemigroup
    cs: CosetSpace
    ga: GAlgebra          # Ind as a G-algebra
    Q: np.ndarray         # Ind coordinates -> section vectors
    class_basis: list     # per class, the section vectors spanning it
    stabilizers: list     # per class, indices into cs.H

    @property
    def dim(self) -> int:
        return self.ga.dim

    def section(self, v) -> np.ndarray:
        return self.Q @ v

    def coords(self, s) -> np.ndarray:
        return self.Q.conj().T @ s

    def value(self, s, k: int) -> np.ndarray:
        d = self.D.dim
        return s[k * d:(k + 1) * d]

    def class_mask(self, classes) -> np.ndarray:
        d = self.D.dim
        m = np.zeros(self.cs.gh_size * d)
        for c in classes:
            for k in self.cs.classes[c]:
                m[k * d:(k + 1) * d] = 1
        return m

    def equivariance_residual(self) -> float:
        """``max |f(g t) - t*(f(g))|`` over basis sections, ``g in G_H`` and ``t in H``."""
        G, cs, D = self.D.G, self.cs, self.D
        worst = 0.0
        for s in self.Q.T:
            for i, g in enumerate(cs.gh):
                for t in cs.H.elements:
                    k = cs.find(ge_mul(G, g, t))
                    if k is None:
                        continue
                    r = self.value(s, k) - D.ext(ge_star(G, t)) @ self.value(s, i)
                    worst = max(worst, float(np.abs(r).max(initial=0.0)))
        return worst


def _transporters(G, cs: CosetSpace, i: int) -> dict:
    """For each member ``k`` of the class of ``gh[i]``, all ``t in H`` with ``gh[i] t = gh[k]``."""
    out: dict = {}
    g = cs.gh[i]
    for ti, t in enumerate(cs.H.elements):
        k = cs.find(ge_mul(G, g, t))
        if k is not None:
            out.setdefault(k, []).append(ti)
    return out


def induce(D: GAlgebra, Hp: SubInverseSemigroup | None = None) -> InducedAlgebra:
    """``Ind_{H'}^G(D)`` for an H'-algebra ``D`` (``D.acting`` is ``H'``)."""
    G = D.G
    Hp = Hp or D.acting
    cs = coset_space(G, Hp)
    d = D.dim
    n = cs.gh_size
    H = cs.H
    cols, class_basis, stabilizers = [], [], []
    for c in range(cs.n_classes):
        i = cs.reps[c]
        g = cs.gh[i]
        s = cs.atoms.index(g.P)
        unit = D.ext(H.elements[H.units[s]])
        trans = _transporters(G, cs, i)
        stab = trans[i]
        avg = sum(D.ext(ge_star(G, H.elements[t])) for t in stab) / len(stab)
        fixed = orth(avg @ unit)
        basis = []
        for v in fixed.T:
            sec = np.zeros(n * d, dtype=complex)
            for k, ts in trans.items():
                vals = [D.ext(ge_star(G, H.elements[t])) @ v for t in ts]
                for w in vals[1:]:
                    if np.abs(w - vals[0]).max(initial=0.0) > 1e-10:
                        raise StabilizerInconsistent(
                            f"two transporters disagree on class {c}", witness=(c, k))
                sec[k * d:(k + 1) * d] = vals[0]
            basis.append(sec)
        class_basis.append(basis)
        stabilizers.append(stab)
        cols.extend(basis)
    big = alg_mod.copies(D.alg, n)
    V = np.stack(cols, axis=1) if cols else np.zeros((n * d, 0), dtype=complex)
    sub, Q = alg_mod.subalgebra(big, V, name=f"Ind({D.name})")
    action = {}
    for g in range(G.size):
        M = np.zeros((n * d, n * d), dtype=complex)
        gs = G.inv(g)
        for k in range(n):
            j = cs.left(gs, k)
            if j is not None:
                M[k * d:(k + 1) * d, j * d:(j + 1) * d] = np.eye(d)
        MQ = M @ Q
        if np.abs(MQ - Q @ (Q.conj().T @ MQ)).max(initial=0.0) > 1e-9:
            raise StabilizerInconsistent(f"G-action by {g} leaves the section space", witness=g)
        action[g] = Q.conj().T @ MQ
    ga = validate_g_algebra(G, sub, action, name=f"Ind({D.name})")
    ind = InducedAlgebra(D, Hp, cs, ga, Q, class_basis, stabilizers)
    if ind.equivariance_residual() > EQ_TOL:
        raise StabilizerInconsistent("sections violate the equivariance rule")
    return ind


def classes_meeting_H(cs: CosetSpace) -> list[int]:
    return [c for c in range(cs.n_classes)
            if any(cs.H.find(cs.gh[k]) is not None for k in cs.classes[c])]


def ideal_A0(ind: InducedAlgebra) -> np.ndarray:
    """Ind coordinates of the sections vanishing off H; checked to be an H'-invariant ideal."""
    mask = ind.class_mask(classes_meeting_H(ind.cs))
    V = orth(ind.coords(mask[:, None] * ind.Q))
    closed = alg_mod.ideal_closure(ind.ga.alg, V) if V.shape[1] else V
    if closed.shape[1] != V.shape[1]:
        raise AssertionError("A0 is not an ideal")
    for t in ind.Hp.members:
        img = ind.ga.alpha(t) @ V
        if np.abs(img - V @ (V.conj().T @ img)).max(initial=0.0) > 1e-9:
            raise AssertionError(f"A0 is not invariant under {t}")
    return V


@dataclass
class MapReport:
    matrix: np.ndarray
    star_residual: float
    mult_residual: float
    equivariance_residual: float
    rank: int
    target_dim: int
    carrier_rank: int | None = None
    kernel_ok: bool | None = None

    @property
    def bijective(self) -> bool:
        return self.rank == self.target_dim and (self.carrier_rank is None
                                                 or self.carrier_rank == self.rank)

    def to_json(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "matrix"}
        out["bijective"] = self.bijective
        return out


def _hom_residuals(src, tgt, M):
    d = src.dim
    eye = np.eye(d)
    star = mult = 0.0
    for i in range(d):
        bi = eye[i]
        star = max(star, float(np.abs(M @ src.star(bi) - tgt.star(M @ bi)).max(initial=0.0)))
        for j in range(d):
            bj = eye[j]
            r = M @ src.mul(bi, bj) - tgt.mul(M @ bi, M @ bj)
            mult = max(mult, float(np.abs(r).max(initial=0.0)))
    return star, mult


def phi(ind: InducedAlgebra) -> MapReport:
    """``Phi(d)(t) = t*(d)`` on H, zero elsewhere, as a matrix ``D -> Ind``."""
    D, cs, G = ind.D, ind.cs, ind.D.G
    d, n = D.dim, cs.gh_size
    big = np.zeros((n * d, d), dtype=complex)
    for k in range(n):
        h = cs.H.find(cs.gh[k])
        if h is not None:
            big[k * d:(k + 1) * d] = D.ext(ge_star(G, cs.H.elements[h]))
    M = ind.coords(big)
    if np.abs(ind.Q @ M - big).max(initial=0.0) > 1e-9:
        raise AssertionError("Phi(d) is not a section")
    star, mult = _hom_residuals(D.alg, ind.ga.alg, M)
    eq = 0.0
    for t in ind.Hp.members:
        eq = max(eq, float(np.abs(M @ D.alpha(t) - ind.ga.alpha(t) @ M).max(initial=0.0)))
    A0 = ideal_A0(ind)
    p = D.proj(cs.atoms.union())
    kernel_ok = float(np.abs(M @ (np.eye(d) - p)).max(initial=0.0)) < 1e-10
    return MapReport(M, star, mult, eq, rank(M), A0.shape[1],
                     carrier_rank=rank(M @ p), kernel_ok=kernel_ok)


def psi(ind: InducedAlgebra, imp: Imprimitivity | None = None) -> tuple[MapReport, np.ndarray]:
    """``psi(f) = sum_r f 1_{rH} (x) r`` into ``Ind (x) C0(G_H/H)``; returns the report and K."""
    imp = imp or Imprimitivity(ind.ga, ind.Hp)
    cs, G = ind.cs, ind.D.G
    coef = imp.coef
    m = ind.dim
    nc = cs.n_classes
    M = np.zeros((nc * m, m), dtype=complex)
    for c in range(nc):
        mask = ind.class_mask([c])
        M[c * m:(c + 1) * m] = ind.coords(mask[:, None] * ind.Q)
    # second formula: g(g*(f) 1_H) (x) g
    hmask = ind.class_mask(classes_meeting_H(cs))
    hmask_pts = np.zeros_like(hmask)
    d = ind.D.dim
    for k in range(cs.gh_size):
        if cs.H.find(cs.gh[k]) is not None:
            hmask_pts[k * d:(k + 1) * d] = 1
    M2 = np.zeros_like(M)
    for c in range(nc):
        r = cs.rep(c)
        back = ind.ga.ext(ge_star(G, r))
        fwd = ind.ga.ext(r)
        restr = ind.coords(hmask_pts[:, None] * ind.Q)
        M2[c * m:(c + 1) * m] = fwd @ restr @ back
    formula_gap = float(np.abs(M - M2).max(initial=0.0))
    K = k_ideal(ind, imp)
    star, mult = _hom_residuals(ind.ga.alg, coef.alg, M)
    eq = 0.0
    for g in range(G.size):
        eq = max(eq, float(np.abs(M @ ind.ga.alpha(g) - coef.alpha(g) @ M).max(initial=0.0)))
    inside = float(np.abs(M - K @ (K.conj().T @ M)).max(initial=0.0)) if K.shape[1] else 0.0
    rep = MapReport(M, star, mult, eq, rank(M), K.shape[1])
    rep.kernel_ok = inside < 1e-9 and formula_gap < 1e-9
    return rep, K


def k_ideal(ind: InducedAlgebra, imp: Imprimitivity) -> np.ndarray:
    """G-invariant ideal of ``C0(G_H/H, Ind)`` generated by ``g(a) (x) g``, ``a in A0``."""
    cs = ind.cs
    coef = imp.coef
    m = ind.dim
    A0 = ideal_A0(ind)
    gens = []
    for c in range(cs.n_classes):
        act = ind.ga.ext(cs.rep(c))
        for a in A0.T:
            v = np.zeros(cs.n_classes * m, dtype=complex)
            v[c * m:(c + 1) * m] = act @ a
            gens.append(v)
    if not gens:
        return np.zeros((cs.n_classes * m, 0), dtype=complex)
    V = orth(np.stack(gens, axis=1))
    while True:
        V = alg_mod.ideal_closure(coef.alg, V)
        W = orth(np.concatenate([V] + [coef.alpha(g) @ V for g in range(ind.D.G.size)], axis=1))
        if W.shape[1] == V.shape[1]:
            return V
        V = W


def _sub_ga(ga: GAlgebra, V: np.ndarray, name: str) -> GAlgebra:
    sub, Q = alg_mod.subalgebra(ga.alg, V, name=name)
    action = {g: Q.conj().T @ ga.alpha(g) @ Q for g in ga.acting.members}
    return validate_g_algebra(ga.G, sub, action, acting=ga.acting, name=name)


def corollary_verdict(D: GAlgebra, Hp: SubInverseSemigroup | None = None,
                      seed: int = alg_mod.DEFAULT_SEED) -> dict:
    G = D.G
    Hp = Hp or D.acting
    ind = induce(D, Hp)
    imp = Imprimitivity(ind.ga, Hp, seed=seed)
    # D x^ H'
    dcp = build_acp(D, members_as_ge(G, Hp.members), name="D x_alg H'")
    dsq = sieben_quotient(dcp, generators=Hp.idempotents(), name="D x^ H'")
    bD = blocks(dsq.algebra, seed)
    # Ind x^ G
    icp = build_acp(ind.ga, members_as_ge(G, range(G.size)), name="Ind x_alg G")
    isq = sieben_quotient(icp, generators=list(G.idempotent_list), name="Ind x^ G")
    bI = blocks(isq.algebra, seed)
    ph = phi(ind)
    ps, K = psi(ind, imp)
    # ideal route: J = A0 x H inside A x H, I = K x^ G
    A0 = ideal_A0(ind)
    B = imp.B
    jcols = []
    for t in range(len(B.index)):
        for a in A0.T:
            jcols.append(B.coords({t: a}))
    J = orth(np.stack(jcols, axis=1)) if jcols else np.zeros((B.dim, 0))
    bJ = blocks(alg_mod.subalgebra(imp.B_model, J, name="J")[0], seed) if J.shape[1] else None
    Kga = _sub_ga(imp.coef, K, "K")
    kcp = CrossedProduct(Kga, members_as_ge(G, range(G.size)), name="K x_alg G")
    ksq = sieben_quotient(kcp, generators=list(G.idempotent_list), name="K x^ G")
    bK = blocks(ksq.algebra, seed)
    # A0 x^ H' against D x^ H' through Phi
    a0ga = _sub_ga(ind.ga.restrict(Hp), A0, "A0")
    acp = build_acp(a0ga, members_as_ge(G, Hp.members), name="A0 x_alg H'")
    bA0 = blocks(sieben_quotient(acp, generators=Hp.idempotents()).algebra, seed)
    return {
        "ind_dim": ind.dim,
        "A0_dim": int(A0.shape[1]),
        "K_dim": int(K.shape[1]),
        "n_classes": ind.cs.n_classes,
        "stabilizer_sizes": [len(s) for s in ind.stabilizers],
        "equivariance_residual": ind.equivariance_residual(),
        "blocks_D_cross_Hp": list(bD.blocks),
        "blocks_Ind_cross_G": list(bI.blocks),
        "blocks_J": list(bJ.blocks) if bJ else [],
        "blocks_K_cross_G": list(bK.blocks),
        "blocks_A0_cross_Hp": list(bA0.blocks),
        "radical_dims": [bD.radical_dim, bI.radical_dim, bK.radical_dim],
        "phi": ph.to_json(),
        "psi": ps.to_json(),
        "morita_equivalent": bD.count == bI.count,
        "ideal_route_ok": bJ is not None and bJ.count == bK.count == bD.count
        and bA0.blocks == bD.blocks,
    }
