"""The pre-Hilbert bimodule X0 between E0 and B0 and its verification.

* ``B0 = A x_alg H`` indexed by the groupoid H (as G_E values),
* ``X0 = span{a x g : g in G_H}``,
* ``E0 = (A (x) C0(G_H/H)) x_alg G`` with the diagonal action.

Inner products that land on G_E values outside G are expanded into
combinations of elements of G through the Mobius expansion of the
projection part, which is an identity in the ambient universal algebra.
"""
from __future__ import annotations

from functools import cached_property
from itertools import product

import numpy as np

from . import algebra as alg_mod
from .algebra import FDStarAlgebra, blocks, is_positive, min_eigenvalue, op_norm, orth
from .cosets import CosetSpace, coset_space
from .crossed import (CrossedProduct, GAlgebra, StandardSpan, members_as_ge,
                      sieben_quotient, validate_g_algebra)
from .projections import ZERO, ge, ge_expansion, ge_mul, ge_star
from .semigroup import SubInverseSemigroup


def _add(out: dict, k, v):
    out[k] = out[k] + v if k in out else v


def coefficient_algebra(ga: GAlgebra, cs: CosetSpace, tol: float = 1e-10) -> GAlgebra:
    """``A (x) C0(G_H/H)`` with ``g(a (x) r) = g(a) (x) [g r in G_H] g r``.

    Coordinates are ordered ``(class, basis of A)``.
    """
    G, A = ga.G, ga.alg
    n, d = cs.n_classes, A.dim
    action = {}
    for g in range(G.size):
        M = np.zeros((n * d, n * d), dtype=complex)
        for c in range(n):
            c2 = cs.act(g, c)
            if c2 is not None:
                M[c2 * d:(c2 + 1) * d, c * d:(c + 1) * d] = ga.alpha(g)
        action[g] = M
    return validate_g_algebra(G, alg_mod.copies(A, n), action, tol=tol,
                              name=f"{ga.name}(x)C0(G_H/H)")


def induced_coefficient_algebra(ga: GAlgebra, cs: CosetSpace, coef: GAlgebra):
    """``C0(G_H/H, A)``: the sum over classes ``r`` of ``A_{r r*} (x) delta_r``.

    Returns ``(GAlgebra, Q)`` where ``Q`` embeds its coordinates into ``coef``.
    """
    G = ga.G
    d = ga.dim
    cols = []
    for c in range(cs.n_classes):
        r = cs.rep(c)
        P = ga.ext(ge_mul(G, r, ge_star(G, r)))
        U = orth(P)
        block = np.zeros((cs.n_classes * d, U.shape[1]), dtype=complex)
        block[c * d:(c + 1) * d] = U
        cols.append(block)
    V = np.concatenate(cols, axis=1)
    sub, Q = alg_mod.subalgebra(coef.alg, V, name="C0(G_H/H,A)")
    action = {}
    for g in range(G.size):
        M = coef.alpha(g) @ Q
        if np.abs(M - Q @ (Q.conj().T @ M)).max(initial=0) > 1e-9:
            raise AssertionError(f"C0(G_H/H,A) is not invariant under {g}")
        action[g] = Q.conj().T @ M
    return validate_g_algebra(G, sub, action, name="C0(G_H/H,A)"), Q


class Imprimitivity:
    """X0 with its four operations for a G-algebra ``ga`` and ``H' <= G``."""

    def __init__(self, ga: GAlgebra, Hp: SubInverseSemigroup, seed: int = alg_mod.DEFAULT_SEED):
        self.ga = ga
        self.G = ga.G
        self.Hp = Hp
        self.A = ga.alg
        self.seed = seed
        self.cs = coset_space(self.G, Hp)
        self.X = StandardSpan(ga, self.cs.gh, name="X0")
        self.B = CrossedProduct(ga, self.cs.H.lookup, name="B0")
        self.coef = coefficient_algebra(ga, self.cs)
        self.E = CrossedProduct(self.coef, members_as_ge(self.G, range(self.G.size)), name="E0")

    # -- models --------------------------------------------------------------

    @cached_property
    def B_model(self) -> FDStarAlgebra:
        return self.B.algebra

    @cached_property
    def E_sieben(self):
        return sieben_quotient(self.E, generators=list(self.G.idempotent_list),
                               name="(A(x)C0) x^ G")

    @cached_property
    def C0A(self):
        return induced_coefficient_algebra(self.ga, self.cs, self.coef)

    @cached_property
    def EC(self) -> CrossedProduct:
        return CrossedProduct(self.C0A[0], members_as_ge(self.G, range(self.G.size)),
                              name="C0(G_H/H,A) x_alg G")

    @cached_property
    def EC_sieben(self):
        return sieben_quotient(self.EC, generators=list(self.G.idempotent_list),
                               name="C0(G_H/H,A) x^ G")

    def e_project(self, f: dict) -> np.ndarray:
        return self.E_sieben.project(f)

    # -- the four operations -------------------------------------------------

    def right_action(self, x: dict, b: dict) -> dict:
        """``(a x g)(c x t) = a g(c) x g t``."""
        G, A, cs = self.G, self.A, self.cs
        out: dict = {}
        for j, a in x.items():
            g = cs.gh[j]
            for t, c in b.items():
                w = ge_mul(G, g, self.B.index[t])
                if w is ZERO:
                    continue
                k = cs.find(w)
                if k is None:
                    raise AssertionError(f"g t left G_H: {w}")
                _add(out, k, self.X.rproj[k] @ A.mul(a, self.X.alpha[j] @ c))
        return out

    def inner_B(self, x: dict, y: dict) -> dict:
        """``<a x g, b x h>_B = [g* h in H] g*(a* b) x g* h``."""
        G, A, cs = self.G, self.A, self.cs
        out: dict = {}
        for i, a in x.items():
            gs = ge_star(G, cs.gh[i])
            ags = self.ga.ext(gs)
            astar = A.star(a)
            for j, b in y.items():
                t = self.B.index.find(ge_mul(G, gs, cs.gh[j]))
                if t is None:
                    continue
                _add(out, t, self.B.rproj[t] @ (ags @ A.mul(astar, b)))
        return out

    def left_action(self, f: dict, x: dict) -> dict:
        """``(a (x) r x s)(b x j) = [s j in G_H][r ~ s j] a s(b) x s j``."""
        A, cs = self.A, self.cs
        d = A.dim
        out: dict = {}
        for s, F in f.items():
            for j, b in x.items():
                k = cs.left(s, j)
                if k is None:
                    continue
                r = cs.class_of[k]
                a = F[r * d:(r + 1) * d]
                _add(out, k, self.X.rproj[k] @ A.mul(a, self.ga.alpha(s) @ b))
        return out

    def inner_E(self, x: dict, y: dict) -> dict:
        """``<a x g, b x h>_E = a gh*(b*) (x) g x g h*`` expanded over G."""
        G, A, cs = self.G, self.A, self.cs
        d, n = A.dim, cs.n_classes
        out: dict = {}
        for i, a in x.items():
            r = cs.class_of[i]
            for j, b in y.items():
                w = ge_mul(G, cs.gh[i], ge_star(G, cs.gh[j]))
                if w is ZERO:
                    continue
                coef = np.zeros(n * d, dtype=complex)
                coef[r * d:(r + 1) * d] = A.mul(a, self.ga.ext(w) @ A.star(b))
                for s, c in ge_expansion(G, w).items():
                    _add(out, s, c * (self.E.rproj[s] @ coef))
        return out

    def e_element(self, a, c: int, w) -> dict:
        """``a (x) delta_c x w`` for a G_E value ``w``, expanded over G."""
        d, n = self.A.dim, self.cs.n_classes
        coef = np.zeros(n * d, dtype=complex)
        coef[c * d:(c + 1) * d] = a
        out: dict = {}
        for s, k in ge_expansion(self.G, w).items():
            _add(out, s, k * (self.E.rproj[s] @ coef))
        return out

    # -- helpers -------------------------------------------------------------

    def x_coords(self, x):
        return self.X.coords(x)

    def b_coords(self, b):
        return self.B.coords(b)

    def e_coords(self, f):
        return self.E.coords(f)

    def random_x(self, rng):
        return self.X.random(rng)

    def random_b(self, rng):
        return self.B.random(rng)

    def random_f(self, rng):
        return self.E.random(rng)

    def unit_x(self, i: int) -> dict:
        """``1_A x g`` for ``g = gh[i]``."""
        one = self.A.unit()
        return {i: self.X.rproj[i] @ one}

    # -- checks --------------------------------------------------------------

    def identity_residuals(self, x, y, z, b, f) -> dict:
        X, B, E = self.X, self.B, self.E
        bx = lambda u: B.coords(u)
        ex = lambda u: E.coords(u)
        res = {}
        res["B_linear"] = _diff(bx(self.inner_B(x, self.right_action(y, b))),
                                bx(B.mul(self.inner_B(x, y), b)))
        res["B_hermitian"] = _diff(bx(B.star(self.inner_B(x, y))), bx(self.inner_B(y, x)))
        res["E_linear"] = _diff(ex(self.inner_E(self.left_action(f, x), y)),
                                ex(E.mul(f, self.inner_E(x, y))))
        res["E_hermitian"] = _diff(ex(E.star(self.inner_E(x, y))), ex(self.inner_E(y, x)))
        res["B_adjoint"] = _diff(bx(self.inner_B(self.left_action(f, x), y)),
                                 bx(self.inner_B(x, self.left_action(E.star(f), y))))
        res["E_adjoint"] = _diff(ex(self.inner_E(x, self.right_action(y, b))),
                                 ex(self.inner_E(self.right_action(x, B.star(b)), y)))
        res["associativity"] = _diff(X.coords(self.right_action(x, self.inner_B(y, z))),
                                     X.coords(self.left_action(self.inner_E(x, y), z)))
        res["actions_commute"] = _diff(
            X.coords(self.right_action(self.left_action(f, x), b)),
            X.coords(self.left_action(f, self.right_action(x, b))))
        return res

    def check_identities(self, trials: int = 100, seed: int | None = None) -> dict:
        rng = np.random.default_rng(self.seed if seed is None else seed)
        worst: dict = {}
        for _ in range(trials):
            args = (self.random_x(rng), self.random_x(rng), self.random_x(rng),
                    self.random_b(rng), self.random_f(rng))
            for k, v in self.identity_residuals(*args).items():
                worst[k] = max(worst.get(k, 0.0), v)
        x45 = self.check_x4_x5()
        return {"trials": trials, "residuals": worst,
                "max_residual": max(list(worst.values()) + [x45["max_residual"]]),
                "x4_x5": x45}

    def check_x4_x5(self) -> dict:
        """Compare the two expansions of ``<f x, y>_B = <x, f* y>_B``.

        Loops over ``s in G``, classes ``r`` and ``g, h in G_H`` and compares
        both the bracket supports and the values on basis coefficients.
        """
        G, A, cs, ga = self.G, self.A, self.cs, self.ga
        d = A.dim
        Hfind = self.B.index.find
        bracket_mismatch = 0
        value_support_mismatch = 0
        worst = 0.0
        evals = 0
        one = np.eye(d, dtype=complex)
        for s in range(G.size):
            S = ge(G, s)
            Ss = ge_star(G, S)
            for r in range(cs.n_classes):
                for gi, hi in product(range(cs.gh_size), repeat=2):
                    g, h = cs.gh[gi], cs.gh[hi]
                    # (x4): [s g in G_H][r ~ s g][g* s* h in H]
                    sg = cs.left(s, gi)
                    gsh = ge_mul(G, ge_star(G, g), ge_mul(G, Ss, h))
                    t4 = Hfind(gsh)
                    b4 = sg is not None and cs.class_of[sg] == r and t4 is not None
                    # (x5): [g* s* h in H][s* r ~ s* h][s* h in G_H][s* r in G_H]
                    ssh = cs.left(G.inv(s), hi)
                    ssr = cs.left(G.inv(s), cs.reps[r])
                    b5 = (t4 is not None and ssh is not None and ssr is not None
                          and cs.class_of[ssh] == cs.class_of[ssr])
                    if b4 != b5:
                        bracket_mismatch += 1
                    if not (b4 or b5):
                        continue
                    # values on basis vectors a, b, c of A
                    gs_act = ga.ext(ge_mul(G, ge_star(G, g), Ss))
                    g_act = ga.ext(ge_star(G, g))
                    s_act, ss_act = ga.alpha(s), ga.alpha(G.inv(s))
                    a_proj = ga.alpha(G.mul(s, G.inv(s)))
                    for ia, ib, ic in product(range(d), repeat=3):
                        a = a_proj @ one[ia]
                        b_n = self.X.rproj[gi] @ one[ib]
                        c_n = self.X.rproj[hi] @ one[ic]
                        v4 = np.zeros(d, dtype=complex)
                        v5 = np.zeros(d, dtype=complex)
                        if b4:
                            inner = A.mul(A.mul(s_act @ A.star(b_n), A.star(a)), c_n)
                            v4 = self.B.rproj[t4] @ (gs_act @ inner)
                        if b5:
                            inner = A.mul(A.mul(A.star(b_n), ss_act @ A.star(a)), ss_act @ c_n)
                            v5 = self.B.rproj[t4] @ (g_act @ inner)
                        diff = float(np.abs(v4 - v5).max(initial=0.0))
                        worst = max(worst, diff)
                        evals += 1
                        if (np.abs(v4).max() > 1e-12) != (np.abs(v5).max() > 1e-12):
                            value_support_mismatch += 1
        return {"bracket_mismatches": bracket_mismatch,
                "value_support_mismatches": value_support_mismatch,
                "evaluations": evals, "max_residual": worst}

    # -- positivity, norms ---------------------------------------------------

    def check_positivity_and_norms(self, trials: int = 100, seed: int | None = None,
                                   tol: float = 1e-8) -> dict:
        rng = np.random.default_rng(self.seed if seed is None else seed)
        Bm = self.B_model
        Em = self.E_sieben.algebra
        coefA = self.coef.alg
        out = {"trials": trials, "B_positive": True, "E_positive": True,
               "f_inequality": True, "b_inequality": True, "l1_bound": True,
               "min_eig_B": np.inf, "min_eig_E": np.inf,
               "min_eig_f_ineq": np.inf, "min_eig_b_ineq": np.inf,
               "sos_B_residual": 0.0, "sos_E_residual": 0.0, "gram_min_eig": np.inf}
        for _ in range(trials):
            x, f, b = self.random_x(rng), self.random_f(rng), self.random_b(rng)
            xxB = self.B.coords(self.inner_B(x, x))
            xxE = self.e_project(self.inner_E(x, x))
            mB = min_eigenvalue(Bm, xxB, tol)
            mE = min_eigenvalue(Em, xxE, tol)
            nf = op_norm(Em, self.e_project(f))
            fx = self.left_action(f, x)
            lhs = nf ** 2 * xxB - self.B.coords(self.inner_B(fx, fx))
            mf = min_eigenvalue(Bm, lhs, tol)
            nb = op_norm(Bm, self.B.coords(b))
            xb = self.right_action(x, b)
            rhs = nb ** 2 * xxE - self.e_project(self.inner_E(xb, xb))
            mb = min_eigenvalue(Em, rhs, tol)
            l1 = sum(op_norm(coefA, v) for v in f.values())
            out["min_eig_B"] = min(out["min_eig_B"], mB)
            out["min_eig_E"] = min(out["min_eig_E"], mE)
            out["min_eig_f_ineq"] = min(out["min_eig_f_ineq"], mf)
            out["min_eig_b_ineq"] = min(out["min_eig_b_ineq"], mb)
            out["B_positive"] &= is_positive(Bm, xxB, tol)
            out["E_positive"] &= is_positive(Em, xxE, tol)
            out["f_inequality"] &= mf >= -tol
            out["b_inequality"] &= mb >= -tol
            out["l1_bound"] &= nf <= l1 + tol
            sB, sE = self.sum_of_squares_residuals(x)
            out["sos_B_residual"] = max(out["sos_B_residual"], sB)
            out["sos_E_residual"] = max(out["sos_E_residual"], sE)
        out["gram_min_eig"] = self.gram_min_eigenvalue(rng)
        out["ok"] = bool(out["B_positive"] and out["E_positive"] and out["f_inequality"]
                         and out["b_inequality"] and out["l1_bound"]
                         and out["gram_min_eig"] >= -tol
                         and out["sos_B_residual"] < 1e-9 and out["sos_E_residual"] < 1e-9)
        for k in ("B_positive", "E_positive", "f_inequality", "b_inequality", "l1_bound"):
            out[k] = bool(out[k])
        return out

    def sum_of_squares_residuals(self, x: dict):
        """Residuals of ``<x,x>_B = sum_i <x,x_i><x,x_i>*`` (``x_i = 1 x g_i``)
        and ``<x,x>_E = sum_e <x,1 x e><x,1 x e>*`` (``e`` the unit atoms)."""
        B, cs = self.B, self.cs
        xx = B.coords(self.inner_B(x, x))
        acc = np.zeros_like(xx)
        for c in range(cs.n_classes):
            xi = self.unit_x(cs.reps[c])
            u = self.inner_B(x, xi)
            acc += B.coords(B.mul(u, B.star(u)))
        resB = float(np.abs(xx - acc).max(initial=0.0))
        xxE = self.e_coords(self.inner_E(x, x))
        accE = np.zeros_like(xxE)
        for unit in cs.H.units:
            k = cs.find(cs.H.elements[unit])
            v = self.inner_E(x, self.unit_x(k))
            accE += self.e_coords(self.E.mul(v, self.E.star(v)))
        resE = float(np.abs(xxE - accE).max(initial=0.0))
        return resB, resE

    def gram_min_eigenvalue(self, rng, size: int = 3) -> float:
        """Min eigenvalue of ``[pi(<u_i, u_j>_B)]`` for random ``u_1..u_size``."""
        Bm = self.B_model
        if Bm.dim == 0:
            return 0.0
        rep = alg_mod.faithful_rep(Bm)
        us = [self.random_x(rng) for _ in range(size)]
        rows = [np.concatenate([rep(self.B.coords(self.inner_B(u, v))) for v in us], axis=1)
                for u in us]
        M = np.concatenate(rows, axis=0)
        return float(np.linalg.eigvalsh((M + M.conj().T) / 2).min())

    # -- fullness and sigma --------------------------------------------------

    def sigma_and_fullness(self) -> dict:
        X = self.X
        fam = [X.standard(i, a) for i, a in X.basis_family()]
        Bspan = [self.B.coords(self.inner_B(u, v)) for u in fam for v in fam]
        Espan = [self.e_project(self.inner_E(u, v)) for u in fam for v in fam]
        dB = alg_mod.rank(np.stack(Bspan, axis=1)) if Bspan else 0
        dE = alg_mod.rank(np.stack(Espan, axis=1)) if Espan else 0
        iota = self.iota_matrix()
        dEC = self.EC_sieben.algebra.dim
        r_iota = alg_mod.rank(iota) if iota.size else 0
        joint = alg_mod.rank(np.concatenate([iota, np.stack(Espan, axis=1)], axis=1)) \
            if Espan and iota.size else dE
        surj = self.sigma_formula_residual()
        return {
            "B_span_dim": dB, "B_model_dim": self.B.dim,
            "E_span_dim": dE, "EC_model_dim": dEC,
            "E_full_model_dim": self.E_sieben.algebra.dim,
            "iota_rank": r_iota,
            "sigma_bijective": r_iota == dEC and joint == dE == dEC,
            "sigma_formula_residual": surj,
            "B_full": dB == self.B.dim,
            "E_full": dE == dEC,
        }

    def iota_matrix(self) -> np.ndarray:
        """Map induced by ``C0(G_H/H,A) -> A (x) C0(G_H/H)`` on the Sieben quotients."""
        EC, sq = self.EC, self.EC_sieben
        Q = self.C0A[1]
        cols = []
        for q in sq.Q.T:
            raw = EC.element(q)
            f = {i: Q @ v for i, v in raw.items()}
            cols.append(self.e_project(f))
        if not cols:
            return np.zeros((self.E_sieben.algebra.dim, 0), dtype=complex)
        return np.stack(cols, axis=1)

    def sigma_formula_residual(self) -> float:
        """``a a* (x) r x g = <a x r, g*(a) x g* r>_E`` for ``g = r`` (so ``r r* = g g*``)."""
        G, A, cs = self.G, self.A, self.cs
        worst = 0.0
        for c in range(cs.n_classes):
            i = cs.reps[c]
            r = cs.gh[i]
            for _, a in [(k, v) for k, v in self.X.basis_family() if k == i]:
                # g = r r* r = r and g* r = r* r, the source unit
                gs_r = ge_mul(G, ge_star(G, r), r)
                k = cs.find(gs_r)
                lhs_f = self.e_element(A.mul(a, A.star(a)), c, r)
                y = {k: self.X.rproj[k] @ (self.ga.ext(ge_star(G, r)) @ a)}
                rhs_f = self.inner_E({i: a}, y)
                worst = max(worst, _diff(self.e_project(lhs_f), self.e_project(rhs_f)))
        return worst

    # -- verdict -------------------------------------------------------------

    def verdict(self, trials: int = 100, tol: float = 1e-8) -> dict:
        ident = self.check_identities(trials)
        pos = self.check_positivity_and_norms(trials, tol=tol)
        full = self.sigma_and_fullness()
        bB = blocks(self.B_model, self.seed)
        bE = blocks(self.EC_sieben.algebra, self.seed)
        rad_E = int(alg_mod.radical(self.E_sieben.algebra).shape[1])
        return {
            "gh_size": self.cs.gh_size,
            "n_classes": self.cs.n_classes,
            "identities_ok": ident["max_residual"] < 1e-9
            and ident["x4_x5"]["value_support_mismatches"] == 0,
            "identities": ident,
            "positivity_ok": pos["B_positive"] and pos["E_positive"],
            "norms_ok": pos["f_inequality"] and pos["b_inequality"] and pos["l1_bound"],
            "positivity": pos,
            "fullness_ok": full["B_full"] and full["E_full"],
            "sigma_bijective": full["sigma_bijective"],
            "fullness": full,
            "blocks_B": list(bB.blocks),
            "blocks_E": list(bE.blocks),
            "radical_B": bB.radical_dim,
            "radical_E": bE.radical_dim,
            "radical_E_full": rad_E,
            "morita_equivalent": alg_mod.morita_equivalent(bB, bE),
        }


def _diff(u, v) -> float:
    return float(np.abs(np.asarray(u) - np.asarray(v)).max(initial=0.0))


def theorem_verdict(ga: GAlgebra, Hp: SubInverseSemigroup, trials: int = 100,
                    seed: int = alg_mod.DEFAULT_SEED, tol: float = 1e-8) -> dict:
    return Imprimitivity(ga, Hp, seed=seed).verdict(trials, tol=tol)
