"""Deterministic verification suite over the shipped fixtures."""
from __future__ import annotations

from itertools import combinations

import numpy as np

from . import __version__
from . import algebra as alg_mod
from .bimodule import Imprimitivity
from .cosets import build_GH, build_groupoid, quotient, unit_atoms
from .crossed import (build_acp, crosscheck_thm72, groupoid_cp, independence_check,
                      members_as_ge)
from .errors import GreenMoritaError, NotAssociative
from .fixtures import FIXTURES, INDUCTION_FIXTURES, I2_IDEMPOTENTS
from .induction import corollary_verdict, ideal_A0, induce, phi, psi
from .projections import (GE, all_ge_values, canonical_key, conj, ge_eq, ge_mul,
                          ge_star, proj_expr, regular_rep, source, supp_of_idempotent)
from .semigroup import (builtin, natural_leq, sub_closure, symmetric_inverse_monoid,
                        validate)

OPERATIONS = (
    "validate", "idempotents", "natural_leq", "sub_closure", "builtin",
    "supp_of_idempotent", "proj_expr", "conj", "ge_mul", "ge_star", "ge_eq", "regular_rep",
    "unit_atoms", "build_groupoid", "build_GH", "quotient", "act",
    "radical", "blocks", "faithful_rep", "is_positive", "op_norm",
    "validate_g_algebra", "extend_action_ge", "build_acp", "independence_check",
    "sieben_quotient", "groupoid_cp", "crosscheck_thm72",
    "right_action", "inner_B", "left_action", "inner_E", "check_identities",
    "check_positivity_and_norms", "sigma_and_fullness", "theorem_verdict",
    "induce", "ideal_A0", "phi", "psi", "corollary_verdict",
)


class Coverage:
    def __init__(self):
        self.seen: set[str] = set()

    def mark(self, *names):
        for n in names:
            if n not in OPERATIONS:
                raise KeyError(n)
            self.seen.add(n)

    def missing(self) -> list[str]:
        return [op for op in OPERATIONS if op not in self.seen]


# -- lemma checks --------------------------------------------------------------

def raw_ge_pairs(G):
    """Every raw pair ``(g, P)`` with ``P`` a nonempty subset of ``supp(g* g)``."""
    for g in range(G.size):
        src = sorted(source(G, g))
        for k in range(1, len(src) + 1):
            for P in combinations(src, k):
                yield GE(g, frozenset(P))


def lemma_extension(ga) -> dict:
    """The extended action is constant on ``ge_eq`` classes, agrees with the
    Mobius route and is multiplicative on G_E (exhaustive)."""
    G = ga.G
    by_key: dict = {}
    worst_class = worst_mobius = 0.0
    for x in raw_ge_pairs(G):
        m = ga.ext(x)
        worst_mobius = max(worst_mobius, float(np.abs(m - ga.ext_mobius(x)).max(initial=0.0)))
        k = canonical_key(G, x)
        if k in by_key:
            worst_class = max(worst_class, float(np.abs(m - by_key[k]).max(initial=0.0)))
        else:
            by_key[k] = m
    vals = all_ge_values(G)
    worst_hom = 0.0
    for x in vals:
        for y in vals:
            r = ga.ext(ge_mul(G, x, y)) - ga.ext(x) @ ga.ext(y)
            worst_hom = max(worst_hom, float(np.abs(r).max(initial=0.0)))
    return {"classes": len(by_key), "class_residual": worst_class,
            "mobius_residual": worst_mobius, "hom_residual": worst_hom}


def lemma_ge_oracle(G) -> dict:
    """``ge_eq`` against the regular representation, associativity and involution on G_E."""
    vals = all_ge_values(G)
    raw = list(raw_ge_pairs(G))
    reps = {id(x): regular_rep(G, x) for x in raw}
    eq_mismatch = 0
    for x in raw:
        for y in raw:
            if ge_eq(G, x, y) != bool((reps[id(x)] == reps[id(y)]).all()):
                eq_mismatch += 1
    assoc = 0
    for x in vals:
        for y in vals:
            xy = ge_mul(G, x, y)
            for z in vals:
                if not ge_eq(G, ge_mul(G, xy, z), ge_mul(G, x, ge_mul(G, y, z))):
                    assoc += 1
    invol = sum(not ge_eq(G, ge_star(G, ge_star(G, x)), x) for x in vals)
    rep_hom = 0
    for x in vals:
        for y in vals:
            if not (regular_rep(G, ge_mul(G, x, y)) == regular_rep(G, x) @ regular_rep(G, y)).all():
                rep_hom += 1
    return {"ge_values": len(vals), "eq_mismatches": eq_mismatch,
            "assoc_failures": assoc, "involution_failures": invol,
            "rep_hom_failures": rep_hom}


def crossed_residuals(cp) -> dict:
    a = cp.algebra
    return {"dim": cp.dim, "assoc": a.associativity_residual(),
            "invol": a.involution_residual()}


# -- per-fixture sections ------------------------------------------------------

def semigroup_section(cov: Coverage) -> dict:
    out = {}
    for n in (1, 2, 3):
        S = builtin("symmetric_inverse_monoid", n)
        out[f"I{n}"] = {"size": S.size, "idempotents": len(S.idempotent_list)}
    S = symmetric_inverse_monoid(2)
    out["I2_order_pairs"] = sum(natural_leq(S, e, f) for e in S.idempotent_list
                                for f in S.idempotent_list)
    out["I2_subsemigroups"] = {"idempotents": len(sub_closure(S, I2_IDEMPOTENTS).members),
                               "sigma": len(sub_closure(S, [1]).members)}
    try:
        validate([[0, 1], [0, 0]])
        out["broken_table_rejected"] = False
    except NotAssociative as exc:
        out["broken_table_rejected"] = exc.witness is not None
    except GreenMoritaError:
        out["broken_table_rejected"] = True
    out["I2_supports"] = [sorted(supp_of_idempotent(S, e)) for e in S.idempotent_list]
    out["I2_proj_expr"] = sorted(proj_expr(S, 0, [3, 4]))
    out["I2_conj_sigma"] = sorted(conj(S, 1, frozenset([3])))
    out["ok"] = (out["I2"] == {"size": 7, "idempotents": 4}
                 and out["I3"] == {"size": 34, "idempotents": 8}
                 and out["broken_table_rejected"])
    cov.mark("validate", "idempotents", "natural_leq", "sub_closure", "builtin",
             "supp_of_idempotent", "proj_expr", "conj")
    return out


def theorem_section(name: str, fx, cov: Coverage, seed: int, tol: float, trials: int) -> dict:
    G, ga, Hp = fx.G, fx.ga, fx.Hp
    atoms = unit_atoms(G, Hp)
    H = build_groupoid(G, Hp, atoms)
    cs = quotient(G, build_GH(G, Hp, atoms), H)
    act_ok = all(cs.act(g, c) == cs.act_by_product(g, c)
                 for g in range(G.size) for c in range(cs.n_classes))
    cov.mark("unit_atoms", "build_groupoid", "build_GH", "quotient", "act")
    oracle = lemma_ge_oracle(G)
    cov.mark("ge_mul", "ge_star", "ge_eq", "regular_rep")
    ext = lemma_extension(ga)
    cov.mark("extend_action_ge", "validate_g_algebra")
    imp = Imprimitivity(ga, Hp, seed=seed)
    indep = {"X0": independence_check(imp.X), "B0": independence_check(imp.B),
             "E0": independence_check(imp.E)}
    acp = build_acp(ga.restrict(Hp), members_as_ge(G, Hp.members))
    gcp = groupoid_cp(ga.restrict(Hp), H)
    cps = {"A_alg_Hp": crossed_residuals(acp), "groupoid": crossed_residuals(gcp),
           "B0": crossed_residuals(imp.B), "E0": crossed_residuals(imp.E),
           "EC": crossed_residuals(imp.EC)}
    cov.mark("build_acp", "independence_check", "groupoid_cp")
    cross = crosscheck_thm72(ga, Hp, seed)
    cov.mark("crosscheck_thm72", "sieben_quotient", "radical", "blocks")
    verdict = imp.verdict(trials, tol=tol)
    cov.mark("right_action", "inner_B", "left_action", "inner_E", "check_identities",
             "check_positivity_and_norms", "sigma_and_fullness", "theorem_verdict",
             "faithful_rep", "is_positive", "op_norm")
    lemma_ok = (all(indep.values()) and ext["class_residual"] < 1e-10
                and ext["mobius_residual"] < 1e-10 and ext["hom_residual"] < 1e-10
                and all(v["assoc"] < 1e-10 and v["invol"] < 1e-10 for v in cps.values())
                and oracle["eq_mismatches"] == 0 and oracle["assoc_failures"] == 0
                and oracle["involution_failures"] == 0 and oracle["rep_hom_failures"] == 0)
    ok = (lemma_ok and act_ok and cross["ok"] and verdict["identities_ok"]
          and verdict["positivity_ok"] and verdict["norms_ok"] and verdict["fullness_ok"]
          and verdict["sigma_bijective"] and verdict["morita_equivalent"])
    return {"fixture": name, "cosets": cs.to_json(), "act_consistent": act_ok,
            "ge_oracle": oracle, "extension": ext, "independence": indep,
            "crossed_products": cps, "thm72": cross, "verdict": verdict,
            "lemma_ok": lemma_ok, "ok": ok}


def induction_section(name: str, fx, cov: Coverage, seed: int) -> dict:
    v = corollary_verdict(fx.D, fx.Hp, seed=seed)
    ind = induce(fx.D, fx.Hp)
    ideal_A0(ind)
    phi(ind)
    psi(ind)
    cov.mark("induce", "ideal_A0", "phi", "psi", "corollary_verdict")
    expected_ok = fx.expected_blocks is None or tuple(v["blocks_D_cross_Hp"]) == fx.expected_blocks
    v["expected_blocks"] = list(fx.expected_blocks) if fx.expected_blocks else None
    v["ok"] = (v["morita_equivalent"] and v["ideal_route_ok"] and expected_ok
               and v["phi"]["bijective"] and v["psi"]["bijective"]
               and v["equivariance_residual"] < 1e-12)
    v["fixture"] = name
    return v


def run_suite(fixtures=None, seed: int = alg_mod.DEFAULT_SEED, tol: float = 1e-8,
              trials: int = 100) -> dict:
    """Run every check; ``fixtures`` limits the named fixtures (default: all)."""
    names = list(fixtures) if fixtures else list(FIXTURES) + list(INDUCTION_FIXTURES)
    cov = Coverage()
    report = {"tool": "greenmorita", "version": __version__, "seed": seed, "tol": tol,
              "trials": trials, "semigroups": semigroup_section(cov), "fixtures": {}}
    for name in names:
        if name in FIXTURES:
            report["fixtures"][name] = theorem_section(name, FIXTURES[name](), cov,
                                                       seed, tol, trials)
        elif name in INDUCTION_FIXTURES:
            report["fixtures"][name] = induction_section(name, INDUCTION_FIXTURES[name](),
                                                         cov, seed)
        else:
            raise KeyError(f"unknown fixture {name!r}")
    full_run = not fixtures
    report["coverage"] = {"missing": cov.missing(), "checked": full_run}
    ok = report["semigroups"]["ok"] and all(f["ok"] for f in report["fixtures"].values())
    if full_run:
        ok = ok and not cov.missing()
    report["ok"] = bool(ok)
    return report
