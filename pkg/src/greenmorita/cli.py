"""Command line front end: ``greenmorita <subcommand> [options]``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, fixtures
from . import algebra as alg_mod
from .bimodule import Imprimitivity
from .cosets import coset_space, unit_atoms
from .crossed import build_acp, groupoid_cp, members_as_ge, sieben_quotient
from .errors import BadParams, GreenMoritaError
from .induction import corollary_verdict, induce
from .io import (dumps, fixture_from_json, g_algebra_from_json, g_algebra_to_json, load_json,
                 semigroup_from_json)
from .semigroup import builtin, natural_leq, sub_closure, whole
from .suite import run_suite


def _parse_param(p: str):
    try:
        return int(p)
    except ValueError:
        return p


def _semigroup(args):
    if args.builtin:
        return builtin(args.builtin, *[_parse_param(p) for p in args.params])
    if args.input:
        data = load_json(args.input)
        return semigroup_from_json(data.get("semigroup", data) if isinstance(data, dict) else data)
    if args.fixture:
        return fixtures.get(args.fixture[0]).G
    raise BadParams("give --builtin, --in or --fixture")


def _fixture(args):
    if args.input:
        return fixture_from_json(load_json(args.input))
    name = args.fixture[0] if args.fixture else "FIX2"
    fx = fixtures.get(name)
    if not isinstance(fx, fixtures.Fixture):
        raise BadParams(f"{name} is an induction fixture; use the induce subcommand")
    return fx


# -- subcommands -----------------------------------------------------------------

def cmd_validate(args):
    S = _semigroup(args)
    return {"valid": True, "size": S.size, "idempotents": len(S.idempotent_list),
            "ok": True}


def cmd_analyze(args):
    S = _semigroup(args)
    Hp = sub_closure(S, args.hp) if args.hp else whole(S)
    idem = list(S.idempotent_list)
    atoms = unit_atoms(S, Hp)
    return {
        "size": S.size,
        "idempotents": len(idem),
        "idempotent_list": idem,
        "star": [S.inv(g) for g in range(S.size)],
        "order": [[e, f] for e in idem for f in idem if e != f and natural_leq(S, e, f)],
        "atoms": [sorted(P) for P in atoms.supports],
        "ok": True,
    }


def cmd_cosets(args):
    fx = _fixture(args)
    cs = coset_space(fx.G, fx.Hp)
    if args.format == "dot":
        return cs.to_dot()
    out = cs.to_json()
    out["ok"] = True
    return out


def cmd_crossed(args):
    fx = _fixture(args)
    G, ga, Hp = fx.G, fx.ga, fx.Hp
    if args.side == "B":
        imp = Imprimitivity(ga, Hp, seed=args.seed)
        alg = imp.B_model
    elif args.side == "E":
        alg = Imprimitivity(ga, Hp, seed=args.seed).EC_sieben.algebra
    elif args.side == "groupoid":
        alg = groupoid_cp(ga.restrict(Hp), coset_space(G, Hp).H).algebra
    else:
        cp = build_acp(ga.restrict(Hp), members_as_ge(G, Hp.members))
        alg = sieben_quotient(cp, generators=Hp.idempotents()).algebra
    br = alg_mod.blocks(alg, args.seed)
    return {"side": args.side, "algebra": alg.to_json(), "blocks": br.to_json(),
            "ok": br.radical_dim == 0}


def cmd_morita(args):
    fx = _fixture(args)
    v = Imprimitivity(fx.ga, fx.Hp, seed=args.seed).verdict(args.trials, tol=args.tol)
    v["fixture"] = fx.name
    v["ok"] = bool(v["identities_ok"] and v["positivity_ok"] and v["norms_ok"]
                   and v["fullness_ok"] and v["sigma_bijective"] and v["morita_equivalent"])
    return v


def cmd_induce(args):
    if args.input:
        data = load_json(args.input)
        D = g_algebra_from_json(data)
        name = data.get("name", "custom")
    else:
        name = args.fixture[0] if args.fixture else "IND_C_Z2"
        fx = fixtures.get(name)
        if not isinstance(fx, fixtures.InductionFixture):
            raise BadParams(f"{name} is not an induction fixture")
        D = fx.D
    v = corollary_verdict(D, D.acting, seed=args.seed)
    v["ok"] = bool(v["morita_equivalent"] and v["ideal_route_ok"])
    return {"fixture": name, "induced": g_algebra_to_json(induce(D).ga), "verdict": v,
            "ok": v["ok"]}


def cmd_suite(args):
    return run_suite(args.fixture, seed=args.seed, tol=args.tol, trials=args.trials)


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "cosets": cmd_cosets,
    "crossed": cmd_crossed,
    "morita": cmd_morita,
    "induce": cmd_induce,
    "suite": cmd_suite,
}


# -- text rendering ------------------------------------------------------------------

def _text(name: str, report) -> str:
    if isinstance(report, str):
        return report
    status = "PASS" if report.get("ok") else "FAIL"
    lines = [f"{name}: {status}"]
    if name == "morita":
        lines += [
            f"  fixture           {report['fixture']}",
            f"  |G_H|, classes    {report['gh_size']}, {report['n_classes']}",
            f"  identities        {report['identities_ok']}"
            f" (max residual {report['identities']['max_residual']:.2e})",
            f"  positivity/norms  {report['positivity_ok']}/{report['norms_ok']}",
            f"  fullness, sigma   {report['fullness_ok']}, {report['sigma_bijective']}",
            f"  blocks B / E      {report['blocks_B']} / {report['blocks_E']}",
            f"  Morita equivalent {report['morita_equivalent']}",
        ]
    elif name == "suite":
        for fx, sec in report["fixtures"].items():
            lines.append(f"  {fx:<16} {'PASS' if sec['ok'] else 'FAIL'}")
        lines.append(f"  coverage missing: {report['coverage']['missing'] or 'none'}")
    else:
        for k, v in report.items():
            if k != "ok" and not isinstance(v, (dict, list)):
                lines.append(f"  {k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--seed", type=int, default=alg_mod.DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--fixture", action="append",
                        help="named fixture (repeatable for suite)")
    common.add_argument("--in", dest="input", type=Path, help="JSON input file")
    common.add_argument("--out", type=Path, help="write the JSON report here")
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--builtin", help="builtin semigroup family")
    common.add_argument("--params", nargs="*", default=[], help="builtin parameters")
    common.add_argument("--hp", type=int, nargs="*", help="generators of H'")
    common.add_argument("--side", choices=("B", "E", "groupoid", "sieben"), default="B")

    parser = argparse.ArgumentParser(prog="greenmorita", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol <= 0 or args.trials < 1:
        print("--tol must be positive and --trials at least 1", file=sys.stderr)
        return 2
    try:
        report = COMMANDS[args.command](args)
    except GreenMoritaError as exc:
        report = exc.to_dict()
        report["ok"] = False
    except KeyError as exc:
        report = {"error": "KeyError", "message": str(exc), "ok": False}
    if isinstance(report, str):
        text = report
    else:
        text = dumps(report)
    if args.out:
        args.out.write_text(text + "\n")
        print(_text(args.command, report))
    elif args.format == "text":
        print(_text(args.command, report))
    else:
        print(text)
    ok = True if isinstance(report, str) else bool(report.get("ok"))
    return 0 if ok else 1
