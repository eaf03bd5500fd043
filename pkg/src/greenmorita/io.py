"""JSON formats for semigroups, G-algebras and fixtures.

Semigroup::

    {"n": 7, "mult": [[...]], "labels": [...]}        or
    {"builtin": "symmetric_inverse_monoid", "params": [2]}

G-algebra (``acting`` lists generators of the acting sub-inverse semigroup;
omitted means all of G)::

    {"semigroup": ..., "algebra": {"dim", "triples", "invol"} | {"commutative": n},
     "action": {"0": [[...]], ...}, "acting": [...], "name": "..."}

Fixture: a G-algebra object plus ``"H_prime": [generators]``.
Matrices are nested lists of reals or ``{"re": [[...]], "im": [[...]]}``.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import algebra as alg_mod
from .crossed import GAlgebra, validate_g_algebra
from .errors import ParseError
from .semigroup import FiniteInverseSemigroup, builtin, sub_closure, validate, whole


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing key {key!r} in {where}", witness=where)
    return obj[key]


def load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}", witness=str(path))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}",
                         witness=[str(path), exc.lineno, exc.colno])


def semigroup_from_json(obj, where="semigroup") -> FiniteInverseSemigroup:
    if isinstance(obj, dict) and "builtin" in obj:
        return builtin(obj["builtin"], *obj.get("params", []))
    mult = _require(obj, "mult", where)
    if "n" in obj and len(mult) != obj["n"]:
        raise ParseError(f"{where}: n={obj['n']} but table has {len(mult)} rows", witness=where)
    return validate(mult, labels=obj.get("labels", ()))


def matrix_from_json(obj, where="matrix") -> np.ndarray:
    try:
        if isinstance(obj, dict):
            re = np.asarray(obj.get("re", 0.0), dtype=float)
            im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
            return re + 1j * im
        return np.asarray(obj, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: bad matrix ({exc})", witness=where)


def matrix_to_json(M) -> object:
    M = np.asarray(M)
    if np.iscomplexobj(M) and np.abs(M.imag).max(initial=0.0) > 0:
        return {"re": M.real.tolist(), "im": M.imag.tolist()}
    return np.real(M).tolist()


def algebra_from_json(obj, where="algebra") -> alg_mod.FDStarAlgebra:
    if isinstance(obj, dict) and "commutative" in obj:
        return alg_mod.commutative_algebra(int(obj["commutative"]))
    if isinstance(obj, dict) and "matrix" in obj:
        return alg_mod.matrix_algebra(int(obj["matrix"]))
    _require(obj, "dim", where)
    return alg_mod.FDStarAlgebra.from_json(obj, name=obj.get("name", ""))


def g_algebra_from_json(obj, G=None) -> GAlgebra:
    G = G or semigroup_from_json(_require(obj, "semigroup", "g-algebra"))
    alg = algebra_from_json(_require(obj, "algebra", "g-algebra"))
    acting = sub_closure(G, obj["acting"]) if "acting" in obj else whole(G)
    raw = _require(obj, "action", "g-algebra")
    action = {}
    for g in acting.members:
        key = str(g)
        if key not in raw:
            raise ParseError(f"action: no matrix for element {g}", witness=["action", g])
        action[g] = matrix_from_json(raw[key], where=f"action[{g}]")
    return validate_g_algebra(G, alg, action, acting=acting, name=obj.get("name", ""))


def g_algebra_to_json(ga: GAlgebra) -> dict:
    return {
        "semigroup": ga.G.to_json(),
        "algebra": ga.alg.to_json(),
        "action": {str(g): matrix_to_json(ga.action[g]) for g in sorted(ga.action)},
        "acting": list(ga.acting.members),
        "name": ga.name,
    }


def fixture_from_json(obj):
    from .fixtures import Fixture

    ga = g_algebra_from_json(obj)
    Hp = sub_closure(ga.G, obj.get("H_prime", list(range(ga.G.size))))
    return Fixture(obj.get("name", "custom"), ga, Hp)


def clean(obj, digits: int = 10):
    """Plain JSON values with floats rounded to ``digits`` significant digits."""
    if isinstance(obj, dict):
        return {str(k): clean(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v, digits) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            return str(x)
        return float(f"{x:.{digits}g}")
    if isinstance(obj, np.ndarray):
        return clean(obj.tolist(), digits)
    if isinstance(obj, complex):
        return clean([obj.real, obj.imag], digits)
    return obj


def dumps(obj) -> str:
    return json.dumps(clean(obj), sort_keys=True, indent=2)
