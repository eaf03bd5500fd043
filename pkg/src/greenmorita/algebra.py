"""Finite-dimensional associative *-algebras given by structure constants.

Provides the radical (kernel of the trace form), the Wedderburn block
report, a *-preserving faithful representation, positivity and the C*-norm.
Scalars are complex floats; structural zero tests use ``TOL``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (DegenerateSplit, NotCStar, NotSelfAdjoint,
                     NotSemisimple)

TOL = 1e-9
DEFAULT_SEED = 20240611


def orth(V: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis for the column span of ``V`` (rank cut at ``tol``)."""
    V = np.asarray(V, dtype=complex)
    if V.size == 0:
        return np.zeros((V.shape[0], 0), dtype=complex)
    U, s, _ = np.linalg.svd(V, full_matrices=False)
    scale = max(1.0, s[0]) if len(s) else 1.0
    r = int((s > tol * scale).sum())
    return U[:, :r]


def null_space(M: np.ndarray, tol: float = TOL) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.shape[0] == 0:
        return np.eye(M.shape[1], dtype=complex)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    scale = max(1.0, s[0]) if len(s) else 1.0
    r = int((s > tol * scale).sum())
    return Vh[r:].conj().T


def rank(V: np.ndarray, tol: float = 1e-10) -> int:
    return orth(V, tol).shape[1]


@dataclass(eq=False)
class FDStarAlgebra:
    """``b_i b_j = sum_k structure[i, j, k] b_k`` and ``b_i* = invol[:, i]``.

    The involution is extended conjugate-linearly: ``x* = invol @ conj(x)``.
    """

    structure: np.ndarray
    invol: np.ndarray
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.structure = np.asarray(self.structure, dtype=complex)
        self.invol = np.asarray(self.invol, dtype=complex)
        d = self.dim
        if self.structure.shape != (d, d, d) or self.invol.shape != (d, d):
            raise ValueError("inconsistent structure/involution shapes")

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def mul(self, x, y):
        return y @ np.tensordot(x, self.structure, 1)

    def star(self, x):
        return self.invol @ np.conj(x)

    def left_matrix(self, x):
        return np.einsum("i,ijk->kj", x, self.structure)

    def right_matrix(self, y):
        return np.einsum("j,ijk->ki", y, self.structure)

    def basis(self, i):
        e = np.zeros(self.dim, dtype=complex)
        e[i] = 1
        return e

    # -- invariants ----------------------------------------------------------

    def associativity_residual(self) -> float:
        if self.dim == 0:
            return 0.0
        c = self.structure
        lhs = np.einsum("ijm,mlk->ijlk", c, c)
        rhs = np.einsum("jlm,imk->ijlk", c, c)
        return float(np.abs(lhs - rhs).max())

    def involution_residual(self) -> float:
        """Max violation of ``x** = x`` and ``(xy)* = y* x*`` on the basis."""
        d = self.dim
        if d == 0:
            return 0.0
        J = self.invol
        res = float(np.abs(J @ np.conj(J) - np.eye(d)).max())
        c = self.structure
        # (b_i b_j)* = J conj(c[i,j,:]);  b_j* b_i* = sum J[a,j] J[b,i] c[a,b,:]
        lhs = np.einsum("ka,ija->ijk", J, np.conj(c))
        rhs = np.einsum("aj,bi,abk->ijk", J, J, c, optimize=True)
        return max(res, float(np.abs(lhs - rhs).max()))

    def unit(self, tol: float = TOL):
        """The multiplicative unit, or ``None`` if the algebra has none."""
        d = self.dim
        if d == 0:
            return np.zeros(0, dtype=complex)
        # e b_j = b_j and b_j e = b_j: linear in e
        A = np.concatenate([np.einsum("ijk->jki", self.structure).reshape(d * d, d),
                            np.einsum("jik->jki", self.structure).reshape(d * d, d)])
        rhs = np.concatenate([np.eye(d).reshape(-1), np.eye(d).reshape(-1)])
        e, *_ = np.linalg.lstsq(A, rhs, rcond=None)
        if np.abs(A @ e - rhs).max() > tol * 100:
            return None
        return e

    # -- serialisation -------------------------------------------------------

    def to_json(self) -> dict:
        triples = [[int(i), int(j), int(k), float(v.real), float(v.imag)]
                   for (i, j, k), v in np.ndenumerate(self.structure) if abs(v) > TOL]
        invol = [[[float(v.real), float(v.imag)] for v in row] for row in self.invol]
        return {"dim": self.dim, "triples": triples, "invol": invol}

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "FDStarAlgebra":
        d = int(data["dim"])
        c = np.zeros((d, d, d), dtype=complex)
        for i, j, k, re, im in data["triples"]:
            c[i, j, k] += complex(re, im)
        invol = np.array([[complex(re, im) for re, im in row] for row in data["invol"]],
                         dtype=complex).reshape(d, d)
        return cls(c, invol, name=name)

    # -- cached C*-model -----------------------------------------------------

    @cached_property
    def _trace_vector(self):
        # tr(L_{b_k}) = sum_j c[k, j, j]
        return np.einsum("kjj->k", self.structure)

    @cached_property
    def _cstar_model(self):
        if radical(self).shape[1]:
            raise NotSemisimple(f"algebra {self.name or ''} has a nonzero radical")
        M = np.einsum("ai,ajk,k->ij", self.invol, self.structure, self._trace_vector, optimize=True)
        if np.abs(M - M.conj().T).max() > 1e-8 * max(1.0, np.abs(M).max()):
            raise NotCStar("trace Gram matrix is not Hermitian")
        M = (M + M.conj().T) / 2
        try:
            Lc = np.linalg.cholesky(M)
        except np.linalg.LinAlgError:
            raise NotCStar("trace form tau(x* x) is not positive definite")
        R = Lc.conj().T
        return R, np.linalg.inv(R)


# -- radical, centre, quotients ---------------------------------------------

def trace_form(alg: FDStarAlgebra) -> np.ndarray:
    """``T[i, j] = tr(L_{b_i} L_{b_j}) = tr(L_{b_i b_j})``."""
    return np.einsum("ijk,k->ij", alg.structure, alg._trace_vector)


def radical(alg: FDStarAlgebra, tol: float = TOL) -> np.ndarray:
    """Basis (columns) of the Jacobson radical via the trace-form kernel."""
    if alg.dim == 0:
        return np.zeros((0, 0), dtype=complex)
    return null_space(trace_form(alg), tol)


def ideal_closure(alg: FDStarAlgebra, V, star_closed: bool = True,
                  tol: float = 1e-10, max_iter: int = 100) -> np.ndarray:
    """Smallest two-sided (*-)ideal containing the columns of ``V``."""
    d = alg.dim
    V = orth(np.asarray(V, dtype=complex).reshape(d, -1), tol)
    c = alg.structure
    for _ in range(max_iter):
        if V.shape[1] == 0 or V.shape[1] == d:
            return V
        left = np.einsum("ijk,jr->kir", c, V).reshape(d, -1)
        right = np.einsum("ijk,ir->kjr", c, V).reshape(d, -1)
        parts = [V, left, right]
        if star_closed:
            parts.append(alg.invol @ np.conj(V))
        W = orth(np.concatenate(parts, axis=1), tol)
        if W.shape[1] == V.shape[1]:
            return W
        V = W
    raise RuntimeError("ideal closure did not stabilise")


def subalgebra_closure(alg: FDStarAlgebra, V, tol: float = 1e-10, max_iter: int = 100):
    """Smallest *-subalgebra containing the columns of ``V``."""
    d = alg.dim
    V = orth(np.asarray(V, dtype=complex).reshape(d, -1), tol)
    for _ in range(max_iter):
        prods = np.einsum("ijk,ir,js->krs", alg.structure, V, V, optimize=True).reshape(d, -1)
        W = orth(np.concatenate([V, prods, alg.invol @ np.conj(V)], axis=1), tol)
        if W.shape[1] == V.shape[1]:
            return W
        V = W
    raise RuntimeError("subalgebra closure did not stabilise")


def quotient(alg: FDStarAlgebra, ideal: np.ndarray, name: str = ""):
    """Quotient by a two-sided *-ideal.

    Returns ``(Q_alg, Q)`` where the columns of ``Q`` are an orthonormal
    basis of the orthogonal complement of the ideal; ``Q^H v`` are the
    coordinates of the class of ``v``.
    """
    d = alg.dim
    ideal = orth(ideal) if ideal.size else np.zeros((d, 0), dtype=complex)
    if ideal.shape[1]:
        Q = null_space(ideal.conj().T, 1e-10)
    else:
        Q = np.eye(d, dtype=complex)
    c = np.einsum("ijk,ia,jb,kc->abc", alg.structure, Q, Q, Q.conj(), optimize=True)
    invol = Q.conj().T @ alg.invol @ np.conj(Q)
    return FDStarAlgebra(c, invol, name=name), Q


def subalgebra(alg: FDStarAlgebra, V: np.ndarray, name: str = "", check: bool = True):
    """Restrict to the *-subalgebra spanned by the columns of ``V``.

    Returns ``(S_alg, Q)`` with ``Q`` orthonormal; ``Q @ coords`` embeds.
    """
    Q = orth(V)
    c = np.einsum("ijk,ia,jb,kc->abc", alg.structure, Q, Q, Q.conj(), optimize=True)
    invol = Q.conj().T @ alg.invol @ np.conj(Q)
    if check and Q.shape[1]:
        prods = np.einsum("ijk,ia,jb->abk", alg.structure, Q, Q, optimize=True)
        back = np.einsum("abc,kc->abk", c, Q)
        if np.abs(prods - back).max() > 1e-8:
            raise ValueError("span is not closed under multiplication")
    return FDStarAlgebra(c, invol, name=name), Q


def center(alg: FDStarAlgebra, tol: float = TOL) -> np.ndarray:
    d = alg.dim
    c = alg.structure
    # z b_i - b_i z = sum_k z_k (c[k,i,:] - c[i,k,:])
    M = np.einsum("kim->imk", c - np.einsum("ikm->kim", c)).reshape(d * d, d)
    return null_space(M, tol)


@dataclass(frozen=True)
class BlockReport:
    radical_dim: int
    blocks: tuple
    seed: int

    @property
    def count(self) -> int:
        return len(self.blocks)

    def to_json(self) -> dict:
        return {"radical_dim": self.radical_dim, "blocks": list(self.blocks),
                "seed": self.seed}


def _cluster(values: np.ndarray, tol: float) -> list[int]:
    vals = sorted(values, key=lambda z: (round(z.real, 6), z.imag))
    sizes = []
    anchor = None
    for v in vals:
        if anchor is not None and abs(v - anchor) <= tol:
            sizes[-1] += 1
        else:
            sizes.append(1)
            anchor = v
    return sizes


def blocks(alg: FDStarAlgebra, seed: int = DEFAULT_SEED, retries: int = 5,
           tol: float = 1e-8) -> BlockReport:
    """Wedderburn block sizes of ``alg / rad(alg)``.

    Splits the semisimple quotient along the eigenspaces of ``L_h`` for a
    random self-adjoint central ``h``; eigenvalue collisions trigger a new
    draw (up to ``retries`` times).
    """
    rad = radical(alg)
    work = alg
    if rad.shape[1]:
        work, _ = quotient(alg, rad)
    if work.dim == 0:
        return BlockReport(rad.shape[1], (), seed)
    Z = center(work)
    k = Z.shape[1]
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        coef = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        z = Z @ coef
        h = z + work.star(z)
        ev = np.linalg.eigvals(work.left_matrix(h))
        scale = max(1.0, np.abs(ev).max())
        sizes = _cluster(ev, tol * scale * 1e3)
        roots = [int(round(np.sqrt(s))) for s in sizes]
        if len(sizes) == k and all(r * r == s for r, s in zip(roots, sizes)):
            return BlockReport(rad.shape[1], tuple(sorted(roots)), seed)
    raise DegenerateSplit(f"no separating central element after {retries} draws")


# -- C*-model ----------------------------------------------------------------

def faithful_rep(alg: FDStarAlgebra):
    """Injective *-representation ``x -> R L_x R^{-1}`` on ``C^dim``.

    ``R`` is the Cholesky factor of the Gram matrix ``tau(b_i* b_j)`` of the
    trace ``tau(x) = tr(L_x)``; this inner product makes left multiplication
    *-preserving.
    """
    R, Rinv = alg._cstar_model

    def rep(x):
        return R @ alg.left_matrix(x) @ Rinv

    return rep


def is_self_adjoint(alg: FDStarAlgebra, x, tol: float = 1e-8) -> bool:
    return np.abs(x - alg.star(x)).max(initial=0.0) <= tol * max(1.0, np.abs(x).max(initial=0.0))


def min_eigenvalue(alg: FDStarAlgebra, x, tol: float = 1e-8) -> float:
    if alg.dim == 0:
        return 0.0
    if not is_self_adjoint(alg, x, tol):
        raise NotSelfAdjoint("element is not self-adjoint")
    m = faithful_rep(alg)(x)
    return float(np.linalg.eigvalsh((m + m.conj().T) / 2).min())


def is_positive(alg: FDStarAlgebra, x, tol: float = 1e-8) -> bool:
    return min_eigenvalue(alg, x, tol) >= -tol


def op_norm(alg: FDStarAlgebra, x) -> float:
    if alg.dim == 0:
        return 0.0
    return float(np.linalg.norm(faithful_rep(alg)(x), 2))


def morita_equivalent(a: BlockReport, b: BlockReport) -> bool:
    """Finite-dimensional C*-algebras are Morita equivalent iff block counts agree."""
    return a.radical_dim == 0 and b.radical_dim == 0 and a.count == b.count


# -- constructors --------------------------------------------------------------

def from_matrix_basis(mats, name: str = "") -> FDStarAlgebra:
    """*-algebra spanned by the given matrices (must be closed under * and products)."""
    mats = [np.asarray(m, dtype=complex) for m in mats]
    B = np.stack([m.reshape(-1) for m in mats], axis=1)
    d = len(mats)
    c = np.zeros((d, d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            v = (mats[i] @ mats[j]).reshape(-1)
            coef, *_ = np.linalg.lstsq(B, v, rcond=None)
            if np.abs(B @ coef - v).max() > 1e-10:
                raise ValueError("matrix span not closed under products")
            c[i, j] = coef
    J = np.zeros((d, d), dtype=complex)
    for i in range(d):
        v = mats[i].conj().T.reshape(-1)
        coef, *_ = np.linalg.lstsq(B, v, rcond=None)
        if np.abs(B @ coef - v).max() > 1e-10:
            raise ValueError("matrix span not closed under adjoint")
        J[:, i] = coef
    return FDStarAlgebra(c, J, name=name)


def matrix_units(n: int) -> list[np.ndarray]:
    out = []
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n))
            e[i, j] = 1
            out.append(e)
    return out


def matrix_algebra(n: int) -> FDStarAlgebra:
    return from_matrix_basis(matrix_units(n), name=f"M{n}")


def block_diagonal_algebra(sizes) -> FDStarAlgebra:
    """``M_{n1} + M_{n2} + ...`` realised on block-diagonal matrices."""
    N = sum(sizes)
    mats = []
    off = 0
    for n in sizes:
        for u in matrix_units(n):
            m = np.zeros((N, N))
            m[off:off + n, off:off + n] = u
            mats.append(m)
        off += n
    return from_matrix_basis(mats, name="+".join(f"M{n}" for n in sizes))


def commutative_algebra(n: int) -> FDStarAlgebra:
    """``C^n`` with the coordinate projections as basis."""
    c = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        c[i, i, i] = 1
    return FDStarAlgebra(c, np.eye(n), name=f"C^{n}")


def group_algebra(table) -> FDStarAlgebra:
    """Complex group algebra with ``g* = g^{-1}``."""
    table = np.asarray(table)
    n = len(table)
    c = np.zeros((n, n, n), dtype=complex)
    J = np.zeros((n, n), dtype=complex)
    e = next(i for i in range(n) if all(table[i, j] == j for j in range(n)))
    for i in range(n):
        for j in range(n):
            c[i, j, table[i, j]] = 1
            if table[i, j] == e:
                J[j, i] = 1
    return FDStarAlgebra(c, J, name="C[G]")


def copies(alg: FDStarAlgebra, n: int) -> FDStarAlgebra:
    """``alg (x) C^n``; coordinates ordered ``(copy, basis)``."""
    d = alg.dim
    c = np.zeros((n * d,) * 3, dtype=complex)
    J = np.zeros((n * d, n * d), dtype=complex)
    for r in range(n):
        s = slice(r * d, (r + 1) * d)
        c[s, s, s] = alg.structure
        J[s, s] = alg.invol
    return FDStarAlgebra(c, J, name=f"{alg.name}(x)C^{n}")

