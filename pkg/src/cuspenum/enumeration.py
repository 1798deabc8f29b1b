"""Exhaustive enumeration of archimedean candidates at a given motivic weight.

A conductor-p representation of motivic weight w has an effective archimedean
parameter V in the sublevel group at w with nonzero top coefficient, trivial
determinant, and

    B_infinity^F(V, V) <= Phi_F(0) + (dim V - 1) log p

for every positive Phi-positive test function F, as well as
J_{F_log2}(V) <= (log p)/2.  Positive-definiteness of B_infinity for one
witness parameter makes the solution set finite; the witness ellipsoid is
enumerated by branch and bound over the coefficient lattice, then the full
grid of inequalities is applied.
"""

from __future__ import annotations

import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import kinfty
from .archimedean import _j_basis, b_infinity, j_functional
from .kinfty import EPS, TRIV, KElement
from .testfn import lambda_grid, odlyzko

DEFINITENESS_LAMBDA = 2.0
_TOL = 1e-9


class CertificationError(RuntimeError):
    """The positive-definiteness certificate for the enumeration failed."""


def _tensor_j(lam: float, s1: str, s2: str) -> float:
    return sum(c * _j_basis(lam, s) for s, c in kinfty._tensor_basis(s1, s2).coeffs)


def basis_gram(lam: float, symbols: Sequence[str]) -> np.ndarray:
    """Gram matrix of B_infinity^{F_lam} on the given basis symbols."""
    n = len(symbols)
    G = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            G[i, j] = G[j, i] = _tensor_j(lam, symbols[i], symbols[j])
    return G


def _ellipsoid_points(R: np.ndarray, x0: np.ndarray, rhs: float,
                      mins: np.ndarray,
                      consume: Optional[Callable[[np.ndarray], None]] = None,
                      chunk: int = 1 << 17) -> Optional[List[np.ndarray]]:
    """Integer points x >= mins with ||R (x - x0)||^2 <= rhs, R upper
    triangular.  With `consume`, points are streamed in row-matrix chunks
    (bounded memory) and None is returned."""
    n = R.shape[0]
    out: List[np.ndarray] = []
    buf: List[List[int]] = []
    x = np.zeros(n, dtype=int)

    def flush():
        if buf and consume is not None:
            consume(np.array(buf, dtype=float))
            buf.clear()

    def recurse(k: int, budget: float, partial: np.ndarray):
        # partial[i] = sum_{j>k} R[i, j] (x[j] - x0[j])
        rkk = R[k, k]
        center = x0[k] - partial[k] / rkk
        half = math.sqrt(max(budget, 0.0)) / rkk
        lo = max(int(math.ceil(center - half - 1e-12)), int(mins[k]))
        hi = int(math.floor(center + half + 1e-12))
        for v in range(lo, hi + 1):
            x[k] = v
            s = rkk * (v - x0[k]) + partial[k]
            rem = budget - s * s
            if rem < -1e-12:
                continue
            if k == 0:
                if consume is None:
                    out.append(x.copy())
                else:
                    buf.append(x.tolist())
                    if len(buf) >= chunk:
                        flush()
            else:
                recurse(k - 1, rem, partial + (v - x0[k]) * R[:, k])

    recurse(n - 1, rhs, np.zeros(n))
    flush()
    return None if consume is not None else out


def _det_trivial(symbols: Sequence[str], x: np.ndarray) -> bool:
    parity = 0
    for s, c in zip(symbols, x):
        if s == TRIV:
            continue
        if s == EPS:
            parity += c
        else:
            parity += c * (int(s[1:]) + 1)
    return parity % 2 == 0


def finiteness_bound_holds(lam: float, v: KElement, log_p: float,
                           tol: float = _TOL) -> bool:
    """B_infinity^{F_lam}(V, V) <= Phi(0) + (dim V - 1) log p, up to tol."""
    F = odlyzko(lam)
    return b_infinity(F, v, v) <= F.phi_real(0.0) + (kinfty.dim(v) - 1) * log_p + tol


def default_filter(conductor: int, grid: Sequence[float]) -> Callable[[KElement], bool]:
    """The step-1 filter: the finiteness inequality for every grid parameter
    and the pair-with-1 inequality J_{F_log p}(V) <= (log p)/2."""
    log_p = math.log(conductor)
    Flog = odlyzko(log_p)

    def ok(v: KElement) -> bool:
        if j_functional(Flog, v) > log_p / 2.0 + _TOL:
            return False
        return all(finiteness_bound_holds(lam, v, log_p) for lam in grid)

    return ok


def enumerate_candidates(w: int, conductor: int = 2,
                         inequality_filter: Optional[Callable[[KElement], bool]] = None,
                         grid: Optional[Sequence[float]] = None,
                         definiteness_lambda: float = DEFINITENESS_LAMBDA,
                         apply_j_test: bool = True,
                         ) -> List[KElement]:
    """All effective elements of the sublevel group at w with top coefficient
    >= 1, trivial determinant, and passing the inequality filter (by default
    the full lambda-grid finiteness test plus the J test at log p)."""
    if conductor < 2:
        raise ValueError("candidate enumeration is for a prime conductor")
    log_p = math.log(conductor)
    symbols = kinfty.sublevel_basis(w)
    n = len(symbols)
    top = symbols.index(kinfty.IND(w))

    G = basis_gram(definiteness_lambda, symbols)
    if np.linalg.eigvalsh(G)[0] <= 0:
        # the requested witness fails; scan upward for a definite one
        for lam in [l / 2.0 for l in range(int(2 * definiteness_lambda) + 1, 25)]:
            G = basis_gram(lam, symbols)
            if np.linalg.eigvalsh(G)[0] > 0:
                definiteness_lambda = lam
                break
        else:
            raise CertificationError(
                f"no positive-definite witness for B_infinity on the sublevel "
                f"basis at w={w}; finiteness is not certified")

    F_star = odlyzko(definiteness_lambda)
    phi0 = F_star.phi_real(0.0)
    d = np.array([1.0 if s in (TRIV, EPS) else 2.0 for s in symbols])
    b = log_p * d
    x0 = np.linalg.solve(G, b / 2.0)
    rhs = phi0 - log_p + float(x0 @ G @ x0) + 1e-9
    if rhs < 0:
        return []
    R = np.linalg.cholesky(G).T
    mins = np.zeros(n)
    mins[top] = 1

    the_grid = tuple(grid or lambda_grid())
    pre_lam = the_grid[0]
    G_pre = basis_gram(pre_lam, symbols)
    phi0_pre = odlyzko(pre_lam).phi_real(0.0)

    chunks: List[np.ndarray] = []

    def consume(X: np.ndarray) -> None:
        # cheap prefilter with the first grid parameter keeps memory bounded
        quad = np.einsum("ij,jk,ik->i", X, G_pre, X)
        bound = phi0_pre + (X @ d - 1.0) * log_p + _TOL
        survivors = X[quad <= bound]
        if survivors.size:
            chunks.append(survivors)

    _ellipsoid_points(R, x0, rhs, mins, consume=consume)
    if not chunks:
        return []
    X = np.vstack(chunks)
    X = X[[_det_trivial(symbols, row) for row in X.astype(int)]]
    if X.size == 0:
        return []
    order = np.lexsort(tuple(X[:, i] for i in reversed(range(n))) + (X.sum(axis=1),))
    X = X[order]

    if inequality_filter is not None:
        out = []
        for x in X.astype(int):
            v = KElement.from_dict({s: int(c) for s, c in zip(symbols, x)})
            if inequality_filter(v):
                out.append(v)
        return out

    keep = np.ones(len(X), dtype=bool)
    for lam in the_grid[1:]:
        Glam = basis_gram(lam, symbols)
        live = np.flatnonzero(keep)
        if live.size == 0:
            return []
        Xl = X[live]
        quad = np.einsum("ij,jk,ik->i", Xl, Glam, Xl)
        bound = odlyzko(lam).phi_real(0.0) + (Xl @ d - 1.0) * log_p + _TOL
        keep[live[quad > bound]] = False
    if apply_j_test:
        jvals = np.array([_j_basis(log_p, s) for s in symbols])
        keep &= X @ jvals <= log_p / 2.0 + _TOL
    return [KElement.from_dict({s: int(c) for s, c in zip(symbols, x)})
            for x, k in zip(X.astype(int), keep) if k]
