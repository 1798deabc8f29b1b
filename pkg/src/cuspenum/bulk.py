"""Vectorized crossings for large candidate batches.

Same mathematics as elimination.eliminate (form C, putative treated as
non-self-dual with trivial sign, which is sound for any actual sign by the
flexibility lemma), specialized to crossings with one or two known
representations and evaluated with numpy over the whole candidate batch.
"""

from __future__ import annotations

import itertools
import math
from typing import List, Sequence, Tuple

import numpy as np

from . import kinfty
from .elimination import NEG_TOL, Slot, gram
from .enumeration import basis_gram
from .kinfty import EPS, TRIV, KElement
from .registry import RepRecord
from .testfn import odlyzko


def _symbol_space(w: int) -> Tuple[str, ...]:
    return kinfty.sublevel_basis(w) + ((TRIV, EPS) if w % 2 else ())


def _coeff_matrix(elements: Sequence[KElement], symbols: Sequence[str]) -> np.ndarray:
    index = {s: i for i, s in enumerate(symbols)}
    X = np.zeros((len(elements), len(symbols)))
    for r, v in enumerate(elements):
        for s, c in v.coeffs:
            X[r, index[s]] = c
    return X


def crossing_survivors(candidates: Sequence[KElement], knowns: Sequence[RepRecord],
                       lams: Sequence[float], conductor: int = 2,
                       max_cross: int = 2) -> np.ndarray:
    """Boolean mask of candidates NOT eliminated by form-C crossings with up
    to max_cross (1 or 2) known representations over the given grid."""
    if max_cross not in (1, 2):
        raise ValueError("bulk crossings support subset sizes 1 and 2")
    n_cand = len(candidates)
    alive = np.ones(n_cand, dtype=bool)
    if n_cand == 0 or not knowns:
        return alive
    w_max = max(kinfty.motivic_weight(v) for v in candidates)
    symbols = _symbol_space(w_max)
    X = _coeff_matrix(candidates, symbols)
    K = _coeff_matrix([r.arch for r in knowns], symbols)
    dims = np.array([float(kinfty.dim(v)) for v in candidates])
    ranks = np.array([float(r.rank) for r in knowns])
    ram = np.array([r.conductor == conductor for r in knowns])
    logp = math.log(conductor)

    # pair exponents a_p(candidate, known): rank for an unramified known,
    # dim + rank - 2 when the known shares the ramified prime
    a_cross = np.where(ram[None, :], dims[:, None] + ranks[None, :] - 2.0,
                       ranks[None, :])

    known_slots = [Slot(r) for r in knowns]
    pair_idx = list(itertools.combinations(range(len(knowns)), 2)) \
        if max_cross >= 2 else []

    for lam in lams:
        F = odlyzko(lam)
        live = np.flatnonzero(alive)
        if live.size == 0:
            break
        Gb = basis_gram(lam, symbols)
        phi0 = F.phi_real(0.0)
        Xl = X[live]
        # putative diagonal: Phi(0) + (log p / 2)(2n - 2) - B_inf(V, V)
        A = phi0 + logp * (dims[live] - 1.0) - np.einsum("ij,jk,ik->i", Xl, Gb, Xl)
        # cross entries: (log p / 2) a_p - B_inf(V, V_k)
        B = 0.5 * logp * a_cross[live] - Xl @ Gb @ K.T
        # known-known block of the C form (includes their e_perp terms)
        CK = gram("C", known_slots, F).entries
        D = np.diag(CK)

        # singles: minimum of the 2x2 [[A, B],[B, D]] on the nonnegative
        # quadrant: endpoints A, D, and the interior eigenvalue when B < 0
        # (only then is the minimizing eigenvector effective)
        AA = A[:, None]
        DD = D[None, :]
        interior = 0.5 * ((AA + DD) - np.sqrt((AA - DD) ** 2 + 4.0 * B * B))
        value = np.minimum(np.minimum(AA, DD), np.where(B < 0, interior, np.inf))
        killed = (value < NEG_TOL).any(axis=1)

        if pair_idx and not killed.all():
            todo = np.flatnonzero(~killed)
            M = np.empty((todo.size, len(pair_idx), 3, 3))
            for c, (i, j) in enumerate(pair_idx):
                M[:, c, 0, 0] = A[todo]
                M[:, c, 0, 1] = M[:, c, 1, 0] = B[todo, i]
                M[:, c, 0, 2] = M[:, c, 2, 0] = B[todo, j]
                M[:, c, 1, 1] = D[i]
                M[:, c, 2, 2] = D[j]
                M[:, c, 1, 2] = M[:, c, 2, 1] = CK[i, j]
            vals, vecs = np.linalg.eigh(M)
            # clip eigenvectors to the nonnegative orthant and re-evaluate;
            # for an exactly effective eigenvector this is the eigenvalue,
            # and near-misses still certify when the clipped value is negative
            cl = np.clip(np.where(vecs.sum(axis=2, keepdims=True) >= 0, vecs, -vecs),
                         0.0, None)
            norms = np.linalg.norm(cl, axis=2)          # (..., eigvec index)
            ok = norms > 1e-9
            cl = cl / np.where(ok, norms, 1.0)[..., None, :]
            clipped_vals = np.einsum("npik,npij,npjk->npk", cl, M, cl)
            clipped_vals = np.where(ok, clipped_vals, np.inf)
            killed[todo] = (clipped_vals.min(axis=(1, 2)) < NEG_TOL)

        alive[live[killed]] = False
    return alive
