"""The geometric method: calculable quadratic forms and negative witnesses.

Moving the provably nonnegative explicit-formula terms to one side leaves the
computable forms

    Co = Phi(0) delta' + (1/2) sum_p log(p) a_p - B_infinity
    C  = Co - (1/2) Phi(1/2) e_perp
    Cs = C - B2calc

which are positive semidefinite on effective combinations of representations
that actually exist.  A nonnegative vector t with t' G t < 0 therefore
forbids the simultaneous existence of the slotted representations.  The
module also hosts the multiplicity bounds derived from the diagonal of the
explicit formula.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import kinfty, registry as reg
from .archimedean import b_infinity
from .kinfty import KElement
from .registry import RepRecord, b2_calc, b2_calc_dual_pair_bound, e_perp, pair_exponent
from .testfn import OdlyzkoFunction, odlyzko

NEG_TOL = -1e-9
FORMS = ("Co", "C", "Cs")


@dataclass(frozen=True)
class Slot:
    """One representation slot: a known record, a putative one, an averaged
    block of `averaged_multiplicity` distinct putatives sharing the same data,
    or the averaged dual pair (pi + pi^dual)/2 of a non-self-dual putative."""

    record: RepRecord
    averaged_multiplicity: int = 1
    dual_pair: bool = False

    def __post_init__(self):
        if self.averaged_multiplicity < 1:
            raise ValueError("averaged multiplicity must be >= 1")
        if self.dual_pair:
            if self.record.selfdual == reg.YES:
                raise ValueError("dual-pair slot models a non-self-dual representation")
            if self.averaged_multiplicity != 2:
                raise ValueError("dual-pair slot averages exactly two representations")

    @property
    def label(self) -> str:
        if self.dual_pair:
            return f"dualpair({self.record.name})"
        if self.averaged_multiplicity > 1:
            return f"avg{self.averaged_multiplicity}({self.record.name})"
        return self.record.name


@dataclass
class GramMatrix:
    form: str
    lam: float
    slots: Tuple[Slot, ...]
    entries: np.ndarray


def _ramified_primes(slots: Sequence[Slot]) -> List[int]:
    return sorted({s.record.conductor for s in slots} - {1})


def gram(form: str, slots: Sequence[Slot], F: OdlyzkoFunction) -> GramMatrix:
    """Gram matrix of the requested form on the given slots."""
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}")
    slots = tuple(slots)
    n = len(slots)
    if form == "Cs":
        bad = [s.label for s in slots
               if s.record.conductor > 1 and s.record.local_sign is None
               and not s.dual_pair]
        if bad:
            raise ValueError(f"Cs needs a local sign (or dual_pair) for: {bad}")
        dp_primes = {s.record.conductor for s in slots if s.dual_pair}
        mixed = [s.label for s in slots
                 if not s.dual_pair and s.record.conductor in dp_primes]
        if mixed:
            raise ValueError(
                "Cs cannot mix a dual-pair slot with signed slots at the same "
                f"prime (no sound bound for the cross term): {mixed}")

    phi0 = F.phi_real(0.0)
    phi_half = F.phi_real(0.5)
    G = np.empty((n, n))
    for i, si in enumerate(slots):
        ri = si.record
        for j in range(i, n):
            rj = slots[j].record
            val = 0.0
            if i == j:
                val += phi0 / si.averaged_multiplicity
            for p in _ramified_primes((si, slots[j])):
                val += 0.5 * math.log(p) * pair_exponent(ri, rj, p)
            val -= b_infinity(F, ri.arch, rj.arch)
            if form in ("C", "Cs"):
                val -= 0.5 * phi_half * e_perp(ri, rj)
            if form == "Cs":
                if i == j and si.dual_pair:
                    val -= b2_calc_dual_pair_bound(F, ri.conductor)
                elif not si.dual_pair and not slots[j].dual_pair:
                    val -= b2_calc(F, ri, rj)
                # cross terms with a dual-pair slot only involve conductor-1
                # partners here (enforced above), where B2calc vanishes
            G[i, j] = G[j, i] = val
    return GramMatrix(form, F.lam, slots, G)


@dataclass
class Witness:
    support: Tuple[int, ...]
    vector: np.ndarray
    value: float


def _effective_eigen_minimum(M: np.ndarray):
    """Most negative eigenvalue of M carried by a sign-normalizable
    nonnegative eigenvector, with that vector; None if no eigenpair is
    effective."""
    vals, vecs = np.linalg.eigh(M)
    best = None
    for k in range(len(vals)):
        v = vecs[:, k]
        if (v >= -1e-12).all() or (v <= 1e-12).all():
            v = np.abs(v)
            if best is None or vals[k] < best[0]:
                best = (vals[k], v)
    return best


def _projected_descent(M: np.ndarray, iters: int = 400):
    """Projected gradient descent for min t' M t over the nonnegative unit
    sphere, started at the uniform point."""
    n = M.shape[0]
    t = np.ones(n) / math.sqrt(n)
    step = 0.5 / max(1.0, float(np.abs(M).max()))
    for _ in range(iters):
        t = t - step * (M @ t)
        t = np.clip(t, 0.0, None)
        norm = np.linalg.norm(t)
        if norm == 0.0:
            return None
        t /= norm
    return t


def find_negative_witness(G, tol: float = NEG_TOL) -> Optional[Witness]:
    """Search the nonnegative orthant for t with t' G t < tol.

    Face enumeration: for every support set S, eigen-decompose G_S and keep
    eigenpairs whose eigenvector is effective; a projected-gradient descent
    from the uniform point is used as a fallback.  Any returned witness is
    re-verified by direct evaluation."""
    M = G.entries if isinstance(G, GramMatrix) else np.asarray(G, dtype=float)
    n = M.shape[0]
    best: Optional[Witness] = None
    for size in range(1, n + 1):
        for S in itertools.combinations(range(n), size):
            sub = M[np.ix_(S, S)]
            hit = _effective_eigen_minimum(sub)
            if hit is None or hit[0] >= tol:
                continue
            t = np.zeros(n)
            t[list(S)] = hit[1]
            value = float(t @ M @ t)
            if value < tol and (best is None or value < best.value):
                best = Witness(S, t, value)
    if best is not None:
        return best
    t = _projected_descent(M)
    if t is not None:
        value = float(t @ M @ t)
        if value < tol:
            support = tuple(np.flatnonzero(t > 1e-12))
            return Witness(support, t, value)
    return None


@dataclass
class Certificate:
    lam: float
    form: str
    support: Tuple[str, ...]
    vector: Tuple[float, ...]
    value: float


@dataclass
class EliminationResult:
    slot: Slot
    eliminated: bool
    certificate: Optional[Certificate] = None


def eliminate(putative: Slot, knowns: Sequence[RepRecord],
              lams: Sequence[float], form: str = "C",
              max_cross: int = 4) -> EliminationResult:
    """Cross the putative slot against subsets of known representations over
    the test-function grid; elimination succeeds on the first verified
    negative witness whose support contains the putative."""
    known_slots = [Slot(r) for r in knowns]
    for lam in lams:
        F = odlyzko(lam)
        full = gram(form, [putative] + known_slots, F).entries
        for size in range(0, min(max_cross, len(known_slots)) + 1):
            for S in itertools.combinations(range(1, len(known_slots) + 1), size):
                idx = (0,) + S
                hit = _effective_eigen_minimum(full[np.ix_(idx, idx)])
                if hit is None or hit[0] >= NEG_TOL:
                    continue
                t = np.zeros(len(known_slots) + 1)
                t[list(idx)] = hit[1]
                value = float(t @ full @ t)
                if value < NEG_TOL:
                    names = (putative.label,) + tuple(knowns[i - 1].name for i in S)
                    cert = Certificate(lam, form, names,
                                       tuple(float(x) for x in t[list(idx)]), value)
                    return EliminationResult(putative, True, cert)
    return EliminationResult(putative, False)


@dataclass
class TaibiBounds:
    """Largest admissible multiplicities from the explicit-formula diagonal.
    None means the inequality puts no bound (nonpositive denominator)."""

    max_m1: Optional[int]
    max_m2: Optional[int]
    joint: Optional[int] = None


def taibi_bounds(V: KElement, F: OdlyzkoFunction, p: int = 2,
                 m1_known: Optional[int] = None) -> TaibiBounds:
    """Bounds m1 B <= Phi(0),  m2 (B - log p (dim V - 1)) <= Phi(0)  and the
    joint inequality (m1 + m2) B <= Phi(0) + log p m2 (dim V - m2/(m1+m2))."""
    if not V.is_effective():
        raise ValueError(f"{V} is not effective")
    B = b_infinity(F, V, V)
    phi0 = F.phi_real(0.0)
    n = kinfty.dim(V)
    logp = math.log(p)
    eps = 1e-9

    max_m1 = math.floor(phi0 / B + eps) if B > eps else None
    denom = B - logp * (n - 1)
    max_m2 = math.floor(phi0 / denom + eps) if denom > eps else None
    joint = None
    if m1_known is not None:
        if denom > eps:
            cap = max_m2 if max_m2 is not None else 10 ** 6
            m2 = 0
            while m2 + 1 <= cap:
                cand = m2 + 1
                total = m1_known + cand
                lhs = total * B
                rhs = phi0 + logp * cand * (n - cand / total)
                if lhs > rhs + eps:
                    break
                m2 = cand
            joint = m2
        # nonpositive denominator: the joint inequality holds for all m2
    return TaibiBounds(max_m1, max_m2, joint)


def parity_constraint(V: KElement, max_m2: int) -> int:
    """Even weight and distinct archimedean weights force the conductor-p
    count to be even (non-self-dual representations pair with their duals);
    returns the largest even integer <= max_m2."""
    if kinfty.motivic_weight(V) % 2 != 0:
        raise ValueError("parity argument needs an even motivic weight")
    if not kinfty.is_regular(V):
        raise ValueError("parity argument needs distinct archimedean weights")
    if max_m2 < 0:
        raise ValueError("max_m2 must be nonnegative")
    return max_m2 - (max_m2 % 2)


def putative_record(arch: KElement, conductor: int = 2,
                    selfdual: str = "unknown",
                    local_sign: Optional[int] = None,
                    name: Optional[str] = None) -> RepRecord:
    """Record for a hypothetical representation with the given data."""
    return RepRecord(
        name=name or f"putative[{arch}]",
        rank=kinfty.dim(arch),
        conductor=conductor,
        arch=arch,
        selfdual=selfdual,
        nature="symplectic" if selfdual == reg.YES and conductor > 1 else "unknown",
        local_sign=local_sign,
    )
