"""Database of known and putative automorphic representations.

Each record carries exactly the data the explicit formula consumes: rank,
conductor, archimedean parameter, self-duality, symplectic/orthogonal nature
and the local epsilon sign at the ramified prime.  All pairwise quantities
(pair conductor exponents, the central-zero indicator e_perp, the computable
part of the prime term B2calc) are derived here.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import kinfty, weil_deligne
from .archimedean import eps_infinity
from .kinfty import KElement
from .testfn import OdlyzkoFunction
from .weil_deligne import UNKNOWN, WDRep

YES, NO = "yes", "no"


class DataError(ValueError):
    """Malformed registry or dimension-table input."""


@dataclass(frozen=True)
class RepRecord:
    name: str
    rank: int
    conductor: int
    arch: KElement
    selfdual: str = "unknown"
    nature: str = "unknown"
    local_sign: Optional[int] = None

    def __post_init__(self):
        if self.rank < 1:
            raise DataError(f"{self.name}: rank must be >= 1")
        if self.conductor != 1 and not _is_prime(self.conductor):
            raise DataError(f"{self.name}: conductor must be 1 or a prime")
        if kinfty.dim(self.arch) != self.rank:
            raise DataError(f"{self.name}: dim(arch) != rank")
        if kinfty.det(self.arch) != kinfty.TRIV:
            raise DataError(f"{self.name}: det(arch) must be trivial")
        if self.selfdual not in (YES, NO, "unknown"):
            raise DataError(f"{self.name}: bad selfdual value {self.selfdual!r}")
        if self.nature not in ("symplectic", "orthogonal", "unknown"):
            raise DataError(f"{self.name}: bad nature value {self.nature!r}")
        if self.conductor > 1:
            if self.rank < 2:
                raise DataError(f"{self.name}: prime conductor of type (I) needs rank >= 2")
            if self.selfdual == YES:
                # self-dual of prime conductor and type (I) is symplectic, even rank
                if self.nature == "orthogonal":
                    raise DataError(f"{self.name}: self-dual type (I) cannot be orthogonal")
                if self.rank % 2:
                    raise DataError(f"{self.name}: self-dual type (I) needs even rank")
                if self.local_sign not in (1, -1):
                    raise DataError(f"{self.name}: self-dual type (I) needs a local sign")
        elif self.local_sign is not None:
            raise DataError(f"{self.name}: local sign without ramified prime")
        if self.local_sign not in (None, 1, -1):
            raise DataError(f"{self.name}: local sign must be +-1")

    def local_parameter(self, p: int) -> WDRep:
        """Langlands parameter at p, up to the data the engine tracks."""
        if self.conductor != p:
            if self.name == "1" or (self.selfdual == YES and self.nature == "orthogonal"
                                    and self.rank == 1):
                return WDRep.of([weil_deligne.WDPiece(frob_sign=1)])
            return weil_deligne.unramified_chars(self.rank)
        psi = -self.local_sign if self.local_sign is not None else None
        return weil_deligne.type_one(self.rank, psi_sign=psi)

    def global_sign(self):
        """Global epsilon of the representation itself (pair with 1):
        eps_infinity(arch) times the local sign at the ramified prime."""
        if self.selfdual != YES:
            return UNKNOWN
        eps = eps_infinity(self.arch)
        if self.conductor > 1:
            if self.local_sign is None:
                return UNKNOWN
            eps = eps * self.local_sign
        if abs(eps.imag) > 1e-12:
            return UNKNOWN
        return 1 if eps.real > 0 else -1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, int(n ** 0.5) + 1):
        if n % q == 0:
            return False
    return True


def pair_exponent(r1: RepRecord, r2: RepRecord, p: int) -> int:
    """Artin exponent at p of the pair: 0 for two unramified sides, m for
    unramified GL_m against type (I), n + n' - 2 for two type (I) sides."""
    ram1, ram2 = r1.conductor == p, r2.conductor == p
    if not ram1 and not ram2:
        return 0
    if ram1 and ram2:
        return r1.rank + r2.rank - 2
    return r2.rank if ram1 else r1.rank


def pair_global_epsilon(r1: RepRecord, r2: RepRecord):
    """Global epsilon of the pair, or UNKNOWN if a needed sign is missing."""
    eps = eps_infinity(kinfty.tensor(r1.arch, r2.arch))
    for p in sorted({r1.conductor, r2.conductor} - {1}):
        local = weil_deligne.pair_epsilon_sign(r1.local_parameter(p), r2.local_parameter(p))
        if local is UNKNOWN:
            return UNKNOWN
        eps = eps * local
    if abs(eps.imag) > 1e-12:
        return UNKNOWN
    return 1 if eps.real > 0 else -1


def e_perp(r1: RepRecord, r2: RepRecord) -> int:
    """1 iff both representations are self-dual and the global pair epsilon is
    determinably -1 (forcing a central zero); conservatively 0 otherwise."""
    if r1.selfdual != YES or r2.selfdual != YES:
        return 0
    if r1.nature == r2.nature and r1.nature != "unknown":
        return 0  # same-type pairs have epsilon 1
    eps = pair_global_epsilon(r1, r2)
    return 1 if eps == -1 else 0


def b2_calc(F: OdlyzkoFunction, r1: RepRecord, r2: RepRecord) -> float:
    """Computable part of the prime term: nonzero only for two type (I)
    representations at the same prime with known local signs."""
    p = r1.conductor
    if p == 1 or r2.conductor != p:
        return 0.0
    if r1.local_sign is None or r2.local_sign is None:
        return 0.0
    s = r1.local_sign * r2.local_sign
    return sum(w * s ** k for k, w in F.prime_weights(p))


def b2_calc_dual_pair_bound(F: OdlyzkoFunction, p: int) -> float:
    """Lower bound (Theta(1) + Theta(-1)) / 2 for the diagonal B2calc value of
    the averaged dual pair (pi + pi^dual)/2 of a non-self-dual conductor-p
    representation.  Valid only under the verified observation that Theta
    attains its minimum on the unit circle at -1."""
    if not F.theta_minimum_at_minus_one(p):
        raise ValueError(
            f"Theta minimum-at-(-1) observation fails for lambda={F.lam}, p={p}; "
            "the dual-pair bound is not certified")
    return 0.5 * (F.theta(p, 1.0) + F.theta(p, -1.0))


_NAME_RE = re.compile(r"(E|Delta)(\d+(?:,\d+)*)([+-])?([a-z])?$")


def arch_from_name(name: str) -> Optional[KElement]:
    """Reconstruct the archimedean parameter from a conventional name like
    'Delta19,7' or 'E19,13,3-'; None if the name is not of that shape."""
    if name == "1":
        return kinfty.ONE
    m = _NAME_RE.match(name)
    if m is None:
        return None
    weights = [int(w) for w in m.group(2).split(",")]
    return kinfty.elements_from_weights(weights)


class Registry:
    """Read-only list of representation records with unique names."""

    def __init__(self, records: List[RepRecord]):
        names = [r.name for r in records]
        dups = {n for n in names if names.count(n) > 1}
        if dups:
            raise DataError(f"duplicate record names: {sorted(dups)}")
        self.records: Tuple[RepRecord, ...] = tuple(records)
        self._by_name: Dict[str, RepRecord] = {r.name: r for r in records}

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def __getitem__(self, name: str) -> RepRecord:
        return self._by_name[name]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def with_conductor(self, n: int) -> List[RepRecord]:
        return [r for r in self.records if r.conductor == n]

    def count_with_arch(self, conductor: int, arch: KElement) -> int:
        return sum(1 for r in self.records
                   if r.conductor == conductor and r.arch == arch)

    def extended(self, new_records: List[RepRecord]) -> "Registry":
        return Registry(list(self.records) + list(new_records))


def _parse_sign(text: str) -> Optional[int]:
    text = text.strip()
    if text in ("", "none", "None"):
        return None
    if text in ("+1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise DataError(f"bad sign field {text!r}")


def load_registry(path) -> Registry:
    """Load a knowns TSV with columns
    name, rank, conductor, arch, selfdual, nature, local_sign."""
    path = Path(path)
    records = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) != 7:
            raise DataError(f"{path}:{lineno}: expected 7 tab-separated fields, "
                            f"got {len(fields)}")
        name, rank, conductor, arch, selfdual, nature, sign = fields
        try:
            rec = RepRecord(
                name=name,
                rank=int(rank),
                conductor=int(conductor),
                arch=kinfty.parse(arch),
                selfdual=selfdual,
                nature=nature,
                local_sign=_parse_sign(sign),
            )
        except (ValueError, DataError) as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from exc
        expected = arch_from_name(name)
        if expected is not None and expected != rec.arch:
            raise DataError(f"{path}:{lineno}: name {name!r} implies arch "
                            f"{expected}, file says {rec.arch}")
        records.append(rec)
    return Registry(records)


def save_registry(registry: Registry, path) -> None:
    lines = ["#name\trank\tconductor\tarch\tselfdual\tnature\tlocal_sign"]
    for r in registry:
        sign = {None: "none", 1: "+1", -1: "-1"}[r.local_sign]
        lines.append(f"{r.name}\t{r.rank}\t{r.conductor}\t{r.arch}\t"
                     f"{r.selfdual}\t{r.nature}\t{sign}")
    Path(path).write_text("\n".join(lines) + "\n")


class DimensionTables:
    """Ingested dimension data, keyed by (family, key).

    gamma0_new:  (p, k)            -> (dim_plus, dim_minus)   signed new forms
    siegel_para: (p, (w, v))       -> dim                     full space
    so_lattice:  (m, weights)      -> (dim_plus, dim_minus)   full space
    """

    def __init__(self):
        self.gamma0_new: Dict[Tuple[int, int], Tuple[int, int]] = {}
        self.siegel_para: Dict[Tuple[int, Tuple[int, int]], int] = {}
        self.so_lattice: Dict[Tuple[int, Tuple[int, ...]], Tuple[int, int]] = {}


def load_dimension_tables(path) -> DimensionTables:
    """Load every dimension-table TSV found under `path` (a directory):
    gamma0_new.tsv, siegel_para{p}.tsv, so_lattice.tsv."""
    path = Path(path)
    tables = DimensionTables()
    if not path.is_dir():
        raise DataError(f"{path}: not a directory")

    def rows(file: Path):
        for lineno, raw in enumerate(file.read_text().splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, [f.strip() for f in line.split("\t")]

    f = path / "gamma0_new.tsv"
    if f.exists():
        for lineno, fields in rows(f):
            if len(fields) != 4:
                raise DataError(f"{f}:{lineno}: expected k, p, dim_plus, dim_minus")
            k, p, plus, minus = map(int, fields)
            tables.gamma0_new[(p, k)] = (plus, minus)
    for f in sorted(path.glob("siegel_para*.tsv")):
        m = re.fullmatch(r"siegel_para(\d+)\.tsv", f.name)
        if m is None:
            raise DataError(f"{f}: file name must carry the prime, e.g. siegel_para2.tsv")
        p = int(m.group(1))
        for lineno, fields in rows(f):
            if len(fields) != 3:
                raise DataError(f"{f}:{lineno}: expected w, v, dim")
            w, v, d = map(int, fields)
            tables.siegel_para[(p, (w, v))] = d
    f = path / "so_lattice.tsv"
    if f.exists():
        for lineno, fields in rows(f):
            if len(fields) != 4:
                raise DataError(f"{f}:{lineno}: expected m, weights, dim_plus, dim_minus")
            m_val = int(fields[0])
            weights = tuple(int(w) for w in fields[1].split(","))
            tables.so_lattice[(m_val, weights)] = (int(fields[2]), int(fields[3]))
    return tables
