"""Artin-exponent and epsilon-sign arithmetic for W_F x SU(2) parameters.

A local parameter is a multiset of irreducible pieces X (x) U_d.  Only the
Artin exponent of X, its dimension, the SU(2) factor size and (for quadratic
unramified characters) the value of X at Frobenius are tracked; that is all
the pair-conductor and sign formulas consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

UNKNOWN = "unknown"


@dataclass(frozen=True)
class WDPiece:
    """Irreducible piece X (x) U_d of a W_F x SU(2) parameter."""

    a_w: int = 0
    dim_x: int = 1
    d: int = 1
    frob_sign: Optional[int] = None

    def __post_init__(self):
        if self.a_w < 0 or self.dim_x < 1 or self.d < 1:
            raise ValueError("invalid piece data")
        if self.a_w == 0 and self.dim_x != 1:
            raise ValueError("an unramified irreducible of W_F is a character")
        if 0 < self.a_w < self.dim_x:
            raise ValueError("ramified irreducible needs a_w >= dim_x")
        if self.frob_sign is not None:
            if self.a_w != 0:
                raise ValueError("frob_sign only applies to unramified characters")
            if self.frob_sign not in (1, -1):
                raise ValueError("frob_sign must be +1 or -1")

    @property
    def ramified(self) -> bool:
        return self.a_w > 0

    @property
    def dim(self) -> int:
        return self.dim_x * self.d


@dataclass(frozen=True)
class WDRep:
    """Semisimple parameter: a multiset of pieces."""

    pieces: Tuple[WDPiece, ...]

    @staticmethod
    def of(pieces: Iterable[WDPiece]) -> "WDRep":
        pieces = tuple(pieces)
        if not pieces:
            raise ValueError("a representation of positive dimension has pieces")
        return WDRep(pieces)

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.pieces)

    def all_unramified(self) -> bool:
        return all(not p.ramified for p in self.pieces)


def unramified_chars(n: int) -> WDRep:
    """n unramified characters (Frobenius values unspecified)."""
    return WDRep.of(WDPiece() for _ in range(n))


def inverse_pair_chars(n_pairs: int) -> WDRep:
    """2*n_pairs unramified characters grouped in inverse pairs."""
    return unramified_chars(2 * n_pairs)


def type_one(n: int, psi_sign: Optional[int] = None) -> WDRep:
    """Type (I) parameter of GL_n: (n-2) unramified characters plus psi (x) U_2."""
    if n < 2:
        raise ValueError("type (I) needs n >= 2")
    chars = [WDPiece() for _ in range(n - 2)]
    return WDRep.of(chars + [WDPiece(d=2, frob_sign=psi_sign)])


def awd(p: WDPiece) -> int:
    """Artin exponent of a single piece: d-1 for an unramified character,
    d * a_W(X) for a ramified X (whose inertia invariants vanish)."""
    if p.a_w == 0:
        return p.d - 1
    return p.d * p.a_w


def rep_exponent(r: WDRep) -> int:
    """Exponent of a parameter: additive over pieces."""
    return sum(awd(p) for p in r.pieces)


def _su2_tensor(d: int, e: int) -> Iterable[int]:
    """Clebsch-Gordan: U_d (x) U_e = sum of U_{|d-e|+1+2k}, k < min(d,e)."""
    for k in range(min(d, e)):
        yield abs(d - e) + 1 + 2 * k


def tensor_exponent(r1: WDRep, r2: WDRep) -> int:
    """Artin exponent of the tensor product of two everywhere-unramified
    parameters, via the Clebsch-Gordan expansion on the SU(2) factors."""
    for r in (r1, r2):
        if not r.all_unramified():
            raise ValueError("tensor_exponent only covers unramified pieces; "
                             "only the Henniart bound applies to ramified ones")
    total = 0
    for p1 in r1.pieces:
        for p2 in r2.pieces:
            # product of two unramified characters is unramified
            total += sum(f - 1 for f in _su2_tensor(p1.d, p2.d))
    return total


def henniart_bound(a1: int, n1: int, a2: int, n2: int) -> int:
    """a(pi x pi') <= n2 a1 + n1 a2 - min(a1, a2)."""
    if a1 < 0 or a2 < 0 or n1 < 1 or n2 < 1:
        raise ValueError("need a_i >= 0 and n_i >= 1")
    return n2 * a1 + n1 * a2 - min(a1, a2)


def epsilon_sign(r: WDRep):
    """Local epsilon sign of an unramified-piece parameter: the product over
    pieces of (-X(Fr))^{d-1}.  Characters grouped in inverse pairs contribute
    +1 jointly, so unspecified d=1 characters are harmless; a d>1 piece with
    no recorded Frobenius sign makes the result unknown."""
    sign = 1
    for p in r.pieces:
        if p.ramified:
            return UNKNOWN
        if p.d == 1:
            continue
        if (p.d - 1) % 2 == 0:
            continue
        if p.frob_sign is None:
            return UNKNOWN
        sign *= -p.frob_sign
    return sign


def pair_epsilon_sign(r1: WDRep, r2: WDRep):
    """Epsilon sign at p of a pair of unramified / type (I) parameters with
    central character trivial on units.

    With at most one U_2 piece per side and Frobenius signs in {+-1}:
      unramified x unramified -> 1,
      unramified (GL_m) x type (I) -> (-1)^m psi(p)^m omega(p),
      type (I) x type (I) -> (-1)^{n+n'} psi^{n'-2} psi'^{n-2} omega omega',
    where the central-character values omega(p) are 1 for the self-dual
    inverse-pair shapes fed in by the registry."""
    for r in (r1, r2):
        if not r.all_unramified():
            raise ValueError("pair_epsilon_sign needs unramified pieces only")
        if sum(1 for p in r.pieces if p.d > 2) > 0:
            raise ValueError("pieces beyond U_2 do not occur for conductor <= p")
        if sum(1 for p in r.pieces if p.d == 2) > 1:
            raise ValueError("at most one U_2 piece per parameter")

    def u2_sign(r: WDRep):
        for p in r.pieces:
            if p.d == 2:
                return p.frob_sign if p.frob_sign is not None else UNKNOWN
        return None  # no U_2 piece: unramified parameter

    s1, s2 = u2_sign(r1), u2_sign(r2)
    n1, n2 = r1.dim, r2.dim
    if s1 is None and s2 is None:
        return 1
    if s1 is None or s2 is None:
        ram_sign, m = (s2, n1) if s1 is None else (s1, n2)
        if ram_sign is UNKNOWN:
            return UNKNOWN
        return (-1) ** m * ram_sign ** m
    if s1 is UNKNOWN or s2 is UNKNOWN:
        return UNKNOWN
    return (-1) ** (n1 + n2) * s1 ** (n2 - 2) * s2 ** (n1 - 2)


def dual(r: WDRep) -> WDRep:
    """Dual parameter: chi -> chi^{-1} piecewise; exponent data unchanged,
    recorded +-1 Frobenius values are their own inverses."""
    return r
