"""Grothendieck ring of continuous W_R-representations trivial on R_{>0}.

Basis symbols: TRIV (the trivial character), EPS (the order-2 character
trivial on W_C) and IND(w) for w >= 1 (the 2-dimensional induced
representation of weight w).  Every basis element is self-dual, so duality
is the identity on the whole ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Dict, Iterable, Mapping, Tuple

TRIV = "1"
EPS = "eps"


def IND(w: int) -> str:
    if w < 1:
        raise ValueError(f"IND weight must be >= 1, got {w}")
    return f"I{w}"


def _symbol_weight(symbol: str) -> int:
    """Weight label of a basis symbol: 0 for TRIV/EPS, w for IND(w)."""
    if symbol in (TRIV, EPS):
        return 0
    return int(symbol[1:])


def _symbol_dim(symbol: str) -> int:
    return 1 if symbol in (TRIV, EPS) else 2


@total_ordering
@dataclass(frozen=True)
class KElement:
    """Integer formal sum over the basis {TRIV, EPS, IND(w)}."""

    coeffs: Tuple[Tuple[str, int], ...]

    @staticmethod
    def from_dict(coeffs: Mapping[str, int]) -> "KElement":
        items = tuple(sorted(
            ((s, int(c)) for s, c in coeffs.items() if c != 0),
            key=lambda sc: (_symbol_weight(sc[0]), sc[0]),
            reverse=True,
        ))
        for s, _ in items:
            if s not in (TRIV, EPS) and not re.fullmatch(r"I[1-9]\d*", s):
                raise ValueError(f"unknown basis symbol {s!r}")
        return KElement(items)

    def as_dict(self) -> Dict[str, int]:
        return dict(self.coeffs)

    def __getitem__(self, symbol: str) -> int:
        return dict(self.coeffs).get(symbol, 0)

    def __add__(self, other: "KElement") -> "KElement":
        out = self.as_dict()
        for s, c in other.coeffs:
            out[s] = out.get(s, 0) + c
        return KElement.from_dict(out)

    def __mul__(self, n: int) -> "KElement":
        return KElement.from_dict({s: n * c for s, c in self.coeffs})

    __rmul__ = __mul__

    def __lt__(self, other: "KElement") -> bool:
        return self.coeffs < other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_effective(self) -> bool:
        return all(c >= 0 for _, c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for s, c in self.coeffs:
            if c == 1:
                parts.append(s)
            else:
                parts.append(f"{c}*{s}")
        return "+".join(parts)

    __repr__ = __str__


def basis(symbol: str) -> KElement:
    return KElement.from_dict({symbol: 1})


ZERO = KElement(())
ONE = basis(TRIV)


def parse(text: str) -> KElement:
    """Parse the text form, e.g. "I17+I5", "I14+eps", "2*I21+I3"."""
    text = text.strip()
    if text in ("0", ""):
        return ZERO
    out: Dict[str, int] = {}
    for part in text.split("+"):
        part = part.strip()
        m = re.fullmatch(r"(?:(\d+)\*)?(1|triv|eps|I[1-9]\d*)", part)
        if m is None:
            raise ValueError(f"cannot parse KElement term {part!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        sym = TRIV if m.group(2) == "triv" else m.group(2)
        out[sym] = out.get(sym, 0) + mult
    return KElement.from_dict(out)


def _tensor_basis(a: str, b: str) -> KElement:
    """Tensor product of two basis symbols, as a KElement."""
    if a == TRIV:
        return basis(b)
    if b == TRIV:
        return basis(a)
    if a == EPS and b == EPS:
        return basis(TRIV)
    if a == EPS or b == EPS:
        return basis(a if b == EPS else b)
    n, m = _symbol_weight(a), _symbol_weight(b)
    out: Dict[str, int] = {IND(n + m): 1}
    d = abs(n - m)
    if d == 0:
        out[TRIV] = 1
        out[EPS] = 1
    else:
        out[IND(d)] = out.get(IND(d), 0) + 1
    return KElement.from_dict(out)


def tensor(a: KElement, b: KElement) -> KElement:
    """Bilinear extension of the basis rules I_n (x) I_m = I_{n+m} + I_|n-m|,
    with I_0 = TRIV + EPS, eps (x) eps = TRIV, I_n (x) eps = I_n."""
    out: Dict[str, int] = {}
    for sa, ca in a.coeffs:
        for sb, cb in b.coeffs:
            for s, c in _tensor_basis(sa, sb).coeffs:
                out[s] = out.get(s, 0) + ca * cb * c
    return KElement.from_dict(out)


def dual(v: KElement) -> KElement:
    """Duality is the identity: every basis element is self-dual."""
    return v


def dim(v: KElement) -> int:
    return sum(c * _symbol_dim(s) for s, c in v.coeffs)


def det(v: KElement) -> str:
    """Determinant class in {TRIV, EPS}: det I_w = eps^{w+1}, combined by
    parity across the formal sum."""
    parity = 0
    for s, c in v.coeffs:
        if s == EPS:
            parity += c
        elif s != TRIV:
            parity += c * (_symbol_weight(s) + 1)
    return EPS if parity % 2 else TRIV


def _require_effective(v: KElement) -> None:
    if not v.is_effective():
        raise ValueError(f"{v} is not effective")


def motivic_weight(v: KElement) -> int:
    """Largest w with a nonzero IND(w) coefficient (0 if only TRIV/EPS)."""
    _require_effective(v)
    return max((_symbol_weight(s) for s, c in v.coeffs if c), default=0)


def weight_labels(v: KElement) -> Dict[int, int]:
    """Multiplicity of each weight label: 0 carries c_TRIV + c_EPS."""
    out: Dict[int, int] = {}
    for s, c in v.coeffs:
        w = _symbol_weight(s)
        out[w] = out.get(w, 0) + c
    return out


def is_regular(v: KElement) -> bool:
    """All weights (as half-integers, 0 for TRIV/EPS) distinct."""
    _require_effective(v)
    return all(c <= 1 for c in weight_labels(v).values())


def is_very_regular(v: KElement) -> bool:
    """Regular, with every pair of distinct weight labels further than 2 apart."""
    if not is_regular(v):
        return False
    ws = sorted(weight_labels(v))
    return all(b - a > 2 for a, b in zip(ws, ws[1:]))


def sublevel_basis(w: int) -> Tuple[str, ...]:
    """Basis of the sublevel group at motivic weight w: I_v for 0 < v <= w of
    the parity of w, plus TRIV and EPS when w is even."""
    if w < 1:
        raise ValueError("motivic weight must be >= 1")
    if w % 2:
        return tuple(IND(v) for v in range(1, w + 1, 2))
    return (TRIV, EPS) + tuple(IND(v) for v in range(2, w + 1, 2))


def elements_from_weights(weights: Iterable[int]) -> KElement:
    """KElement with one IND(w) per listed odd weight (e.g. (19, 11) -> I19+I11)."""
    out: Dict[str, int] = {}
    for w in weights:
        out[IND(w)] = out.get(IND(w), 0) + 1
    return KElement.from_dict(out)
