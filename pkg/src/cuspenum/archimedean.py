"""Archimedean side of the explicit formula.

Implements the integrals I(a, a'), the linear functional J on the ring of
archimedean parameters, the symmetric bilinear form B_infinity, and the
archimedean epsilon constants.
"""

from __future__ import annotations

import math
from functools import lru_cache

from scipy.integrate import quad
from scipy.special import exp1

from . import kinfty
from .kinfty import EPS, TRIV, KElement
from .testfn import OdlyzkoFunction, QuadratureError, odlyzko

_SERIES_CUTOFF = 1e-4


def i_integral(F: OdlyzkoFunction, a: float, a_prime: float) -> float:
    """Gamma-factor term of the explicit formula for a factor Gamma(a s + a'):

        I(a, a') = a * int_0^oo ( F(a y) e^{-(a/2 + a') y} / (1 - e^{-y})
                                  - F(0) e^{-y} / y ) dy.

    The prefactor a comes from d/ds log Gamma(a s + a') = a psi(a s + a');
    it reproduces the duplication identity J(I_0) = J(1) + J(eps) from
    Gamma_C(s) = Gamma_R(s) Gamma_R(s+1), which pins the normalization.

    The integrand vanishes with F beyond y = lam/a, where the integral
    reduces to the exact tail -F(0) E1(lam/a)."""
    if a <= 0:
        raise ValueError("a must be positive")
    c = a / 2.0 + a_prime
    if c <= 0:
        raise ValueError("need a/2 + a' > 0 for convergence")
    Y = F.lam / a
    f2 = F.second_derivative_at_zero() / 2.0
    # Taylor coefficients of the integrand about 0 (F(0) = 1, F'(0) = 0).
    t0 = 1.5 - c
    t1 = c * c / 2.0 + f2 * a * a - c / 2.0 + 1.0 / 12.0 - 0.5
    t2 = (-c ** 3 / 6.0 - f2 * a * a * c + c * c / 4.0 + f2 * a * a / 2.0
          - c / 12.0 + 1.0 / 6.0)

    def integrand(y: float) -> float:
        if y < _SERIES_CUTOFF:
            return t0 + y * (t1 + y * t2)
        return (F.value(a * y) * math.exp(-c * y) / (1.0 - math.exp(-y))
                - math.exp(-y) / y)

    value, err = quad(integrand, 0.0, Y, epsabs=1e-12, epsrel=1e-11, limit=200)
    if err > 1e-9:
        raise QuadratureError(f"I({a},{a_prime}): error bound {err:.3e} > 1e-9")
    return a * (value - float(exp1(Y)))


@lru_cache(maxsize=None)
def _j_basis(lam: float, symbol: str) -> float:
    """J on a single basis symbol, memoized on (lambda, symbol)."""
    F = odlyzko(lam)
    if symbol == TRIV:
        return 0.5 * math.log(math.pi) + i_integral(F, 0.5, 0.0)
    if symbol == EPS:
        return 0.5 * math.log(math.pi) + i_integral(F, 0.5, 0.5)
    w = int(symbol[1:])
    return math.log(2.0 * math.pi) + i_integral(F, 1.0, w / 2.0)


def j_functional(F: OdlyzkoFunction, v: KElement) -> float:
    """Z-linear extension of the three basis formulas."""
    return sum(c * _j_basis(F.lam, s) for s, c in v.coeffs)


def b_infinity(F: OdlyzkoFunction, u: KElement, v: KElement) -> float:
    """B_infinity(U, V) = J(U (x) V); duality is the identity, so the form is
    symmetric and Z-bilinear."""
    return j_functional(F, kinfty.tensor(u, v))


def eps_infinity(v: KElement) -> complex:
    """Archimedean epsilon constant: eps(TRIV) = 1, eps(EPS) = i,
    eps(I_n) = i^{n+1}, multiplied over the decomposition."""
    if not v.is_effective():
        raise ValueError(f"{v} is not effective")
    quarter_turns = 0
    for s, c in v.coeffs:
        if s == TRIV:
            continue
        if s == EPS:
            quarter_turns += c
        else:
            quarter_turns += c * (int(s[1:]) + 1)
    return 1j ** (quarter_turns % 4)
