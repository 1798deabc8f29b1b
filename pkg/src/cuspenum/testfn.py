"""The Odlyzko test-function family and its transform.

F_lambda(x) = g(x/lambda) / cosh(x/2) where g = 2 u*u is the autoconvolution
of the half-period cosine u(x) = cos(pi x) on [-1/2, 1/2].  F_lambda is even,
nonnegative, supported on [-lambda, lambda], satisfies F_lambda(0) = 1 and is
Phi-positive, which is what makes every explicit-formula term sign-definite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from scipy.integrate import quad

QUAD_ABS_TOL = 1e-9
_QUAD_OPTS = dict(epsabs=1e-12, epsrel=1e-11, limit=200)


def g(x: float) -> float:
    """Closed form of the autoconvolution 2 u*u: for |x| <= 1,
    g(x) = (1-|x|) cos(pi x) + sin(pi |x|)/pi, and 0 outside [-1, 1]."""
    ax = abs(x)
    if ax >= 1.0:
        return 0.0
    return (1.0 - ax) * math.cos(math.pi * ax) + math.sin(math.pi * ax) / math.pi


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature cannot certify the requested accuracy."""


def _checked_quad(fn, a: float, b: float, what: str, **kwargs):
    opts = dict(_QUAD_OPTS)
    opts.update(kwargs)
    value, err = quad(fn, a, b, **opts)
    if err > QUAD_ABS_TOL:
        raise QuadratureError(f"{what}: achieved error bound {err:.3e} > {QUAD_ABS_TOL:.1e}")
    return value


@dataclass(frozen=True)
class OdlyzkoFunction:
    """Odlyzko test function of parameter lambda > 0."""

    lam: float

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("lambda must be positive")

    def value(self, x: float) -> float:
        if abs(x) >= self.lam:
            return 0.0
        return g(x / self.lam) / math.cosh(x / 2.0)

    __call__ = value

    def second_derivative_at_zero(self) -> float:
        # g''(0) = -pi^2 and (d^2/dx^2) sech(x/2) at 0 is -1/4.
        return -math.pi ** 2 / self.lam ** 2 - 0.25

    def phi(self, s: complex) -> complex:
        """Phi(s) = int F(x) e^{(s - 1/2) x} dx over the support [-lam, lam]."""
        u = complex(s) - 0.5
        re = _checked_quad(lambda x: self.value(x) * math.exp(u.real * x) * math.cos(u.imag * x),
                           -self.lam, self.lam, f"Re Phi(s={s})")
        if u.imag == 0.0:
            return complex(re, 0.0) if isinstance(s, complex) else re
        im = _checked_quad(lambda x: self.value(x) * math.exp(u.real * x) * math.sin(u.imag * x),
                           -self.lam, self.lam, f"Im Phi(s={s})")
        return complex(re, im)

    def phi_real(self, s: float) -> float:
        return float(self.phi(float(s)))

    def prime_weights(self, p: int) -> List[Tuple[int, float]]:
        """All (k, F(k log p) log(p) / p^{k/2}) with k >= 1 and k log p < lambda."""
        logp = math.log(p)
        out = []
        k = 1
        while k * logp < self.lam:
            out.append((k, self.value(k * logp) * logp / p ** (k / 2.0)))
            k += 1
        return out

    def theta(self, p: int, z: complex) -> float:
        """Re sum_k weight_k z^k over the finite prime-weight list; |z| = 1."""
        if abs(abs(z) - 1.0) > 1e-12:
            raise ValueError("theta requires |z| = 1")
        return sum(w * (z ** k) for k, w in self.prime_weights(p)).real

    def theta_minimum_at_minus_one(self, p: int, grid: int = 720,
                                   slack: float = 1e-9) -> bool:
        """Check the observation min_{|z|=1} Theta(z) = Theta(-1) on a grid."""
        tm1 = self.theta(p, -1.0)
        for j in range(grid):
            z = complex(math.cos(2 * math.pi * j / grid), math.sin(2 * math.pi * j / grid))
            if self.theta(p, z) < tm1 - slack:
                return False
        return True


@lru_cache(maxsize=None)
def odlyzko(lam: float) -> OdlyzkoFunction:
    return OdlyzkoFunction(lam)


def lambda_grid(lo: float = 1.0, hi: float = 12.0) -> Tuple[float, ...]:
    """The tenth-integer grid of test-function parameters in [lo, hi]."""
    i0, i1 = round(lo * 10), round(hi * 10)
    return tuple(i / 10.0 for i in range(i0, i1 + 1))
