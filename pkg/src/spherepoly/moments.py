"""Sphere moments of monomials.

``moment_coeff(m, N)`` is the normalized average of ``x**(2m)`` over the unit
sphere in R^N:

    prod_i (2 m_i - 1)!!  /  prod_{k=1}^{w(m)} (N - 2 + 2k)

Two independent checks live here as well: ``moment_gamma_oracle`` evaluates
the classical Gamma-function closed form with exact half-integer expansions,
and ``monte_carlo_moment`` samples the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, pi, prod, sqrt

import numpy as np

from .combinatorics import MultiIndex, double_factorial
from .errors import DomainError


@dataclass(frozen=True)
class PiScaled:
    """The real number ``coeff * pi**pi_power``."""

    coeff: Fraction
    pi_power: Fraction

    def __mul__(self, other: "PiScaled") -> "PiScaled":
        return PiScaled(self.coeff * other.coeff, self.pi_power + other.pi_power)

    def __truediv__(self, other: "PiScaled") -> "PiScaled":
        return PiScaled(self.coeff / other.coeff, self.pi_power - other.pi_power)

    def __float__(self) -> float:
        return float(self.coeff) * pi ** float(self.pi_power)

    def __str__(self) -> str:
        if self.pi_power == 0:
            return str(self.coeff)
        return f"{self.coeff}*pi^{self.pi_power}"


def sphere_area(N: int) -> PiScaled:
    """Surface area of the unit sphere in R^N, as ``coeff * pi**k``."""
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if N % 2 == 0:
        # (2 pi)^(N/2) / (2*4*...*(N-2))
        half = N // 2
        denom = prod(range(2, N - 1, 2))
        return PiScaled(Fraction(2**half, denom), Fraction(half))
    half = (N - 1) // 2
    denom = prod(range(1, N - 1, 2))
    return PiScaled(Fraction(2 * 2**half, denom), Fraction(half))


@lru_cache(maxsize=None)
def moment_coeff(m: MultiIndex, N: int) -> Fraction:
    num = 1
    for mi in m:
        num *= double_factorial(2 * mi - 1)
    den = 1
    for k in range(1, sum(m) + 1):
        den *= N - 2 + 2 * k
    return Fraction(num, den)


def _check_eps(eps: MultiIndex, N: int) -> None:
    if len(eps) != N:
        raise DomainError(f"exponent vector has length {len(eps)}, expected {N}")
    if any(e < 0 for e in eps):
        raise DomainError(f"negative exponent in {tuple(eps)}")


def normalized_monomial_moment(eps: MultiIndex, N: int) -> Fraction:
    """Average of ``x**eps`` over the unit sphere; zero unless all exponents are even."""
    _check_eps(eps, N)
    if any(e & 1 for e in eps):
        return Fraction(0)
    return moment_coeff(tuple(e >> 1 for e in eps), N)


def _gamma_half(twice_arg: int) -> PiScaled:
    """Gamma(twice_arg / 2) expanded exactly."""
    if twice_arg <= 0:
        raise DomainError("Gamma argument must be positive")
    if twice_arg % 2 == 0:
        return PiScaled(Fraction(factorial(twice_arg // 2 - 1)), Fraction(0))
    # Gamma(k + 1/2) = (2k)! / (4^k k!) * sqrt(pi)
    k = (twice_arg - 1) // 2
    return PiScaled(Fraction(factorial(2 * k), 4**k * factorial(k)), Fraction(1, 2))


def moment_gamma_oracle(eps: MultiIndex, N: int) -> Fraction:
    """Sphere average of ``x**eps`` from the Gamma closed form.

    The raw integral is 2 * prod_i Gamma((eps_i + 1)/2) / Gamma((N + w)/2);
    it is divided by the area 2 pi^(N/2) / Gamma(N/2).  Gamma values at
    half-integers are expanded exactly, so the pi powers must cancel.
    Deliberately avoids ``moment_coeff`` and ``sphere_area``.
    """
    _check_eps(eps, N)
    if any(e % 2 for e in eps):
        return Fraction(0)
    w = sum(eps)
    integral = PiScaled(Fraction(2), Fraction(0))
    for e in eps:
        integral = integral * _gamma_half(e + 1)
    integral = integral / _gamma_half(N + w)
    area = PiScaled(Fraction(2), Fraction(N, 2)) / _gamma_half(N)
    ratio = integral / area
    if ratio.pi_power != 0:
        raise DomainError(f"pi factors failed to cancel: {ratio}")
    return ratio.coeff


def sphere_samples(N: int, samples: int, seed: int) -> np.ndarray:
    """``samples`` x ``N`` array of uniform points on the unit sphere."""
    if samples < 1:
        raise DomainError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((samples, N))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def sample_mean(values: np.ndarray) -> tuple[float, float]:
    """Mean and standard error of the mean."""
    n = values.shape[0]
    mean = float(values.mean())
    if n < 2:
        return mean, float("inf")
    return mean, float(values.std(ddof=1)) / sqrt(n)


def monte_carlo_moment(eps: MultiIndex, N: int, samples: int, seed: int) -> tuple[float, float]:
    _check_eps(eps, N)
    x = sphere_samples(N, samples, seed)
    vals = np.prod(x ** np.asarray(eps, dtype=float), axis=1)
    return sample_mean(vals)
