"""Free-particle dispersion relations, Gaussian momentum profiles, and cat states.

Natural units with hbar = 1 throughout.  A cat state is a single-particle
superposition of N copies of one wave packet released with staggered delays
0 = t_1 <= t_2 <= ... <= t_N; all interference observables depend on the
delays only through the differences t_m - t_n.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np


@dataclass(frozen=True)
class Quadratic:
    """Massive-particle dispersion E(p) = p^2 / (2 mu)."""

    mu: float

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValueError(f"mass must be positive, got {self.mu}")


@dataclass(frozen=True)
class Linear:
    """Massless-particle dispersion E(p) = c p, defined for p > 0 only."""

    c: float

    def __post_init__(self):
        if not self.c > 0.0:
            raise ValueError(f"speed must be positive, got {self.c}")


DispersionRelation = Union[Quadratic, Linear]


def _check_linear_domain(p):
    if np.any(np.asarray(p) <= 0.0):
        raise ValueError("linear dispersion is defined for p > 0 only")


def energy(disp, p):
    """E(p) for scalar or array momentum."""
    p = np.asarray(p, dtype=np.float64)
    if isinstance(disp, Quadratic):
        return p * p / (2.0 * disp.mu)
    _check_linear_domain(p)
    return disp.c * p


def group_velocity(disp, p):
    """dE/dp for scalar or array momentum."""
    p = np.asarray(p, dtype=np.float64)
    if isinstance(disp, Quadratic):
        return p / disp.mu
    _check_linear_domain(p)
    return np.broadcast_to(np.float64(disp.c), p.shape).copy() if p.shape else np.float64(disp.c)


def momentum_at_energy(disp, e):
    """Positive momentum with E(p) = e."""
    if not e > 0.0:
        raise ValueError(f"energy must be positive, got {e}")
    if isinstance(disp, Quadratic):
        return float(np.sqrt(2.0 * disp.mu * e))
    return float(e / disp.c)


@dataclass(frozen=True)
class GaussianProfile:
    """Real, non-negative momentum amplitude A(p) peaked at p0 with width 1/sigma.

    Normalized so that the integral of A(p)^2 over all p equals one:
    A(p)^2 = (2 pi)^(-1/2) sigma exp[-(p - p0)^2 sigma^2 / 2].
    """

    p0: float
    sigma: float

    def __post_init__(self):
        if not self.p0 > 0.0:
            raise ValueError(f"p0 must be positive, got {self.p0}")
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def amplitude(profile, p):
    """A(p) for scalar or array momentum."""
    p = np.asarray(p, dtype=np.float64)
    d = (p - profile.p0) * profile.sigma
    return (2.0 * np.pi) ** (-0.25) * np.sqrt(profile.sigma) * np.exp(-d * d / 4.0)


@dataclass(frozen=True)
class CatStateSpec:
    """N identical wave-packet components released at delays t_1 = 0 <= ... <= t_N.

    Coincident delays are allowed (all overlap matrices then degenerate to
    rank one); decreasing delays are not.
    """

    profile: GaussianProfile
    delays: tuple

    def __post_init__(self):
        delays = tuple(float(t) for t in self.delays)
        object.__setattr__(self, "delays", delays)
        if len(delays) < 1:
            raise ValueError("at least one component is required")
        if delays[0] != 0.0:
            raise ValueError(f"first delay must be zero, got {delays[0]}")
        if any(b < a for a, b in zip(delays, delays[1:])):
            raise ValueError("delays must be non-decreasing")

    @property
    def n(self):
        return len(self.delays)

    @classmethod
    def equal_delays(cls, profile, n, tau):
        """Ladder t_k = (k - 1) tau for k = 1..n."""
        if n < 1:
            raise ValueError(f"component count must be >= 1, got {n}")
        if tau < 0.0:
            raise ValueError(f"delay step must be >= 0, got {tau}")
        return cls(profile, tuple(float(k) * float(tau) for k in range(n)))
