"""Fading laws: exact joint-fading samplers and their fitted cdf forms.

The closed-form SINR expressions use fitted cdfs of the two joint fading
variables (the product h1*h2 on the two-hop path and the square h1^2 on the
echo path); the Monte Carlo engine always draws the exact laws so the
validation suite can measure the fit error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

# Shape constants of the fitted joint-fading cdfs.
M_BISTATIC = math.sqrt(7.0 / 20.0)
M_MONOSTATIC = math.sqrt(3.0 / 20.0)

# Conventions for the monostatic fit rate (see FadingFitParams.default):
#   half_bistatic - eps_mono = harmonic(M_BISTATIC) / 2  (better measured fit)
#   mean_matched  - eps_mono = harmonic(M_MONOSTATIC) / 2 (fitted mean equals 2)
MONO_RATE_CONVENTIONS = ("half_bistatic", "mean_matched")


def harmonic(m: float) -> float:
    """Generalized harmonic number H_m = euler_gamma + digamma(m + 1).

    Agrees with sum(1/k, k=1..m) at integer m and with the series
    sum_{k>=1} m / (k (k + m)) everywhere on m > 0.
    """
    if m <= 0:
        raise ValueError(f"harmonic requires m > 0, got {m}")
    return float(np.euler_gamma + special.digamma(m + 1.0))


@dataclass(frozen=True)
class FadingFitParams:
    """Shape/rate constants of the two fitted joint-fading cdfs."""

    m_bi: float
    eps_bi: float
    m_mono: float
    eps_mono: float

    def __post_init__(self) -> None:
        for name in ("m_bi", "eps_bi", "m_mono", "eps_mono"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")

    @classmethod
    def default(cls, mono_rate: str = "half_bistatic") -> "FadingFitParams":
        if mono_rate not in MONO_RATE_CONVENTIONS:
            raise ValueError(
                f"mono_rate must be one of {MONO_RATE_CONVENTIONS}, got {mono_rate!r}"
            )
        eps_bi = harmonic(M_BISTATIC)
        if mono_rate == "half_bistatic":
            eps_mono = eps_bi / 2.0
        else:
            eps_mono = harmonic(M_MONOSTATIC) / 2.0
        return cls(m_bi=M_BISTATIC, eps_bi=eps_bi, m_mono=M_MONOSTATIC, eps_mono=eps_mono)


DEFAULT_FIT = FadingFitParams.default()


def _fit_cdf(x, eps: float, m: float):
    x = np.asarray(x, dtype=float)
    return np.where(x > 0, (1.0 - np.exp(-eps * np.maximum(x, 0.0))) ** m, 0.0)


def cdf_hj(x, fit: FadingFitParams = DEFAULT_FIT):
    """Fitted cdf (1 - exp(-eps_bi x))^m_bi of the two-hop fading h1*h2."""
    return _fit_cdf(x, fit.eps_bi, fit.m_bi)


def ccdf_hj(x, fit: FadingFitParams = DEFAULT_FIT):
    return 1.0 - cdf_hj(x, fit)


def cdf_hjr(x, fit: FadingFitParams = DEFAULT_FIT):
    """Fitted cdf (1 - exp(-eps_mono x))^m_mono of the echo fading h1^2."""
    return _fit_cdf(x, fit.eps_mono, fit.m_mono)


def ccdf_hjr(x, fit: FadingFitParams = DEFAULT_FIT):
    return 1.0 - cdf_hjr(x, fit)


def fitted_mean(eps: float, m: float) -> float:
    """Mean of the fitted law (1 - exp(-eps x))^m, harmonic(m)/eps."""
    return harmonic(m) / eps


# ---------------------------------------------------------------------------
# Exact laws (used by the Monte Carlo engine)
# ---------------------------------------------------------------------------

def sample_exp(rng: np.random.Generator, size=None):
    """Unit-mean exponential power fading."""
    return rng.exponential(size=size)


def sample_hj(rng: np.random.Generator, size=None):
    """Exact two-hop fading: product of two independent unit exponentials."""
    return rng.exponential(size=size) * rng.exponential(size=size)


def sample_hjr(rng: np.random.Generator, size=None):
    """Exact echo fading: square of one unit exponential (mean 2)."""
    return rng.exponential(size=size) ** 2


def cdf_hj_exact(x):
    """Exact cdf of the product of two unit exponentials,
    1 - 2 sqrt(x) K_1(2 sqrt(x)).  Test oracle for the fitted form."""
    x = np.asarray(x, dtype=float)
    z = 2.0 * np.sqrt(np.maximum(x, 0.0))
    with np.errstate(invalid="ignore"):
        val = 1.0 - z * special.kv(1, z)
    return np.where(x <= 0, 0.0, val)


def cdf_hjr_exact(x):
    """Exact cdf of the square of a unit exponential, 1 - exp(-sqrt(x))."""
    x = np.asarray(x, dtype=float)
    return np.where(x <= 0, 0.0, 1.0 - np.exp(-np.sqrt(np.maximum(x, 0.0))))
