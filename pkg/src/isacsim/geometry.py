"""Link-distance distributions and point-process sampling utilities.

All samplers take an explicit numpy Generator; callers own their stream.
Distances are in metres, densities in 1/m.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import TYPICAL_CELL_CORRECTION, NetworkParams


@dataclass(frozen=True)
class LinkDistances:
    """One realization of the random link distances of a trial.

    r0:      serving-link distance to the user.
    r3:      transmitter-to-listening-radar distance.
    phi:     target angle used to realize r3 (nan when r3 was drawn from its
             fitted law rather than from an explicit angle).
    rho:     nearest-interferer distance at the transmitter.
    rho_r:   nearest-interferer distance at the listening radar; at least r3
             under the conditioned law and for in-cell placements (spatial
             realizations with out-of-cell rejection disabled may violate
             it, which is the point of that switch).
    rho_rad: nearest-interferer distance in the stand-alone radar network.
    """

    r0: float
    r3: float
    phi: float
    rho: float
    rho_r: float
    rho_rad: float

    def __post_init__(self) -> None:
        for name in ("r0", "r3", "rho", "rho_r", "rho_rad"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class InterfererField:
    """Distances from one receiver to its interferers.

    When includes_edge_point is set, the first entry sits exactly at the
    guard radius (the conditioned nearest interferer); all other points are
    a Poisson field beyond the guard.
    """

    distances: np.ndarray
    guard: float
    includes_edge_point: bool

    def __post_init__(self) -> None:
        d = np.asarray(self.distances, dtype=float)
        object.__setattr__(self, "distances", d)
        if d.size and d.min() < self.guard * (1.0 - 1e-12):
            raise ValueError("interferer inside the guard radius")
        if self.includes_edge_point:
            if d.size == 0 or not np.isclose(d[0], self.guard, rtol=1e-12):
                raise ValueError("edge point flagged but first distance != guard")


# ---------------------------------------------------------------------------
# Serving-link distance R0 (user uniform in the typical cell, b-corrected)
# ---------------------------------------------------------------------------

def pdf_r0(x, params: NetworkParams):
    """Density 2 pi b lam x exp(-pi b lam x^2) of the serving-link distance."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("pdf_r0 requires x >= 0")
    c = np.pi * TYPICAL_CELL_CORRECTION * params.lam
    return 2.0 * c * x * np.exp(-c * x * x)


def cdf_r0(x, params: NetworkParams):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("cdf_r0 requires x >= 0")
    c = np.pi * TYPICAL_CELL_CORRECTION * params.lam
    return 1.0 - np.exp(-c * x * x)


def sample_r0(params: NetworkParams, rng: np.random.Generator, size=None):
    c = np.pi * TYPICAL_CELL_CORRECTION * params.lam
    return np.sqrt(rng.exponential(size=size) / c)


# ---------------------------------------------------------------------------
# Transmitter-to-radar distance R3
# ---------------------------------------------------------------------------

def r3_from_angle(r1: float, r2: float, phi):
    """Exact law of cosines: sqrt(r1^2 + r2^2 - 2 r1 r2 cos(phi))."""
    if r1 <= 0 or r2 <= 0:
        raise ValueError("r1 and r2 must be > 0")
    phi = np.asarray(phi, dtype=float)
    return np.sqrt(r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * np.cos(phi))


def cdf_r3(r, r1: float, r2: float):
    """Fitted cdf of R3: arccos of a scaled/translated linear map, clamped to
    {0, 1} outside the support [|r1-r2|, r1+r2]."""
    if r1 <= 0 or r2 <= 0:
        raise ValueError("r1 and r2 must be > 0")
    r = np.asarray(r, dtype=float)
    rmin = min(r1, r2)
    rdiff = abs(r1 - r2)
    arg = np.clip(-(r - rdiff - rmin) / rmin, -1.0, 1.0)
    out = np.arccos(arg) / np.pi
    out = np.where(r <= rdiff, 0.0, out)
    out = np.where(r >= r1 + r2, 1.0, out)
    return out


def pdf_r3(r, r1: float, r2: float):
    """Density of the fitted R3 law; 0 outside the open support (the density
    diverges at the support endpoints)."""
    if r1 <= 0 or r2 <= 0:
        raise ValueError("r1 and r2 must be > 0")
    r = np.asarray(r, dtype=float)
    rmin = min(r1, r2)
    rdiff = abs(r1 - r2)
    inside = (r > rdiff) & (r < r1 + r2)
    u = 1.0 + (rdiff - r) / rmin
    with np.errstate(divide="ignore", invalid="ignore"):
        dens = 1.0 / (np.pi * rmin * np.sqrt(1.0 - u * u))
    return np.where(inside, dens, 0.0)


def sample_r3(r1: float, r2: float, rng: np.random.Generator, size=None):
    """Draw from the fitted R3 law via its exact inverse cdf,
    r(u) = min(r1,r2) (1 - cos(pi u)) + |r1-r2|."""
    if r1 <= 0 or r2 <= 0:
        raise ValueError("r1 and r2 must be > 0")
    u = rng.random(size)
    return min(r1, r2) * (1.0 - np.cos(np.pi * u)) + abs(r1 - r2)


def r3_from_quantile(u, r1: float, r2: float):
    """Inverse cdf of the fitted R3 law, used both by the sampler and by the
    singularity-free change of variables in expectations over R3."""
    u = np.asarray(u, dtype=float)
    return min(r1, r2) * (1.0 - np.cos(np.pi * u)) + abs(r1 - r2)


# ---------------------------------------------------------------------------
# Nearest-interferer distances
# ---------------------------------------------------------------------------

def pdf_rho(r, params: NetworkParams):
    """Density 2 pi lam r exp(-pi lam r^2) of the nearest-interferer
    distance at the transmitter (also the stand-alone radar law)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("pdf_rho requires r >= 0")
    c = np.pi * params.lam
    return 2.0 * c * r * np.exp(-c * r * r)


def sample_rho(params: NetworkParams, rng: np.random.Generator, size=None):
    return np.sqrt(rng.exponential(size=size) / (np.pi * params.lam))


def pdf_rho_r_given_r3(r, r3: float, params: NetworkParams):
    """Density 2 pi lam r exp(-pi lam (r^2 - r3^2)) on [r3, inf) of the
    nearest-interferer distance at the radar, conditioned on r3."""
    if r3 < 0:
        raise ValueError("r3 must be >= 0")
    r = np.asarray(r, dtype=float)
    c = np.pi * params.lam
    dens = 2.0 * c * r * np.exp(-c * (r * r - r3 * r3))
    return np.where(r < r3, 0.0, dens)


def sample_rho_r(r3, params: NetworkParams, rng: np.random.Generator, size=None):
    """Draw rho_r >= r3 via r = sqrt(r3^2 + E/(pi lam)), E ~ Exp(1)."""
    r3 = np.asarray(r3, dtype=float)
    if np.any(r3 < 0):
        raise ValueError("r3 must be >= 0")
    e = rng.exponential(size=size if size is not None else r3.shape or None)
    return np.sqrt(r3 * r3 + e / (np.pi * params.lam))


# ---------------------------------------------------------------------------
# Interferer fields
# ---------------------------------------------------------------------------

def sample_interferer_field(
    psi: float,
    params: NetworkParams,
    r_max: float,
    rng: np.random.Generator,
    include_edge_point: bool = True,
) -> InterfererField:
    """Sample interferer distances for a receiver with guard radius psi.

    A Poisson(lam * pi * (r_max^2 - psi^2)) number of points is placed with
    the in-annulus radial law on [psi, r_max]; when include_edge_point is
    set, one extra interferer is planted exactly at psi.
    """
    if not 0 <= psi < r_max:
        raise ValueError(f"need 0 <= psi < r_max, got psi={psi} r_max={r_max}")
    area = np.pi * (r_max * r_max - psi * psi)
    n = rng.poisson(params.lam * area)
    d2 = psi * psi + rng.random(n) * (r_max * r_max - psi * psi)
    distances = np.sqrt(d2)
    if include_edge_point:
        distances = np.concatenate(([psi], distances))
    return InterfererField(
        distances=distances, guard=psi, includes_edge_point=include_edge_point
    )
