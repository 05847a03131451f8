"""Seeded Monte Carlo engine for empirical SINR ccdf curves.

Two fidelities:
  A - samples exactly the objects the closed forms model: fitted/conditioned
      link-distance laws, a conditioned edge interferer at the guard radius,
      a Poisson field beyond it, exact fading.
  B - full spatial realization: Poisson base stations in a disk, user
      placed uniformly in the origin station's Voronoi cell by rejection,
      target/radar placed at their fixed ranges, interference computed from
      actual positions.

Every trial draws from its own generator keyed by (seed, trial_index), so
campaign output is bitwise independent of worker count and schedule.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .analytic import CcdfCurve
from .geometry import (
    InterfererField,
    LinkDistances,
    sample_interferer_field,
    sample_r0,
    sample_r3,
    sample_rho,
    sample_rho_r,
)
from .params import NetworkParams, ScenarioGeometry, SinrMode, p_avg

WORKERS_ENV_VAR = "ISACSIM_MAX_WORKERS"

_MAX_PLACEMENT_ATTEMPTS = 10_000
_CHUNK = 256

# Atomic per-trial SINR samples; joint and slot-averaged modes derive from
# these on shared draws.
_ATOMICS = (
    "comm_high",
    "comm_low",
    "comm_nodts",
    "bist_dts",
    "bist_nodts",
    "mono_dts",
    "mono_nodts",
    "radar_only",
)
_AIDX = {name: i for i, name in enumerate(_ATOMICS)}

_RECEIVERS = ("ue", "bs", "rad", "radonly")


@dataclass(frozen=True)
class SimConfig:
    """Monte Carlo configuration.

    r_max: interference window radius; None selects 30/sqrt(pi lam), for
        which the truncated mean interference is below 0.1% at eta=4.
    interferer_power: 'averaged' replaces every interferer power by p_avg
        (the quantity the closed forms model); 'aloha' gives each interferer
        a uniformly random high-power slot.
    """

    trials: int = 10_000
    seed: int = 0
    fidelity: str = "A"
    r_max: float | None = None
    interferer_power: str = "averaged"
    reject_outside_cell: bool = True

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")
        if self.fidelity not in ("A", "B"):
            raise ValueError(f"fidelity must be 'A' or 'B', got {self.fidelity!r}")
        if self.r_max is not None and not self.r_max > 0:
            raise ValueError("r_max must be > 0")
        if self.interferer_power not in ("averaged", "aloha"):
            raise ValueError(
                f"interferer_power must be 'averaged' or 'aloha', got {self.interferer_power!r}"
            )


def window_radius(params: NetworkParams, config: SimConfig) -> float:
    if config.r_max is not None:
        return config.r_max
    return 30.0 / math.sqrt(math.pi * params.lam)


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Per-trial stream keyed by (seed, trial_index)."""
    return np.random.default_rng([seed, trial_index])


@dataclass(frozen=True)
class TrialDraw:
    """One Monte Carlo realization shared by every mode within a trial."""

    link: LinkDistances
    h0: float
    h1: float
    h2: float
    h_r: float
    slot_u: float
    fields: Mapping[str, InterfererField]
    fading: Mapping[str, np.ndarray]
    high_slot: Mapping[str, np.ndarray]

    def __post_init__(self) -> None:
        if min(self.h0, self.h1, self.h2, self.h_r) < 0:
            raise ValueError("fading draws must be >= 0")


# ---------------------------------------------------------------------------
# Trial draws
# ---------------------------------------------------------------------------

def draw_trial_a(params: NetworkParams, geom: ScenarioGeometry,
                 config: SimConfig, rng: np.random.Generator) -> TrialDraw:
    """Sample the analytical-assumptions realization (fidelity A)."""
    r_max = window_radius(params, config)
    m = params.m_slots

    r0 = float(sample_r0(params, rng))
    h0 = float(rng.exponential())
    f_ue = sample_interferer_field(r0, params, r_max, rng, include_edge_point=False)
    g_ue = rng.exponential(size=f_ue.distances.size)
    s_ue = rng.integers(0, m, size=f_ue.distances.size)

    r3 = float(sample_r3(geom.r1, geom.r2, rng))
    rho_r = float(sample_rho_r(r3, params, rng))
    f_rad = sample_interferer_field(rho_r, params, r_max, rng, include_edge_point=True)
    g_rad = rng.exponential(size=f_rad.distances.size)
    s_rad = rng.integers(0, m, size=f_rad.distances.size)

    rho = float(sample_rho(params, rng))
    f_bs = sample_interferer_field(rho, params, r_max, rng, include_edge_point=True)
    g_bs = rng.exponential(size=f_bs.distances.size)
    s_bs = rng.integers(0, m, size=f_bs.distances.size)

    h1 = float(rng.exponential())
    h2 = float(rng.exponential())

    rho_rad = float(sample_rho(params, rng))
    f_ro = sample_interferer_field(rho_rad, params, r_max, rng, include_edge_point=True)
    g_ro = rng.exponential(size=f_ro.distances.size)

    h_r = float(rng.exponential())
    slot_u = float(rng.random())

    link = LinkDistances(r0=r0, r3=r3, phi=float("nan"),
                         rho=rho, rho_r=rho_r, rho_rad=rho_rad)
    return TrialDraw(
        link=link, h0=h0, h1=h1, h2=h2, h_r=h_r, slot_u=slot_u,
        fields={"ue": f_ue, "bs": f_bs, "rad": f_rad, "radonly": f_ro},
        fading={"ue": g_ue, "bs": g_bs, "rad": g_rad, "radonly": g_ro},
        high_slot={"ue": s_ue, "bs": s_bs, "rad": s_rad,
                   "radonly": np.zeros(f_ro.distances.size, dtype=np.int64)},
    )


def _uniform_in_origin_cell(points: np.ndarray, radius: float,
                            rng: np.random.Generator) -> np.ndarray:
    """Uniform point in the Voronoi cell of the origin among points + origin,
    by batch rejection inside a disk that contains the cell except for an
    exp(-4 pi) probability tail."""
    batch = 64
    ptsq = (points * points).sum(axis=1) if points.size else None
    for _ in range(0, _MAX_PLACEMENT_ATTEMPTS, batch):
        r = radius * np.sqrt(rng.random(batch))
        a = rng.uniform(0.0, 2.0 * np.pi, batch)
        cand = np.column_stack((r * np.cos(a), r * np.sin(a)))
        if points.size == 0:
            return cand[0]
        # candidate accepted iff the origin is its nearest station:
        # min_x |c - x|^2 >= |c|^2, via |c - x|^2 = |x|^2 - 2 c.x + |c|^2
        cross_min = (ptsq[None, :] - 2.0 * (cand @ points.T)).min(axis=1)
        ok = np.nonzero(cross_min >= 0.0)[0]
        if ok.size:
            return cand[ok[0]]
    raise RuntimeError(
        f"user placement rejection exhausted after {_MAX_PLACEMENT_ATTEMPTS} proposals"
    )


def _in_origin_cell(z: np.ndarray, points: np.ndarray) -> bool:
    if points.size == 0:
        return True
    diff = points - z[None, :]
    return bool((diff * diff).sum(axis=1).min() >= z @ z)


def _placed_network(params: NetworkParams, r_max: float, anchor_dists: Sequence[float],
                    reject: bool, rng: np.random.Generator):
    """Realize a Poisson field in the disk plus chained anchor points at the
    given distances from the origin; optionally reject realizations whose
    anchors leave the origin's Voronoi cell."""
    for _ in range(_MAX_PLACEMENT_ATTEMPTS):
        n = rng.poisson(params.lam * np.pi * r_max * r_max)
        radii = r_max * np.sqrt(rng.random(n))
        ang = rng.uniform(0.0, 2.0 * np.pi, n)
        points = np.column_stack((radii * np.cos(ang), radii * np.sin(ang)))
        anchors = []
        pos = np.zeros(2)
        for dist in anchor_dists:
            a = rng.uniform(0.0, 2.0 * np.pi)
            pos = pos + dist * np.array([np.cos(a), np.sin(a)])
            anchors.append(pos)
        if reject and not all(_in_origin_cell(p, points) for p in anchors):
            continue
        return points, anchors
    raise RuntimeError(
        f"placement rejection exhausted after {_MAX_PLACEMENT_ATTEMPTS} attempts"
    )


def _field_from_positions(points: np.ndarray, receiver: np.ndarray) -> InterfererField:
    if points.size == 0:
        return InterfererField(distances=np.empty(0), guard=0.0, includes_edge_point=False)
    d = np.sqrt(((points - receiver[None, :]) ** 2).sum(axis=1))
    return InterfererField(distances=d, guard=float(d.min()), includes_edge_point=False)


def draw_trial_b(params: NetworkParams, geom: ScenarioGeometry,
                 config: SimConfig, rng: np.random.Generator) -> TrialDraw:
    """Sample a full spatial realization (fidelity B)."""
    r_max = window_radius(params, config)
    m = params.m_slots
    cell_disk = min(2.0 / math.sqrt(params.lam), r_max)

    points, anchors = _placed_network(
        params, r_max, (geom.r1, geom.r2), config.reject_outside_cell, rng
    )
    target, radar = anchors
    ue = _uniform_in_origin_cell(points, cell_disk, rng)

    points_r, anchors_r = _placed_network(
        params, r_max, (geom.r_r,), config.reject_outside_cell, rng
    )

    f_ue = _field_from_positions(points, ue)
    f_bs = _field_from_positions(points, np.zeros(2))
    f_rad = _field_from_positions(points, radar)
    f_ro = _field_from_positions(points_r, np.zeros(2))

    h0 = float(rng.exponential())
    g_ue = rng.exponential(size=f_ue.distances.size)
    s_ue = rng.integers(0, m, size=f_ue.distances.size)
    g_rad = rng.exponential(size=f_rad.distances.size)
    s_rad = rng.integers(0, m, size=f_rad.distances.size)
    g_bs = rng.exponential(size=f_bs.distances.size)
    s_bs = rng.integers(0, m, size=f_bs.distances.size)
    h1 = float(rng.exponential())
    h2 = float(rng.exponential())
    g_ro = rng.exponential(size=f_ro.distances.size)
    h_r = float(rng.exponential())
    slot_u = float(rng.random())

    link = LinkDistances(
        r0=float(np.hypot(*ue)),
        r3=float(np.hypot(*radar)),
        phi=float("nan"),
        rho=f_bs.guard,
        rho_r=f_rad.guard if f_rad.distances.size else 0.0,
        rho_rad=f_ro.guard,
    )
    return TrialDraw(
        link=link, h0=h0, h1=h1, h2=h2, h_r=h_r, slot_u=slot_u,
        fields={"ue": f_ue, "bs": f_bs, "rad": f_rad, "radonly": f_ro},
        fading={"ue": g_ue, "bs": g_bs, "rad": g_rad, "radonly": g_ro},
        high_slot={"ue": s_ue, "bs": s_bs, "rad": s_rad,
                   "radonly": np.zeros(f_ro.distances.size, dtype=np.int64)},
    )


def draw_trial(params: NetworkParams, geom: ScenarioGeometry,
               config: SimConfig, rng: np.random.Generator) -> TrialDraw:
    if config.fidelity == "A":
        return draw_trial_a(params, geom, config, rng)
    return draw_trial_b(params, geom, config, rng)


# ---------------------------------------------------------------------------
# SINR assembly
# ---------------------------------------------------------------------------

def _unit_interference(draw: TrialDraw, receiver: str, eta: float) -> np.ndarray:
    d = draw.fields[receiver].distances
    return draw.fading[receiver] * d ** (-eta)


def _cycled_interference(draw: TrialDraw, receiver: str, slot: int,
                         params: NetworkParams, config: SimConfig) -> float:
    """Interference in a given slot of the power-cycled network."""
    unit = _unit_interference(draw, receiver, params.eta)
    if config.interferer_power == "averaged":
        return p_avg(params) * float(unit.sum())
    powers = np.where(draw.high_slot[receiver] == slot, params.p_h, params.p_l)
    return float((powers * unit).sum())


def trial_samples(draw: TrialDraw, params: NetworkParams, geom: ScenarioGeometry,
                  config: SimConfig) -> np.ndarray:
    """All atomic SINR samples of one trial, in _ATOMICS order."""
    eta = params.eta
    sigma2 = params.sigma2
    link = draw.link

    unit_ue = float(_unit_interference(draw, "ue", eta).sum())
    unit_bs = float(_unit_interference(draw, "bs", eta).sum())
    unit_rad = float(_unit_interference(draw, "rad", eta).sum())
    unit_ro = float(_unit_interference(draw, "radonly", eta).sum())

    sig_comm = draw.h0 * link.r0 ** (-eta)
    sig_bist = draw.h1 * draw.h2 * (geom.r1 * geom.r2) ** (-eta)
    sig_mono = draw.h1 ** 2 * geom.r1 ** (-2 * eta)
    sig_ro = draw.h_r ** 2 * geom.r_r ** (-2 * eta)

    i_ue_hi = _cycled_interference(draw, "ue", 0, params, config)
    i_ue_lo = _cycled_interference(draw, "ue", 1, params, config)
    i_rad = _cycled_interference(draw, "rad", 0, params, config)
    i_bs = _cycled_interference(draw, "bs", 0, params, config)

    out = np.empty(len(_ATOMICS))
    out[_AIDX["comm_high"]] = params.p_h * sig_comm / (i_ue_hi + sigma2)
    out[_AIDX["comm_low"]] = params.p_l * sig_comm / (i_ue_lo + sigma2)
    out[_AIDX["comm_nodts"]] = params.p_l * sig_comm / (params.p_l * unit_ue + sigma2)
    out[_AIDX["bist_dts"]] = params.p_h * sig_bist / (i_rad + sigma2)
    out[_AIDX["bist_nodts"]] = params.p_l * sig_bist / (params.p_l * unit_rad + sigma2)
    out[_AIDX["mono_dts"]] = params.p_h * sig_mono / (i_bs + sigma2)
    out[_AIDX["mono_nodts"]] = params.p_l * sig_mono / (params.p_l * unit_bs + sigma2)
    out[_AIDX["radar_only"]] = params.p_r * sig_ro / (params.p_r * unit_ro + sigma2)
    return out


def sinr_sample(mode: SinrMode, draw: TrialDraw, params: NetworkParams,
                geom: ScenarioGeometry, config: SimConfig) -> float:
    """One SINR sample for any mode from a shared trial draw.  Joint modes
    are the union event, i.e. the max of their constituents; the averaged
    communication mode samples its slot."""
    s = trial_samples(draw, params, geom, config)
    if mode == SinrMode.COMM_HIGH:
        return float(s[_AIDX["comm_high"]])
    if mode == SinrMode.COMM_LOW:
        return float(s[_AIDX["comm_low"]])
    if mode == SinrMode.COMM_AVG:
        key = "comm_high" if draw.slot_u < 1.0 / params.m_slots else "comm_low"
        return float(s[_AIDX[key]])
    if mode == SinrMode.COMM_NODTS:
        return float(s[_AIDX["comm_nodts"]])
    if mode == SinrMode.BISTATIC_DTS:
        return float(s[_AIDX["bist_dts"]])
    if mode == SinrMode.BISTATIC_NODTS:
        return float(s[_AIDX["bist_nodts"]])
    if mode == SinrMode.MONO_DTS:
        return float(s[_AIDX["mono_dts"]])
    if mode == SinrMode.MONO_NODTS:
        return float(s[_AIDX["mono_nodts"]])
    if mode == SinrMode.JOINT_DTS:
        return float(max(s[_AIDX["bist_dts"]], s[_AIDX["mono_dts"]]))
    if mode == SinrMode.JOINT_NODTS:
        return float(max(s[_AIDX["bist_nodts"]], s[_AIDX["mono_nodts"]]))
    if mode == SinrMode.RADAR_ONLY:
        return float(s[_AIDX["radar_only"]])
    raise ValueError(f"unhandled mode {mode}")


def run_trial_A(mode: SinrMode, params: NetworkParams, geom: ScenarioGeometry,
                config: SimConfig, trial_index: int) -> float:
    """Deterministic fidelity-A sample for (seed, trial_index, mode)."""
    rng = trial_rng(config.seed, trial_index)
    draw = draw_trial_a(params, geom, config, rng)
    return sinr_sample(mode, draw, params, geom, config)


def run_trial_B(mode: SinrMode, params: NetworkParams, geom: ScenarioGeometry,
                config: SimConfig, trial_index: int) -> float:
    """Deterministic fidelity-B sample for (seed, trial_index, mode)."""
    rng = trial_rng(config.seed, trial_index)
    draw = draw_trial_b(params, geom, config, rng)
    return sinr_sample(mode, draw, params, geom, config)


# ---------------------------------------------------------------------------
# Curve estimation and campaigns
# ---------------------------------------------------------------------------

def estimate_ccdf(samples, theta_grid, mode: SinrMode,
                  provenance: str = "sim-A") -> CcdfCurve:
    """Empirical ccdf with binomial standard errors."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("estimate_ccdf requires at least one sample")
    theta_grid = np.asarray(theta_grid, dtype=float)
    n = samples.size
    values = (samples[None, :] > theta_grid[:, None]).mean(axis=1)
    stderr = np.sqrt(values * (1.0 - values) / n)
    return CcdfCurve(theta_grid=theta_grid, values=values, mode=mode,
                     provenance=provenance, stderr=stderr)


def _resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(WORKERS_ENV_VAR)
    if env:
        return max(1, int(env))
    return 1


def _collect_samples(params: NetworkParams, geom: ScenarioGeometry,
                     config: SimConfig, workers: int) -> np.ndarray:
    out = np.empty((len(_ATOMICS), config.trials))

    def fill(start: int, stop: int) -> None:
        for i in range(start, stop):
            rng = trial_rng(config.seed, i)
            draw = draw_trial(params, geom, config, rng)
            out[:, i] = trial_samples(draw, params, geom, config)

    if workers == 1:
        fill(0, config.trials)
    else:
        blocks = [(b, min(b + _CHUNK, config.trials))
                  for b in range(0, config.trials, _CHUNK)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fill, a, b) for a, b in blocks]
            for f in futures:
                f.result()
    return out


def run_campaign(modes: Sequence[SinrMode], theta_grid, params: NetworkParams,
                 geom: ScenarioGeometry, config: SimConfig,
                 workers: int | None = None) -> list[CcdfCurve]:
    """Estimate ccdf curves for the requested modes on shared per-trial
    draws.  Bitwise reproducible from the seed for any worker count."""
    theta_grid = np.asarray(theta_grid, dtype=float)
    if theta_grid.ndim != 1 or theta_grid.size == 0:
        raise ValueError("theta_grid must be a non-empty 1-D array")
    modes = list(modes)
    for mode in modes:
        if not isinstance(mode, SinrMode):
            raise TypeError(f"modes must be SinrMode values, got {mode!r}")

    provenance = f"sim-{config.fidelity}"
    samples = _collect_samples(params, geom, config, _resolve_workers(workers))
    n = config.trials

    def atomic(name: str) -> np.ndarray:
        return samples[_AIDX[name]]

    curves: list[CcdfCurve] = []
    for mode in modes:
        if mode == SinrMode.COMM_AVG:
            # Weighted mixture of the high/low slots on shared draws; the
            # per-trial indicator keeps the standard error honest.
            m = params.m_slots
            ind = (atomic("comm_high")[None, :] > theta_grid[:, None]) / m \
                + (atomic("comm_low")[None, :] > theta_grid[:, None]) * ((m - 1) / m)
            values = ind.mean(axis=1)
            stderr = ind.std(axis=1) / math.sqrt(n)
            curves.append(CcdfCurve(theta_grid=theta_grid, values=values,
                                    mode=mode, provenance=provenance, stderr=stderr))
        elif mode == SinrMode.JOINT_DTS:
            joint = np.maximum(atomic("bist_dts"), atomic("mono_dts"))
            curves.append(estimate_ccdf(joint, theta_grid, mode, provenance))
        elif mode == SinrMode.JOINT_NODTS:
            joint = np.maximum(atomic("bist_nodts"), atomic("mono_nodts"))
            curves.append(estimate_ccdf(joint, theta_grid, mode, provenance))
        else:
            name = {
                SinrMode.COMM_HIGH: "comm_high",
                SinrMode.COMM_LOW: "comm_low",
                SinrMode.COMM_NODTS: "comm_nodts",
                SinrMode.BISTATIC_DTS: "bist_dts",
                SinrMode.BISTATIC_NODTS: "bist_nodts",
                SinrMode.MONO_DTS: "mono_dts",
                SinrMode.MONO_NODTS: "mono_nodts",
                SinrMode.RADAR_ONLY: "radar_only",
            }[mode]
            curves.append(estimate_ccdf(atomic(name), theta_grid, mode, provenance))
    return curves
