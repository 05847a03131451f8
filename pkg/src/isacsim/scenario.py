"""Scenario files: the key-value documents the CLI consumes.

A scenario is an INI-style UTF-8 document with sections [network],
[geometry], [thresholds], [simulation] and [modes].  Distances in
[geometry] are multiples of the reference unit v (override v_override to
work in absolute metres).  Unknown sections or keys are rejected.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .montecarlo import SimConfig
from .params import NetworkParams, ScenarioGeometry, SinrMode, reference_unit


class ScenarioError(ValueError):
    """Malformed scenario document (bad syntax, unknown key, bad value)."""


_SECTION_KEYS = {
    "network": {"lambda", "eta", "sigma2", "p_l", "p_h", "m_slots", "p_r"},
    "geometry": {"r1_in_v", "r2_in_v", "r_r_in_v", "v_override"},
    "thresholds": {"theta_db_min", "theta_db_max", "theta_db_step"},
    "simulation": {"trials", "seed", "fidelity", "r_max_factor", "interferer_power"},
    "modes": {"tags"},
}

_DEFAULTS = {
    "network": {
        "lambda": "1e-5", "eta": "4.0", "sigma2": "0.0",
        "p_l": "1.0", "p_h": "5.0", "m_slots": "10", "p_r": "1.0",
    },
    "geometry": {"r1_in_v": "5.0", "r2_in_v": "15.0", "r_r_in_v": "5.0"},
    "thresholds": {"theta_db_min": "-50", "theta_db_max": "10", "theta_db_step": "2"},
    "simulation": {
        "trials": "10000", "seed": "1", "fidelity": "A",
        "r_max_factor": "30.0", "interferer_power": "averaged",
    },
    "modes": {"tags": " ".join(m.value for m in SinrMode)},
}


@dataclass(frozen=True)
class Scenario:
    """A fully resolved scenario: typed parameter objects plus the dB
    threshold grid and the SINR modes to evaluate."""

    params: NetworkParams
    geom: ScenarioGeometry
    theta_db: np.ndarray
    sim: SimConfig
    modes: tuple[SinrMode, ...]

    @property
    def theta_grid(self) -> np.ndarray:
        return 10.0 ** (self.theta_db / 10.0)


def _get(cfg: dict, section: str, key: str) -> str:
    return cfg.get(section, {}).get(key, _DEFAULTS[section].get(key, ""))


def _parse_float(cfg, section, key) -> float:
    raw = _get(cfg, section, key)
    try:
        return float(raw)
    except ValueError:
        raise ScenarioError(f"[{section}] {key}: not a number: {raw!r}") from None


def _parse_int(cfg, section, key) -> int:
    raw = _get(cfg, section, key)
    try:
        return int(raw)
    except ValueError:
        raise ScenarioError(f"[{section}] {key}: not an integer: {raw!r}") from None


def _validate_layout(cfg: configparser.ConfigParser) -> None:
    for section in cfg.sections():
        if section not in _SECTION_KEYS:
            valid = ", ".join(sorted(_SECTION_KEYS))
            raise ScenarioError(f"unknown section [{section}]; valid sections: {valid}")
        for key in cfg[section]:
            if key not in _SECTION_KEYS[section]:
                valid = ", ".join(sorted(_SECTION_KEYS[section]))
                raise ScenarioError(
                    f"unknown key {key!r} in section [{section}]; valid keys: {valid}"
                )


def parse_scenario(text: str) -> Scenario:
    cfg_parser = configparser.ConfigParser(interpolation=None)
    cfg_parser.optionxform = str  # keys are case-sensitive
    try:
        cfg_parser.read_string(text)
    except configparser.Error as exc:
        raise ScenarioError(f"scenario parse error: {exc}") from exc
    _validate_layout(cfg_parser)
    cfg = {s: dict(cfg_parser[s]) for s in cfg_parser.sections()}

    try:
        params = NetworkParams(
            lam=_parse_float(cfg, "network", "lambda"),
            eta=_parse_float(cfg, "network", "eta"),
            sigma2=_parse_float(cfg, "network", "sigma2"),
            p_l=_parse_float(cfg, "network", "p_l"),
            p_h=_parse_float(cfg, "network", "p_h"),
            m_slots=_parse_int(cfg, "network", "m_slots"),
            p_r=_parse_float(cfg, "network", "p_r"),
        )
    except ValueError as exc:
        raise ScenarioError(f"[network]: {exc}") from exc

    v_raw = _get(cfg, "geometry", "v_override")
    v = float(v_raw) if v_raw else reference_unit(params.lam)
    try:
        geom = ScenarioGeometry.in_v_units(
            params.lam,
            r1=_parse_float(cfg, "geometry", "r1_in_v"),
            r2=_parse_float(cfg, "geometry", "r2_in_v"),
            r_r=_parse_float(cfg, "geometry", "r_r_in_v"),
            v=v,
        )
    except ValueError as exc:
        raise ScenarioError(f"[geometry]: {exc}") from exc

    th_min = _parse_float(cfg, "thresholds", "theta_db_min")
    th_max = _parse_float(cfg, "thresholds", "theta_db_max")
    th_step = _parse_float(cfg, "thresholds", "theta_db_step")
    if th_step <= 0:
        raise ScenarioError("[thresholds] theta_db_step must be > 0")
    if th_max < th_min:
        raise ScenarioError("[thresholds] theta_db_max must be >= theta_db_min")
    n_pts = int(round((th_max - th_min) / th_step)) + 1
    theta_db = th_min + th_step * np.arange(n_pts)

    r_max_factor = _parse_float(cfg, "simulation", "r_max_factor")
    if r_max_factor <= 0:
        raise ScenarioError("[simulation] r_max_factor must be > 0")
    try:
        sim = SimConfig(
            trials=_parse_int(cfg, "simulation", "trials"),
            seed=_parse_int(cfg, "simulation", "seed"),
            fidelity=_get(cfg, "simulation", "fidelity"),
            r_max=r_max_factor / np.sqrt(np.pi * params.lam),
            interferer_power=_get(cfg, "simulation", "interferer_power"),
        )
    except ValueError as exc:
        raise ScenarioError(f"[simulation]: {exc}") from exc

    tags = _get(cfg, "modes", "tags").replace(",", " ").split()
    if not tags:
        raise ScenarioError("[modes] tags must list at least one SINR mode")
    try:
        modes = tuple(SinrMode.from_tag(t) for t in tags)
    except ValueError as exc:
        raise ScenarioError(f"[modes]: {exc}") from exc

    return Scenario(params=params, geom=geom, theta_db=theta_db, sim=sim, modes=modes)


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path!r}: {exc}") from exc
    return parse_scenario(text)


def default_scenario() -> Scenario:
    """The shipped default: the dense-network reference setup."""
    return parse_scenario(default_scenario_text())


def default_scenario_text() -> str:
    return resources.files("isacsim.data").joinpath("default.ini").read_text("utf-8")
