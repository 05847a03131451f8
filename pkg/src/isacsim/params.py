"""Core network parameters, scenario geometry and SINR mode tags.

All powers are stored and manipulated in linear units; decibels appear only
at the CLI boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

# Correction factor b = 13/10 for link distances of nodes placed uniformly in
# the typical cell (as opposed to the zero-cell).
TYPICAL_CELL_CORRECTION = 1.3


class SinrMode(str, Enum):
    """The SINR quantities the toolkit evaluates."""

    COMM_HIGH = "CommHigh"
    COMM_LOW = "CommLow"
    COMM_AVG = "CommAvg"
    COMM_NODTS = "CommNoDts"
    BISTATIC_DTS = "BistaticDts"
    MONO_DTS = "MonoDts"
    JOINT_DTS = "JointDts"
    BISTATIC_NODTS = "BistaticNoDts"
    MONO_NODTS = "MonoNoDts"
    JOINT_NODTS = "JointNoDts"
    RADAR_ONLY = "RadarOnly"

    @classmethod
    def from_tag(cls, tag: str) -> "SinrMode":
        for mode in cls:
            if mode.value == tag:
                return mode
        valid = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown SINR mode tag {tag!r}; valid tags: {valid}")

    @property
    def is_radar(self) -> bool:
        return self in (
            SinrMode.BISTATIC_DTS,
            SinrMode.MONO_DTS,
            SinrMode.JOINT_DTS,
            SinrMode.BISTATIC_NODTS,
            SinrMode.MONO_NODTS,
            SinrMode.JOINT_NODTS,
            SinrMode.RADAR_ONLY,
        )

    @property
    def is_joint(self) -> bool:
        return self in (SinrMode.JOINT_DTS, SinrMode.JOINT_NODTS)


@dataclass(frozen=True)
class NetworkParams:
    """Global point-process, channel and power constants.

    Attributes:
        lam: base-station intensity (points per m^2).
        eta: path-loss exponent, > 2.
        sigma2: noise power, linear, >= 0 (0 = interference-limited).
        p_l: regular (low) transmit power, linear.
        p_h: boosted transmit power used in the single high-power slot.
        m_slots: power-cycling period M (the high-power slot is 1 of M).
        p_r: probe power of the stand-alone radar network.
        delta: 2/eta, stored because it appears throughout the
            interference transforms (derived, not settable).
    """

    lam: float = 1e-5
    eta: float = 4.0
    sigma2: float = 0.0
    p_l: float = 1.0
    p_h: float = 5.0
    m_slots: int = 10
    p_r: float = 1.0
    delta: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.lam > 0:
            raise ValueError(f"lam must be > 0, got {self.lam}")
        if not self.eta > 2:
            raise ValueError(f"eta must be > 2, got {self.eta}")
        if not self.sigma2 >= 0:
            raise ValueError(f"sigma2 must be >= 0, got {self.sigma2}")
        if not self.p_l > 0:
            raise ValueError(f"p_l must be > 0, got {self.p_l}")
        if not self.p_h >= self.p_l:
            raise ValueError(f"p_h must be >= p_l, got p_h={self.p_h} p_l={self.p_l}")
        if int(self.m_slots) != self.m_slots or self.m_slots < 2:
            raise ValueError(f"m_slots must be an integer >= 2, got {self.m_slots}")
        if not self.p_r > 0:
            raise ValueError(f"p_r must be > 0, got {self.p_r}")
        object.__setattr__(self, "m_slots", int(self.m_slots))
        object.__setattr__(self, "delta", 2.0 / self.eta)

    @property
    def p_avg(self) -> float:
        return p_avg(self)


def p_avg(params: NetworkParams) -> float:
    """Mean interferer transmit power under power cycling,
    (p_h + (M-1) p_l) / M.  Always lies in [p_l, p_h]."""
    return (params.p_h + (params.m_slots - 1) * params.p_l) / params.m_slots


def reference_unit(lam: float) -> float:
    """Reference distance unit v = 1/(60 sqrt(lam)) used to express link
    distances as multiples of the network density scale."""
    if not lam > 0:
        raise ValueError(f"lam must be > 0, got {lam}")
    return 1.0 / (60.0 * math.sqrt(lam))


@dataclass(frozen=True)
class ScenarioGeometry:
    """Fixed link distances of the evaluated cell.

    Attributes:
        r1: transmitter-to-target distance (m).
        r2: target-to-listening-radar distance (m).
        r_r: radar-to-target distance in the stand-alone radar network (m).
        v: reference distance unit (m).
    """

    r1: float
    r2: float
    r_r: float
    v: float

    def __post_init__(self) -> None:
        for name in ("r1", "r2", "r_r", "v"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")

    @classmethod
    def in_v_units(
        cls,
        lam: float,
        r1: float = 5.0,
        r2: float = 15.0,
        r_r: float | None = None,
        v: float | None = None,
    ) -> "ScenarioGeometry":
        """Build a geometry with distances given as multiples of v.

        r_r defaults to r1 so the stand-alone radar benchmark probes a target
        at the same range as the in-network transmitter does.
        """
        unit = reference_unit(lam) if v is None else v
        rr = r1 if r_r is None else r_r
        return cls(r1=r1 * unit, r2=r2 * unit, r_r=rr * unit, v=unit)


def db_to_linear(x_db: float) -> float:
    """Convert decibels to a linear ratio."""
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a linear ratio to decibels.  Raises on x <= 0."""
    if x <= 0:
        raise ValueError(f"linear_to_db requires x > 0, got {x}")
    return 10.0 * math.log10(x)
