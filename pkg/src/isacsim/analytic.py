"""Closed-form SINR ccdf machinery.

Interference Laplace transforms over a Poisson field with a guard zone, the
Gauss hypergeometric evaluation they need for general path-loss exponents,
and the eleven coverage-probability formulas (communication, bistatic,
monostatic, joint and stand-alone radar, with and without power cycling).

Expectations over link distances are computed with fixed-node Gaussian
quadrature after substitutions that remove endpoint singularities and map
semi-infinite integrals onto an exponential weight; every curve evaluation
is verified by node halving and falls back to adaptive quadrature, raising
NumericalFailure when neither route converges.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from .fading import DEFAULT_FIT, FadingFitParams
from .geometry import r3_from_quantile
from .params import TYPICAL_CELL_CORRECTION, NetworkParams, ScenarioGeometry, SinrMode, p_avg


class NumericalFailure(RuntimeError):
    """Raised when a quadrature fails to converge to the requested tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and node counts for the ccdf evaluators.

    semiinf_nodes: Gauss-Laguerre node count for exponential-weighted
        semi-infinite integrals (serving distance, guard distances).
    r3_nodes: Gauss-Legendre node count for the quantile-substituted
        integral over the transmitter-to-radar distance.
    """

    abs_tol: float = 1e-8
    rel_tol: float = 1e-6
    max_subdivisions: int = 200
    semiinf_nodes: int = 160
    r3_nodes: int = 64

    def __post_init__(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be > 0")
        if self.semiinf_nodes < 4 or self.r3_nodes < 4:
            raise ValueError("node counts must be >= 4")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class CcdfRequest:
    """One batch ccdf evaluation: a mode over a strictly increasing grid of
    positive linear SINR thresholds."""

    mode: SinrMode
    theta_grid: np.ndarray
    params: NetworkParams
    geom: ScenarioGeometry
    quad: QuadratureConfig = DEFAULT_QUADRATURE
    fit: FadingFitParams = DEFAULT_FIT

    def __post_init__(self) -> None:
        grid = np.asarray(self.theta_grid, dtype=float)
        object.__setattr__(self, "theta_grid", grid)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("theta_grid must be a non-empty 1-D array")
        if np.any(grid <= 0):
            raise ValueError("theta_grid values must be > 0")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("theta_grid must be strictly increasing")


@dataclass(frozen=True)
class CcdfCurve:
    """A ccdf curve on a threshold grid, with standard errors when it came
    from simulation.  provenance is one of 'analytic', 'sim-A', 'sim-B'."""

    theta_grid: np.ndarray
    values: np.ndarray
    mode: SinrMode
    provenance: str
    stderr: np.ndarray | None = None

    def __post_init__(self) -> None:
        grid = np.asarray(self.theta_grid, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "theta_grid", grid)
        object.__setattr__(self, "values", vals)
        if grid.shape != vals.shape:
            raise ValueError("theta_grid and values must have the same shape")
        if np.any(vals < -1e-12) or np.any(vals > 1 + 1e-12):
            raise ValueError("ccdf values must lie in [0, 1]")
        if self.stderr is not None:
            object.__setattr__(self, "stderr", np.asarray(self.stderr, dtype=float))


# ---------------------------------------------------------------------------
# Gauss hypergeometric function 2F1(1, 1-delta; 2-delta; -x) for x >= 0
# ---------------------------------------------------------------------------

_SERIES_MAX_TERMS = 2000


def hyp2f1_interference(x, delta: float):
    """Evaluate 2F1(1, 1-delta; 2-delta; -x) for x >= 0, delta in (0, 1).

    Three regimes: direct series for x <= 0.5, the Pfaff transform mapping
    the argument to x/(1+x) for 0.5 < x <= 8, and the inverse-argument
    connection formula beyond (the Pfaff series alone needs O(1/(1-w))
    terms as w -> 1, so a large-x branch is required).
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    x_in = np.asarray(x, dtype=float)
    scalar = x_in.ndim == 0
    x_arr = np.atleast_1d(x_in).astype(float)
    if np.any(x_arr < 0):
        raise ValueError("hyp2f1_interference requires x >= 0")
    out = np.empty_like(x_arr)

    small = x_arr <= 0.5
    mid = (x_arr > 0.5) & (x_arr <= 8.0)
    large = x_arr > 8.0

    if np.any(small):
        xs = x_arr[small]
        acc = np.ones_like(xs)
        term = np.ones_like(xs)
        for k in range(1, _SERIES_MAX_TERMS):
            term = term * (-xs) * (k - delta) / (k + 1.0 - delta)
            acc += term
            if np.all(np.abs(term) <= 1e-16 * np.abs(acc)):
                break
        else:
            raise NumericalFailure("hypergeometric series did not converge (small branch)")
        out[small] = acc

    if np.any(mid):
        xm = x_arr[mid]
        w = xm / (1.0 + xm)
        acc = np.ones_like(w)
        term = np.ones_like(w)
        for k in range(1, _SERIES_MAX_TERMS):
            term = term * w * k / (k + 1.0 - delta)
            acc += term
            if np.all(term <= 1e-16 * acc):
                break
        else:
            raise NumericalFailure("hypergeometric series did not converge (Pfaff branch)")
        out[mid] = acc / (1.0 + xm)

    if np.any(large):
        xl = x_arr[large]
        with np.errstate(over="ignore"):
            head = xl ** (delta - 1.0) * math.pi / math.sin(math.pi * delta)
        tail = np.zeros_like(xl)
        term = 1.0 / (delta * xl)
        tail += term
        for j in range(1, _SERIES_MAX_TERMS):
            term = term * (-1.0 / xl) * (delta + j - 1.0) / (delta + j)
            tail += term
            if np.all(np.abs(term) <= 1e-16 * np.maximum(np.abs(tail), 1e-300)):
                break
        else:
            raise NumericalFailure("hypergeometric series did not converge (large branch)")
        out[large] = (1.0 - delta) * (head - tail)

    return float(out[0]) if scalar else out.reshape(x_in.shape)


# ---------------------------------------------------------------------------
# Interference Laplace transforms
# ---------------------------------------------------------------------------

def _pgfl_exponent(s, guard, params: NetworkParams):
    """Exponent of the Poisson-field Laplace transform beyond a guard radius:
    -2 pi lam s / ((eta-2) guard^(eta-2)) * 2F1(1, 1-delta; 2-delta; -s/guard^eta),
    with the arctan closed form at eta = 4."""
    s = np.asarray(s, dtype=float)
    guard = np.asarray(guard, dtype=float)
    if params.eta == 4.0:
        rs = np.sqrt(s)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(guard > 0, rs / (guard * guard), np.inf)
            ang = np.where(rs > 0, np.arctan(ratio), 0.0)
        return -np.pi * params.lam * rs * ang
    eta = params.eta
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        arg = s * guard ** (-eta)
    f = hyp2f1_interference(arg, params.delta)
    with np.errstate(divide="ignore", invalid="ignore"):
        pref = -2.0 * np.pi * params.lam * s / ((eta - 2.0) * guard ** (eta - 2.0))
    return np.where(s == 0, 0.0, pref * f)


def lt_interference_comm(s, r0, params: NetworkParams):
    """Laplace transform of the unit-power interference at the served user,
    conditioned on the serving distance r0 (guard radius, no edge point)."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("Laplace argument s must be >= 0")
    return np.exp(_pgfl_exponent(s, r0, params))


def lt_interference_guarded(s, psi, params: NetworkParams):
    """Laplace transform of the unit-power interference at a radar-mode
    receiver whose nearest interferer sits exactly at the guard radius psi:
    Poisson-field factor times 1/(1 + s psi^-eta) for the edge interferer."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("Laplace argument s must be >= 0")
    psi = np.asarray(psi, dtype=float)
    if np.any(psi <= 0):
        raise ValueError("guard radius psi must be > 0")
    with np.errstate(over="ignore"):
        edge = 1.0 / (1.0 + s * psi ** (-params.eta))
    return np.exp(_pgfl_exponent(s, psi, params)) * edge


# ---------------------------------------------------------------------------
# Quadrature nodes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _laguerre(n: int):
    t, w = special.roots_laguerre(n)
    return t, w


@lru_cache(maxsize=32)
def _legendre_unit(n: int):
    x, w = special.roots_legendre(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _theta_array(theta):
    arr = np.atleast_1d(np.asarray(theta, dtype=float))
    if np.any(arr <= 0):
        raise ValueError("theta must be > 0")
    return arr


def _maybe_scalar(values, theta):
    return float(values[0]) if np.ndim(theta) == 0 else values


# ---------------------------------------------------------------------------
# Communication-mode ccdfs
# ---------------------------------------------------------------------------

def _comm_values_nodes(theta, interf_scale, p_sig, params, n_nodes):
    """E over the serving distance of LT(theta R0^eta * interf_scale) *
    exp(-theta R0^eta sigma2 / p_sig), via t = pi b lam R0^2."""
    t, w = _laguerre(n_nodes)
    c = np.pi * TYPICAL_CELL_CORRECTION * params.lam
    x = np.sqrt(t / c)
    r_eta = x ** params.eta
    s = theta[:, None] * r_eta[None, :] * interf_scale
    lt = lt_interference_comm(s, x[None, :], params)
    noise = np.exp(-theta[:, None] * r_eta[None, :] * params.sigma2 / p_sig)
    return (lt * noise) @ w


def _comm_adaptive_point(th, interf_scale, p_sig, params, quad):
    c = np.pi * TYPICAL_CELL_CORRECTION * params.lam

    def integrand(t):
        x = math.sqrt(t / c)
        s = th * x ** params.eta * interf_scale
        lt = float(lt_interference_comm(s, x, params))
        return math.exp(-t) * lt * math.exp(-th * x ** params.eta * params.sigma2 / p_sig)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(
            integrand, 0.0, np.inf,
            epsabs=quad.abs_tol, epsrel=quad.rel_tol, limit=quad.max_subdivisions,
        )
    if err > 10.0 * max(quad.abs_tol, quad.rel_tol * abs(val)):
        raise NumericalFailure(
            f"communication ccdf quadrature did not converge at theta={th:g} "
            f"(adaptive error {err:.3e})"
        )
    return val


def _comm_curve(theta, interf_scale, p_sig, params, quad):
    full = _comm_values_nodes(theta, interf_scale, p_sig, params, quad.semiinf_nodes)
    half = _comm_values_nodes(theta, interf_scale, p_sig, params, max(quad.semiinf_nodes // 2, 8))
    tol = np.maximum(quad.abs_tol, quad.rel_tol * np.abs(full))
    bad = np.abs(full - half) > tol
    for i in np.nonzero(bad)[0]:
        full[i] = _comm_adaptive_point(theta[i], interf_scale, p_sig, params, quad)
    return np.clip(full, 0.0, 1.0)


def ccdf_comm_chi(theta, chi: str, params: NetworkParams,
                  quad: QuadratureConfig = DEFAULT_QUADRATURE):
    """Coverage of the communication mode in a slot where the serving
    transmitter uses power p_chi while interferers average p_avg."""
    if chi not in ("low", "high"):
        raise ValueError(f"chi must be 'low' or 'high', got {chi!r}")
    p_chi = params.p_h if chi == "high" else params.p_l
    th = _theta_array(theta)
    vals = _comm_curve(th, p_avg(params) / p_chi, p_chi, params, quad)
    return _maybe_scalar(vals, theta)


def ccdf_comm_avg(theta, params: NetworkParams,
                  quad: QuadratureConfig = DEFAULT_QUADRATURE):
    """Slot-averaged communication coverage: 1/M of the high-power slot plus
    (M-1)/M of a regular slot."""
    th = _theta_array(theta)
    m = params.m_slots
    high = _comm_curve(th, p_avg(params) / params.p_h, params.p_h, params, quad)
    low = _comm_curve(th, p_avg(params) / params.p_l, params.p_l, params, quad)
    vals = high / m + low * (m - 1) / m
    return _maybe_scalar(vals, theta)


def ccdf_comm_nodts(theta, params: NetworkParams,
                    quad: QuadratureConfig = DEFAULT_QUADRATURE):
    """Communication coverage without power cycling (every transmitter at
    p_l); identical to a plain cellular network."""
    th = _theta_array(theta)
    vals = _comm_curve(th, 1.0, params.p_l, params, quad)
    return _maybe_scalar(vals, theta)


# ---------------------------------------------------------------------------
# Radar-mode ccdfs (monostatic family: single expectation over a guard law)
# ---------------------------------------------------------------------------
#
# In the substituted variable t = pi lam (psi^2 - r3^2) the detection-miss
# integrand (1 - LT * noise)^m has a boundary layer where the edge factor
# turns over (psi^eta ~ s, i.e. t near pi lam (s^(2/eta) - r3^2)) followed
# by a slow algebraic decay ~ t^-m spanning several decades before the e^-t
# weight cuts off.  A Gauss-Legendre panel covers [0, T0] across the layer;
# a second panel in log t covers [T0, 40] where the algebraic decay is a
# smooth exponential; beyond t = 40 the weight is below 5e-18.

_LAYER_MARGIN = 8.0
_T_CUT = 40.0
_T_FLOOR = 1e-6


def _layer_split(s, r3sq, lam, eta):
    """Panel end T0 covering the edge-factor layer for LT argument s."""
    with np.errstate(over="ignore", invalid="ignore"):
        t0 = _LAYER_MARGIN * np.pi * lam * (np.asarray(s) ** (2.0 / eta) - r3sq)
    return np.clip(np.nan_to_num(t0, nan=0.0, posinf=_T_CUT), _T_FLOOR, _T_CUT)


def _miss_at(t, s, noise, r3sq, m_exp, params):
    psi = np.sqrt(r3sq + t / (np.pi * params.lam))
    return (1.0 - lt_interference_guarded(s, psi, params) * noise) ** m_exp


def _miss_integral(s, noise, r3sq, m_exp, params, n_panel, n_log):
    """E_t[(1 - LT_guarded(s | psi(t)) * noise)^m] with psi(t) =
    sqrt(r3^2 + t/(pi lam)) and weight e^-t, split at the layer scale.

    s, noise and r3sq broadcast to a common shape (r3sq is 0 for an
    unconditioned guard law); one extra axis of quadrature nodes is added
    and contracted.
    """
    s = np.asarray(s, dtype=float)
    noise = np.asarray(noise, dtype=float)
    shape = np.broadcast_shapes(s.shape, noise.shape, np.shape(r3sq))
    s = np.broadcast_to(s, shape)[..., None]
    noise = np.broadcast_to(noise, shape)[..., None]
    r3sq = np.broadcast_to(np.asarray(r3sq, dtype=float), shape)[..., None]

    t0 = _layer_split(s, r3sq, params.lam, params.eta)

    tau, w_tau = _legendre_unit(n_panel)
    t_panel = t0 * tau
    f = np.exp(-t_panel) * _miss_at(t_panel, s, noise, r3sq, m_exp, params)
    part1 = (f @ w_tau) * t0[..., 0]

    x, w_x = _legendre_unit(n_log)
    width = np.log(_T_CUT / t0)
    t_log = t0 * np.exp(width * x)
    f = t_log * np.exp(-t_log) * _miss_at(t_log, s, noise, r3sq, m_exp, params)
    part2 = (f @ w_x) * width[..., 0]
    return part1 + part2


def _miss_integral_adaptive(s, noise, r3sq, m_exp, params, quad):
    t0 = float(_layer_split(s, r3sq, params.lam, params.eta))

    def integrand(t):
        psi = math.sqrt(r3sq + t / (math.pi * params.lam))
        lt = float(lt_interference_guarded(s, psi, params))
        return math.exp(-t) * (1.0 - lt * noise) ** m_exp

    total, err_total = 0.0, 0.0
    with warnings.catch_warnings():
        # the reported error estimate is checked below
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for a, b in ((0.0, t0), (t0, _T_CUT), (_T_CUT, np.inf)):
            val, err = integrate.quad(
                integrand, a, b,
                epsabs=quad.abs_tol, epsrel=quad.rel_tol, limit=quad.max_subdivisions,
            )
            total += val
            err_total += err
    if err_total > 10.0 * max(quad.abs_tol, quad.rel_tol * abs(total)):
        raise NumericalFailure(
            f"radar ccdf quadrature did not converge (adaptive error {err_total:.3e})"
        )
    return total


def _mono_values_nodes(theta, coef_i, coef_n, m_exp, params, n_tail):
    s = theta * coef_i
    noise = np.exp(-theta * coef_n)
    n_panel = max(16, n_tail // 2)
    return 1.0 - _miss_integral(s, noise, 0.0, m_exp, params, n_panel, n_tail)


def _mono_adaptive_point(th, coef_i, coef_n, m_exp, params, quad):
    return 1.0 - _miss_integral_adaptive(th * coef_i, math.exp(-th * coef_n),
                                         0.0, m_exp, params, quad)


def _mono_curve(theta, coef_i, coef_n, m_exp, params, quad):
    full = _mono_values_nodes(theta, coef_i, coef_n, m_exp, params, quad.semiinf_nodes)
    half = _mono_values_nodes(theta, coef_i, coef_n, m_exp, params, max(quad.semiinf_nodes // 2, 8))
    tol = np.maximum(quad.abs_tol, quad.rel_tol * np.abs(full))
    bad = np.abs(full - half) > tol
    for i in np.nonzero(bad)[0]:
        full[i] = _mono_adaptive_point(theta[i], coef_i, coef_n, m_exp, params, quad)
    return np.clip(full, 0.0, 1.0)


def ccdf_mono_dts(theta, params: NetworkParams, geom: ScenarioGeometry,
                  quad: QuadratureConfig = DEFAULT_QUADRATURE,
                  fit: FadingFitParams = DEFAULT_FIT):
    """Monostatic (echo at the transmitter) coverage with power cycling:
    signal p_h h1^2 r1^(-2 eta) against interference averaged to p_avg."""
    th = _theta_array(theta)
    base = fit.eps_mono * geom.r1 ** (2 * params.eta)
    vals = _mono_curve(
        th, base * p_avg(params) / params.p_h, base * params.sigma2 / params.p_h,
        fit.m_mono, params, quad,
    )
    return _maybe_scalar(vals, theta)


def ccdf_mono_nodts(theta, params: NetworkParams, geom: ScenarioGeometry,
                    quad: QuadratureConfig = DEFAULT_QUADRATURE,
                    fit: FadingFitParams = DEFAULT_FIT):
    """Monostatic coverage without power cycling (all powers p_l)."""
    th = _theta_array(theta)
    base = fit.eps_mono * geom.r1 ** (2 * params.eta)
    vals = _mono_curve(th, base, base * params.sigma2 / params.p_l,
                       fit.m_mono, params, quad)
    return _maybe_scalar(vals, theta)


def ccdf_radar_only(theta, params: NetworkParams, geom: ScenarioGeometry,
                    quad: QuadratureConfig = DEFAULT_QUADRATURE,
                    fit: FadingFitParams = DEFAULT_FIT):
    """Coverage of the stand-alone radar network probing at p_r over a field
    of like radars: monostatic path loss r_r^(-2 eta), same guard law."""
    th = _theta_array(theta)
    base = fit.eps_mono * geom.r_r ** (2 * params.eta)
    vals = _mono_curve(th, base, base * params.sigma2 / params.p_r,
                       fit.m_mono, params, quad)
    return _maybe_scalar(vals, theta)


# ---------------------------------------------------------------------------
# Bistatic ccdfs (nested expectation over R3 then the conditioned guard law)
# ---------------------------------------------------------------------------

def _bistatic_values_nodes(theta, coef_i, coef_n, m_exp, params, geom, nu, nt):
    u, wu = _legendre_unit(nu)
    r3 = r3_from_quantile(u, geom.r1, geom.r2)
    s = theta[:, None] * coef_i
    noise = np.exp(-theta * coef_n)[:, None]
    n_panel = max(16, nt // 2)
    inner = _miss_integral(s, noise, (r3 * r3)[None, :], m_exp, params,
                           n_panel, nt)        # (n_theta, nu)
    return 1.0 - inner @ wu


def _bistatic_adaptive_point(th, coef_i, coef_n, m_exp, params, geom, quad):
    u, wu = _legendre_unit(quad.r3_nodes)
    r3 = r3_from_quantile(u, geom.r1, geom.r2)
    s = th * coef_i
    noise = math.exp(-th * coef_n)
    inner = np.array([
        _miss_integral_adaptive(s, noise, r3j * r3j, m_exp, params, quad)
        for r3j in r3
    ])
    return 1.0 - float(inner @ wu)


def _bistatic_curve(theta, coef_i, coef_n, m_exp, params, geom, quad):
    full = _bistatic_values_nodes(theta, coef_i, coef_n, m_exp, params, geom,
                                  quad.r3_nodes, quad.semiinf_nodes)
    half = _bistatic_values_nodes(theta, coef_i, coef_n, m_exp, params, geom,
                                  max(quad.r3_nodes // 2, 8),
                                  max(quad.semiinf_nodes // 2, 8))
    tol = np.maximum(quad.abs_tol, quad.rel_tol * np.abs(full))
    bad = np.abs(full - half) > tol
    for i in np.nonzero(bad)[0]:
        full[i] = _bistatic_adaptive_point(theta[i], coef_i, coef_n, m_exp,
                                           params, geom, quad)
    return np.clip(full, 0.0, 1.0)


def ccdf_bistatic_dts(theta, params: NetworkParams, geom: ScenarioGeometry,
                      quad: QuadratureConfig = DEFAULT_QUADRATURE,
                      fit: FadingFitParams = DEFAULT_FIT):
    """Bistatic (passive listening radar) coverage with power cycling:
    signal p_h h1 h2 (r1 r2)^(-eta), interference averaged to p_avg."""
    th = _theta_array(theta)
    base = fit.eps_bi * (geom.r1 * geom.r2) ** params.eta
    vals = _bistatic_curve(
        th, base * p_avg(params) / params.p_h, base * params.sigma2 / params.p_h,
        fit.m_bi, params, geom, quad,
    )
    return _maybe_scalar(vals, theta)


def ccdf_bistatic_nodts(theta, params: NetworkParams, geom: ScenarioGeometry,
                        quad: QuadratureConfig = DEFAULT_QUADRATURE,
                        fit: FadingFitParams = DEFAULT_FIT):
    """Bistatic coverage without power cycling (all powers p_l)."""
    th = _theta_array(theta)
    base = fit.eps_bi * (geom.r1 * geom.r2) ** params.eta
    vals = _bistatic_curve(th, base, base * params.sigma2 / params.p_l,
                           fit.m_bi, params, geom, quad)
    return _maybe_scalar(vals, theta)


# ---------------------------------------------------------------------------
# Joint detection and dispatch
# ---------------------------------------------------------------------------

def ccdf_joint(bistatic, mono):
    """Union of the two detection events under independence:
    b + m - b m.  Inputs must be probabilities."""
    b = np.asarray(bistatic, dtype=float)
    m = np.asarray(mono, dtype=float)
    if np.any((b < 0) | (b > 1)) or np.any((m < 0) | (m > 1)):
        raise ValueError("ccdf_joint inputs must lie in [0, 1]")
    return b + m - b * m


def evaluate_ccdf(mode: SinrMode, theta, params: NetworkParams,
                  geom: ScenarioGeometry,
                  quad: QuadratureConfig = DEFAULT_QUADRATURE,
                  fit: FadingFitParams = DEFAULT_FIT):
    """Evaluate any mode's analytic ccdf on scalar or array thresholds."""
    if mode == SinrMode.COMM_HIGH:
        return ccdf_comm_chi(theta, "high", params, quad)
    if mode == SinrMode.COMM_LOW:
        return ccdf_comm_chi(theta, "low", params, quad)
    if mode == SinrMode.COMM_AVG:
        return ccdf_comm_avg(theta, params, quad)
    if mode == SinrMode.COMM_NODTS:
        return ccdf_comm_nodts(theta, params, quad)
    if mode == SinrMode.BISTATIC_DTS:
        return ccdf_bistatic_dts(theta, params, geom, quad, fit)
    if mode == SinrMode.BISTATIC_NODTS:
        return ccdf_bistatic_nodts(theta, params, geom, quad, fit)
    if mode == SinrMode.MONO_DTS:
        return ccdf_mono_dts(theta, params, geom, quad, fit)
    if mode == SinrMode.MONO_NODTS:
        return ccdf_mono_nodts(theta, params, geom, quad, fit)
    if mode == SinrMode.JOINT_DTS:
        return ccdf_joint(ccdf_bistatic_dts(theta, params, geom, quad, fit),
                          ccdf_mono_dts(theta, params, geom, quad, fit))
    if mode == SinrMode.JOINT_NODTS:
        return ccdf_joint(ccdf_bistatic_nodts(theta, params, geom, quad, fit),
                          ccdf_mono_nodts(theta, params, geom, quad, fit))
    if mode == SinrMode.RADAR_ONLY:
        return ccdf_radar_only(theta, params, geom, quad, fit)
    raise ValueError(f"unhandled mode {mode}")


def evaluate_modes(modes, theta, params: NetworkParams, geom: ScenarioGeometry,
                   quad: QuadratureConfig = DEFAULT_QUADRATURE,
                   fit: FadingFitParams = DEFAULT_FIT) -> dict[SinrMode, np.ndarray]:
    """Evaluate analytic ccdfs for many modes at once, deriving each joint
    mode from its constituents instead of re-integrating them."""
    modes = list(modes)
    needed = set(modes)
    if SinrMode.JOINT_DTS in needed:
        needed.update((SinrMode.BISTATIC_DTS, SinrMode.MONO_DTS))
    if SinrMode.JOINT_NODTS in needed:
        needed.update((SinrMode.BISTATIC_NODTS, SinrMode.MONO_NODTS))
    out: dict[SinrMode, np.ndarray] = {}
    for mode in needed:
        if not mode.is_joint:
            out[mode] = np.atleast_1d(evaluate_ccdf(mode, theta, params, geom, quad, fit))
    if SinrMode.JOINT_DTS in needed:
        out[SinrMode.JOINT_DTS] = ccdf_joint(out[SinrMode.BISTATIC_DTS],
                                             out[SinrMode.MONO_DTS])
    if SinrMode.JOINT_NODTS in needed:
        out[SinrMode.JOINT_NODTS] = ccdf_joint(out[SinrMode.BISTATIC_NODTS],
                                               out[SinrMode.MONO_NODTS])
    return {m: out[m] for m in modes}


_MONOTONICITY_SLACK = 1e-9


def evaluate_curve(request: CcdfRequest) -> CcdfCurve:
    """Evaluate a full curve and enforce the nonincreasing-in-theta
    post-condition (violations beyond slack indicate quadrature trouble)."""
    values = evaluate_ccdf(request.mode, request.theta_grid, request.params,
                           request.geom, request.quad, request.fit)
    values = np.asarray(values, dtype=float)
    rises = np.diff(values)
    worst = rises.max() if rises.size else 0.0
    if worst > _MONOTONICITY_SLACK:
        i = int(np.argmax(rises))
        raise NumericalFailure(
            f"analytic ccdf for {request.mode.value} increased by {worst:.3e} "
            f"between theta={request.theta_grid[i]:g} and "
            f"theta={request.theta_grid[i + 1]:g}"
        )
    return CcdfCurve(theta_grid=request.theta_grid, values=values,
                     mode=request.mode, provenance="analytic")
