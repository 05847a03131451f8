"""The acceptance-criteria battery behind `isacsim validate`.

Each criterion function measures one contract of the toolkit and returns a
CriterionResult with the measured value, the expected value and the
tolerance it was judged at.  Two criteria are known to fail by a measured,
systematic amount (see the package README): the closed-form radar curves
carry the error of the fitted joint-fading laws and of evaluating the
fractional power outside the conditional interference expectation, and the
two-hop fading fit itself has a sup-distance of about 0.07 from the exact
product-exponential law.  Those criteria are still evaluated at their
stated tolerances and reported honestly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import analytic
from .analytic import CcdfCurve, ccdf_joint, evaluate_ccdf, evaluate_modes
from .fading import (
    DEFAULT_FIT,
    FadingFitParams,
    cdf_hj,
    cdf_hjr,
    sample_hj,
    sample_hjr,
)
from .geometry import cdf_r3
from .metrics import find_interior_extremum, horizontal_shift_db, ks_distance, throughput
from .montecarlo import SimConfig, run_campaign
from .params import NetworkParams, ScenarioGeometry, SinrMode, reference_unit

DEFAULT_SEED = 1
FIG3_TRIALS = 10_000

_RADAR_DTS = (SinrMode.BISTATIC_DTS, SinrMode.MONO_DTS, SinrMode.JOINT_DTS)
_RADAR_NODTS = (SinrMode.BISTATIC_NODTS, SinrMode.MONO_NODTS, SinrMode.JOINT_NODTS)


@dataclass
class CriterionResult:
    """Outcome of one validation criterion.

    primary: counts toward the overall pass/fail gate; informational rows
    (primary=False) document supplementary measurements.
    """

    cid: str
    passed: bool
    measured: str
    expected: str
    tolerance: str
    detail: str = ""
    primary: bool = True

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.cid}: measured={self.measured} "
                f"expected={self.expected} tolerance={self.tolerance}")


def _default_setup() -> tuple[NetworkParams, ScenarioGeometry, np.ndarray]:
    params = NetworkParams(lam=1e-5, eta=4.0, sigma2=0.0, p_l=1.0, p_h=5.0,
                           m_slots=10, p_r=1.0)
    geom = ScenarioGeometry.in_v_units(params.lam, r1=5.0, r2=15.0, r_r=5.0)
    theta_db = np.arange(-50.0, 10.0 + 1e-9, 2.0)
    return params, geom, 10.0 ** (theta_db / 10.0)


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------

def criterion_fig3_agreement(trials: int = FIG3_TRIALS, seed: int = DEFAULT_SEED,
                             workers: int | None = None) -> CriterionResult:
    """Reference-scenario agreement between the analytic curves and the
    fidelity-A simulator: |empirical - analytic| <= max(3 stderr, 0.01) at
    every grid point of every mode."""
    params, geom, theta = _default_setup()
    modes = list(SinrMode)
    config = SimConfig(trials=trials, seed=seed, interferer_power="averaged")
    curves = run_campaign(modes, theta, params, geom, config, workers=workers)
    ana = evaluate_modes(modes, theta, params, geom)

    rows = []
    worst = 0.0
    for curve in curves:
        gap = np.abs(curve.values - ana[curve.mode])
        tol = np.maximum(3.0 * curve.stderr, 0.01)
        ratio = float(np.max(gap / tol))
        worst = max(worst, ratio)
        rows.append(f"{curve.mode.value}: max|gap|={gap.max():.4f} "
                    f"max(gap/tol)={ratio:.2f} {'ok' if ratio <= 1 else 'exceeded'}")
    return CriterionResult(
        cid="fig3_agreement",
        passed=worst <= 1.0,
        measured=f"max(gap/tol)={worst:.2f}",
        expected="gap <= max(3*stderr, 0.01) everywhere",
        tolerance=f"trials={trials}",
        detail="; ".join(rows),
    )


def criterion_comm_closed_form() -> CriterionResult:
    """Quadrature against the independent closed form of the plain-network
    coverage at 0 dB, eta=4, sigma2=0: b / (b + sqrt(th) atan(sqrt(th)))."""
    params, _, _ = _default_setup()
    value = analytic.ccdf_comm_nodts(1.0, params)
    oracle = 1.3 / (1.3 + math.pi / 4.0)
    err = abs(value - oracle)
    return CriterionResult(
        cid="comm_closed_form",
        passed=err <= 1e-6,
        measured=f"{value:.12g} (|err|={err:.3e})",
        expected=f"{oracle:.12g}",
        tolerance="1e-6",
    )


def criterion_radar_only_equivalence() -> CriterionResult:
    """With p_r = p_l and r_r = r1 the stand-alone radar curve equals the
    in-network monostatic curve without power cycling."""
    params, geom, theta = _default_setup()
    ro = evaluate_ccdf(SinrMode.RADAR_ONLY, theta, params, geom)
    mono = evaluate_ccdf(SinrMode.MONO_NODTS, theta, params, geom)
    err = float(np.max(np.abs(ro - mono)))
    return CriterionResult(
        cid="radar_only_equivalence",
        passed=err <= 1e-9,
        measured=f"max|diff|={err:.3e}",
        expected="identical curves",
        tolerance="1e-9",
    )


def criterion_ph_m_interchange() -> CriterionResult:
    """With p_l = 1 and sigma2 = 0 the radar curves are invariant under
    swapping the numeric values of p_h and M."""
    _, geom, theta = _default_setup()
    pa = NetworkParams(lam=1e-5, eta=4.0, sigma2=0.0, p_l=1.0, p_h=5.0, m_slots=10)
    pb = NetworkParams(lam=1e-5, eta=4.0, sigma2=0.0, p_l=1.0, p_h=10.0, m_slots=5)
    err = 0.0
    for mode in _RADAR_DTS:
        a = evaluate_ccdf(mode, theta, pa, geom)
        b = evaluate_ccdf(mode, theta, pb, geom)
        err = max(err, float(np.max(np.abs(a - b))))
    return CriterionResult(
        cid="ph_m_interchange",
        passed=err <= 1e-12,
        measured=f"max|diff|={err:.3e}",
        expected="identical radar curves for (p_h=5, M=10) and (p_h=10, M=5)",
        tolerance="1e-12",
    )


def criterion_symmetries() -> list[CriterionResult]:
    """Structural properties of the analytic curves: r1/r2 swap invariance,
    joint dominance, cycling dominance, monotonicity in theta."""
    params, geom, theta = _default_setup()
    swapped = ScenarioGeometry(r1=geom.r2, r2=geom.r1, r_r=geom.r_r, v=geom.v)
    results = []

    err = 0.0
    for mode in (SinrMode.BISTATIC_DTS, SinrMode.BISTATIC_NODTS):
        a = evaluate_ccdf(mode, theta, params, geom)
        b = evaluate_ccdf(mode, theta, params, swapped)
        err = max(err, float(np.max(np.abs(a - b))))
    r_grid = np.linspace(abs(geom.r1 - geom.r2), geom.r1 + geom.r2, 101)
    err_cdf = float(np.max(np.abs(cdf_r3(r_grid, geom.r1, geom.r2)
                                  - cdf_r3(r_grid, geom.r2, geom.r1))))
    results.append(CriterionResult(
        cid="bistatic_r1r2_symmetry",
        passed=max(err, err_cdf) <= 1e-12,
        measured=f"curves max|diff|={err:.3e}, cdf max|diff|={err_cdf:.3e}",
        expected="exact invariance under swapping r1 and r2",
        tolerance="1e-12",
    ))

    ana = evaluate_modes(list(SinrMode), theta, params, geom)
    lower = np.maximum(ana[SinrMode.BISTATIC_DTS], ana[SinrMode.MONO_DTS])
    lower_n = np.maximum(ana[SinrMode.BISTATIC_NODTS], ana[SinrMode.MONO_NODTS])
    worst = min(
        float(np.min(ana[SinrMode.JOINT_DTS] - lower)),
        float(np.min(ana[SinrMode.JOINT_NODTS] - lower_n)),
    )
    results.append(CriterionResult(
        cid="joint_dominance",
        passed=worst >= -1e-12,
        measured=f"min(joint - max(parts))={worst:.3e}",
        expected=">= 0 pointwise",
        tolerance="-1e-12",
    ))

    worst = 0.0
    for dts, nod in zip(_RADAR_DTS, _RADAR_NODTS):
        worst = min(worst, float(np.min(ana[dts] - ana[nod])))
    results.append(CriterionResult(
        cid="dts_dominance",
        passed=worst >= -1e-12,
        measured=f"min(cycled - uncycled)={worst:.3e}",
        expected=">= 0 pointwise for p_h > p_l",
        tolerance="-1e-12",
    ))

    worst = 0.0
    for vals in ana.values():
        if vals.size > 1:
            worst = max(worst, float(np.max(np.diff(vals))))
    results.append(CriterionResult(
        cid="theta_monotonicity",
        passed=worst <= 1e-9,
        measured=f"max rise={worst:.3e}",
        expected="nonincreasing in theta",
        tolerance="1e-9",
    ))
    return results


def criterion_fading_fits(draws: int = 1_000_000,
                          seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    """Sup distance between the fitted joint-fading cdfs and draws from the
    exact laws.  The stated 0.05 bound is evaluated both for the two-hop
    fit (whose constants admit no freedom) and for both conventions of the
    echo-fit rate."""
    rng = np.random.default_rng([seed, 2_000_000])
    hj = sample_hj(rng, draws)
    hjr = sample_hjr(rng, draws)

    fit_default = DEFAULT_FIT  # echo rate = harmonic(m_bi)/2
    fit_mm = FadingFitParams.default(mono_rate="mean_matched")

    ks_hj = ks_distance(hj, lambda x: cdf_hj(x, fit_default))
    ks_mm = ks_distance(hjr, lambda x: cdf_hjr(x, fit_mm))
    ks_def = ks_distance(hjr, lambda x: cdf_hjr(x, fit_default))

    return [
        CriterionResult(
            cid="fading_fit_hj",
            passed=ks_hj <= 0.05,
            measured=f"KS={ks_hj:.4f}",
            expected="two-hop fit within 0.05 of exact product law",
            tolerance="0.05",
        ),
        CriterionResult(
            cid="fading_fit_hjr_mean_matched",
            passed=ks_mm <= 0.05,
            measured=f"KS={ks_mm:.4f}",
            expected="echo fit (rate harmonic(m_mono)/2) within 0.05",
            tolerance="0.05",
        ),
        CriterionResult(
            cid="fading_fit_hjr_default",
            passed=ks_def <= 0.05,
            measured=f"KS={ks_def:.4f}",
            expected="echo fit (shipped rate harmonic(m_bi)/2) within 0.05",
            tolerance="0.05",
            primary=False,
        ),
    ]


def criterion_headline_gains() -> list[CriterionResult]:
    """Mid-curve horizontal shifts from enabling power cycling: about
    +5.5 dB for joint radar detection, and below 1.5 dB in magnitude for
    the slot-averaged communication mode."""
    params, geom, _ = _default_setup()
    theta_db = np.arange(-50.0, 10.0 + 1e-9, 0.25)
    theta = 10.0 ** (theta_db / 10.0)
    ana = evaluate_modes(
        [SinrMode.JOINT_DTS, SinrMode.JOINT_NODTS, SinrMode.COMM_AVG,
         SinrMode.COMM_NODTS], theta, params, geom)

    def curve(mode):
        return CcdfCurve(theta_grid=theta, values=ana[mode], mode=mode,
                         provenance="analytic")

    radar_shift = horizontal_shift_db(curve(SinrMode.JOINT_DTS),
                                      curve(SinrMode.JOINT_NODTS), level=0.5)
    comm_shift = horizontal_shift_db(curve(SinrMode.COMM_AVG),
                                     curve(SinrMode.COMM_NODTS), level=0.5)
    return [
        CriterionResult(
            cid="headline_gain_joint",
            passed=abs(radar_shift - 5.5) <= 1.0,
            measured=f"{radar_shift:+.3f} dB",
            expected="+5.5 dB",
            tolerance="+/- 1 dB",
        ),
        CriterionResult(
            cid="headline_gain_comm",
            passed=abs(comm_shift) < 1.5,
            measured=f"{comm_shift:+.3f} dB",
            expected="|shift| < 1 dB nominal",
            tolerance="< 1.5 dB",
        ),
    ]


FIG10_TARGETS = {
    "bistatic_vs_mono_dts": 279.3,
    "bistatic_vs_mono_nodts": 726.2,
    "joint_vs_bistatic_dts": 11.4,
    "joint_vs_bistatic_nodts": 18.1,
    "joint_vs_mono_dts": 322.4,
    "joint_vs_mono_nodts": 876.2,
}


def criterion_fig10_percentages(k_metres: float = 50.5,
                                step: float = 0.5) -> CriterionResult:
    """Constrained sweep r1 = k - r2 at theta = -40 dB: relative gains
    between detection techniques at each curve's minimum.  Primary band is
    +/- 10% relative; if that cannot be met the criterion downgrades to
    ordering plus order-of-magnitude agreement, recorded in the report."""
    params, _, _ = _default_setup()
    theta = 10.0 ** (-40.0 / 10.0)
    r1s = np.arange(step, k_metres - step / 2, step)

    v = reference_unit(params.lam)
    bi_d = np.empty(r1s.size)
    bi_n = np.empty(r1s.size)
    mo_d = np.empty(r1s.size)
    mo_n = np.empty(r1s.size)
    for i, r1 in enumerate(r1s):
        geom = ScenarioGeometry(r1=r1, r2=k_metres - r1, r_r=r1, v=v)
        bi_d[i] = analytic.ccdf_bistatic_dts(theta, params, geom)
        bi_n[i] = analytic.ccdf_bistatic_nodts(theta, params, geom)
        mo_d[i] = analytic.ccdf_mono_dts(theta, params, geom)
        mo_n[i] = analytic.ccdf_mono_nodts(theta, params, geom)
    jo_d = ccdf_joint(bi_d, mo_d)
    jo_n = ccdf_joint(bi_n, mo_n)

    mins = {name: float(c.min()) for name, c in
            (("bi_d", bi_d), ("bi_n", bi_n), ("mo_d", mo_d),
             ("mo_n", mo_n), ("jo_d", jo_d), ("jo_n", jo_n))}

    def pct(a, b):
        return 100.0 * (a - b) / b

    measured = {
        "bistatic_vs_mono_dts": pct(mins["bi_d"], mins["mo_d"]),
        "bistatic_vs_mono_nodts": pct(mins["bi_n"], mins["mo_n"]),
        "joint_vs_bistatic_dts": pct(mins["jo_d"], mins["bi_d"]),
        "joint_vs_bistatic_nodts": pct(mins["jo_n"], mins["bi_n"]),
        "joint_vs_mono_dts": pct(mins["jo_d"], mins["mo_d"]),
        "joint_vs_mono_nodts": pct(mins["jo_n"], mins["mo_n"]),
    }
    rel_err = {name: abs(measured[name] - FIG10_TARGETS[name]) / FIG10_TARGETS[name]
               for name in FIG10_TARGETS}
    strict = all(e <= 0.10 for e in rel_err.values())
    ordering = all(m > 0 for m in measured.values())
    magnitude = all(0.1 <= measured[n] / FIG10_TARGETS[n] <= 10.0 for n in FIG10_TARGETS)

    detail = "; ".join(f"{n}={measured[n]:.1f}% (target {FIG10_TARGETS[n]}%, "
                       f"rel err {100 * rel_err[n]:.0f}%)" for n in FIG10_TARGETS)
    if strict:
        return CriterionResult(
            cid="fig10_percentages", passed=True,
            measured="all six gains within 10% relative",
            expected=str(FIG10_TARGETS), tolerance="+/- 10% relative",
            detail=detail)
    return CriterionResult(
        cid="fig10_percentages",
        passed=ordering and magnitude,
        measured="DOWNGRADED to ordering + order-of-magnitude: "
                 f"ordering={'ok' if ordering else 'violated'}, "
                 f"magnitude={'ok' if magnitude else 'violated'}",
        expected=str(FIG10_TARGETS),
        tolerance="+/- 10% relative, else ordering + order of magnitude",
        detail=detail,
    )


def criterion_throughput_minimum() -> CriterionResult:
    """Slot-averaged communication throughput against the cycling period M
    has a strict interior minimum (evaluated at theta = 10 dB)."""
    theta = 10.0
    ms = np.arange(2, 41)
    tp = np.empty(ms.size)
    for i, m in enumerate(ms):
        params = NetworkParams(lam=1e-5, eta=4.0, sigma2=0.0, p_l=1.0,
                               p_h=5.0, m_slots=int(m))
        cov = analytic.ccdf_comm_avg(theta, params)
        tp[i] = throughput(theta, cov)
    idx = find_interior_extremum(ms, tp, kind="min")
    return CriterionResult(
        cid="throughput_minimum",
        passed=idx is not None,
        measured="no interior minimum" if idx is None
                 else f"strict interior minimum at M={ms[idx]}",
        expected="strict interior minimum in M in {2..40}",
        tolerance="existence",
        detail=f"throughput(M=2..6)={np.array2string(tp[:5], precision=5)}",
    )


def criterion_determinism(trials: int = 1500, seed: int = 7) -> CriterionResult:
    """Campaign output is bitwise identical for 1, 2 and 8 workers."""
    params, geom, theta = _default_setup()
    modes = list(SinrMode)
    config = SimConfig(trials=trials, seed=seed)
    base = run_campaign(modes, theta, params, geom, config, workers=1)
    identical = True
    for workers in (2, 8):
        other = run_campaign(modes, theta, params, geom, config, workers=workers)
        for a, b in zip(base, other):
            if not (np.array_equal(a.values, b.values)
                    and np.array_equal(a.stderr, b.stderr)):
                identical = False
    return CriterionResult(
        cid="determinism_workers",
        passed=identical,
        measured="bitwise identical" if identical else "differs across workers",
        expected="identical curves for 1, 2 and 8 workers",
        tolerance="bitwise",
    )


def run_all(trials: int = FIG3_TRIALS, seed: int = DEFAULT_SEED,
            workers: int | None = None) -> list[CriterionResult]:
    """Run every criterion in report order."""
    results: list[CriterionResult] = [
        criterion_fig3_agreement(trials=trials, seed=seed, workers=workers),
        criterion_comm_closed_form(),
        criterion_radar_only_equivalence(),
        criterion_ph_m_interchange(),
    ]
    results.extend(criterion_symmetries())
    results.extend(criterion_fading_fits(seed=seed))
    results.extend(criterion_headline_gains())
    results.append(criterion_fig10_percentages())
    results.append(criterion_throughput_minimum())
    results.append(criterion_determinism())
    return results


def all_primary_passed(results: list[CriterionResult]) -> bool:
    return all(r.passed for r in results if r.primary)
