import math

import pytest

from isacsim import (
    NetworkParams,
    ScenarioGeometry,
    SinrMode,
    db_to_linear,
    linear_to_db,
    p_avg,
    reference_unit,
)


def test_p_avg_examples():
    assert p_avg(NetworkParams(p_h=5, p_l=1, m_slots=10)) == pytest.approx(1.4)
    assert p_avg(NetworkParams(p_h=1, p_l=1, m_slots=7)) == pytest.approx(1.0)
    assert p_avg(NetworkParams(p_h=10, p_l=1, m_slots=5)) == pytest.approx(2.8)


def test_p_avg_bounds_and_monotonicity():
    prev = math.inf
    for m in range(2, 200):
        params = NetworkParams(p_h=5, p_l=1, m_slots=m)
        avg = p_avg(params)
        assert params.p_l <= avg <= params.p_h
        assert avg <= prev
        prev = avg
    assert p_avg(NetworkParams(p_h=5, p_l=1, m_slots=100000)) == pytest.approx(1.0, abs=1e-3)


def test_delta_derived():
    assert NetworkParams(eta=4.0).delta == 0.5
    assert NetworkParams(eta=3.2).delta == pytest.approx(2 / 3.2)


@pytest.mark.parametrize("kwargs", [
    dict(lam=0.0),
    dict(lam=-1e-5),
    dict(eta=2.0),
    dict(sigma2=-1.0),
    dict(p_l=0.0),
    dict(p_h=0.5, p_l=1.0),
    dict(m_slots=1),
    dict(m_slots=2.5),
    dict(p_r=0.0),
])
def test_params_validation(kwargs):
    with pytest.raises(ValueError):
        NetworkParams(**kwargs)


def test_db_conversions():
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(-40.0) == pytest.approx(1e-4, rel=1e-12)
    assert linear_to_db(db_to_linear(3.7)) == pytest.approx(3.7, rel=1e-12)
    with pytest.raises(ValueError):
        linear_to_db(0.0)
    with pytest.raises(ValueError):
        linear_to_db(-2.0)


def test_reference_unit():
    lam = 1e-5
    assert reference_unit(lam) == pytest.approx(1.0 / (60.0 * math.sqrt(lam)))
    with pytest.raises(ValueError):
        reference_unit(0.0)


def test_geometry_in_v_units():
    lam = 1e-5
    geom = ScenarioGeometry.in_v_units(lam, r1=5.0, r2=15.0)
    v = reference_unit(lam)
    assert geom.r1 == pytest.approx(5 * v)
    assert geom.r2 == pytest.approx(15 * v)
    assert geom.r_r == pytest.approx(5 * v)  # defaults to r1
    assert geom.v == pytest.approx(v)
    with pytest.raises(ValueError):
        ScenarioGeometry(r1=0.0, r2=1.0, r_r=1.0, v=1.0)


def test_sinr_mode_tags():
    assert SinrMode.from_tag("BistaticDts") is SinrMode.BISTATIC_DTS
    assert len(list(SinrMode)) == 11
    with pytest.raises(ValueError):
        SinrMode.from_tag("Bogus")
    assert SinrMode.JOINT_DTS.is_joint and SinrMode.JOINT_DTS.is_radar
    assert not SinrMode.COMM_AVG.is_radar
