import math
from dataclasses import replace

import numpy as np
import pytest

from bbsim import (build_channels, dynamic_range_mc, dynamic_range_sample,
                   identity_projector, make_projector, power_from_snr_d,
                   power_from_snr_p, probe_matrix)


def test_power_from_snr_p_arithmetic():
    p_t = power_from_snr_p(1.0, 1 / 36, 1, 16, 5e-6)
    assert p_t == pytest.approx(450_000.0, rel=1e-12)
    assert power_from_snr_p(1.0, 1 / 36, 2, 16, 5e-6) == pytest.approx(p_t / 2, rel=1e-12)
    assert (1 / 36) * p_t * 1 * 16 * 5e-6 == pytest.approx(1.0, rel=1e-12)


def test_power_from_snr_d_round_trip():
    beta_cb, beta_ac = 1 / 109, 1 / 109
    p_t = power_from_snr_d(0.1, beta_cb, beta_ac, 2, 16, 5e-6, 0.5)
    assert beta_cb * beta_ac * p_t * 2 * 16 * 5e-6 * 0.5 == pytest.approx(0.1, rel=1e-12)


def test_power_domain_errors():
    with pytest.raises(ValueError):
        power_from_snr_p(0.0, 1.0, 1, 16, 5e-6)
    with pytest.raises(ValueError):
        power_from_snr_d(0.1, 1.0, 1.0, 2, 16, 5e-6, 0.0)
    with pytest.raises(ValueError):
        power_from_snr_d(0.1, 1.0, 1.0, 2, 16, 5e-6, 1.5)


def _scene_at(table_config, y):
    return replace(table_config.scene, bsd_pos=(3.0, float(y)))


def test_no_projection_analytic_value(table_config):
    scene = _scene_at(table_config, 10.0)
    ch = build_channels(scene)
    psi = probe_matrix(16, 16, 1.0, 5e-6)
    zeta = dynamic_range_sample(ch, identity_projector(16), psi)
    # 1 + d_AC^2 * d_CB^2 / d_AB^2 with both BSD distances sqrt(109), baseline 6
    assert zeta == pytest.approx(1.0 + 109.0 * 109.0 / 36.0, rel=1e-10)
    assert 10 * math.log10(zeta) == pytest.approx(25.20, abs=0.01)


def test_perfect_projection_zero_db(table_config):
    scene = _scene_at(table_config, 10.0)
    ch = build_channels(scene)
    psi = probe_matrix(16, 16, 1.0, 5e-6)
    zeta = dynamic_range_sample(ch, make_projector(ch.g_ab, 1), psi)
    assert abs(10 * math.log10(zeta)) < 1e-9


def test_perfect_projection_collinear_undefined(table_config):
    scene = _scene_at(table_config, 0.0)
    ch = build_channels(scene)
    psi = probe_matrix(16, 16, 1.0, 5e-6)
    assert math.isnan(dynamic_range_sample(ch, make_projector(ch.g_ab, 1), psi))


def test_sample_always_at_least_one(table_config):
    rng = np.random.default_rng(8)
    psi = probe_matrix(16, 16, 1.0, 5e-6)
    for y in (0.5, 3.0, 10.0, 20.0):
        ch = build_channels(_scene_at(table_config, y))
        est = ch.g_ab + 0.1 * (rng.standard_normal((16, 16))
                               + 1j * rng.standard_normal((16, 16)))
        zeta = dynamic_range_sample(ch, make_projector(est, 1), psi)
        assert zeta >= 1.0


def test_mc_high_snr_approaches_perfect(table_config):
    scene = _scene_at(table_config, 10.0)
    zeta_db = dynamic_range_mc(scene, 16, 16, 1, 5e-6, 1, 300.0, 5, 0)
    assert abs(zeta_db) < 1e-6


def test_mc_no_projection_deterministic(table_config):
    scene = _scene_at(table_config, 10.0)
    a = dynamic_range_mc(scene, 16, 16, 1, 5e-6, 1, "none", 1, 0)
    b = dynamic_range_mc(scene, 16, 16, 1, 5e-6, 1, "none", 1, 12345)
    assert a == b
    assert a == pytest.approx(10 * math.log10(1 + 109 * 109 / 36), rel=1e-12)


def test_mc_monotone_in_pilot_snr(table_config):
    scene = _scene_at(table_config, 10.0)
    values = [dynamic_range_mc(scene, 16, 16, 1, 5e-6, 1, s, 200, 0)
              for s in (0.0, 15.0, 30.0)]
    assert values[0] > values[1] > values[2]


def test_mc_undefined_propagates(table_config):
    scene = _scene_at(table_config, 0.0)
    assert math.isnan(dynamic_range_mc(scene, 16, 16, 1, 5e-6, 1, "perfect", 1, 0))
