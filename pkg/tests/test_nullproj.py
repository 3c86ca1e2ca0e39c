import numpy as np
import pytest

from bbsim import (ConfigurationError, apply_scaled, complex_svd,
                   identity_projector, make_projector, probe_matrix)


def _random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_svd_identity():
    res = complex_svd(np.eye(2, dtype=complex))
    assert np.allclose(res.sigma, [1.0, 1.0])
    assert res.rank == 2


def test_svd_rank_one_outer_product():
    rng = np.random.default_rng(0)
    u = _random_complex(rng, 5)
    v = _random_complex(rng, 7)
    u *= 2.0 / np.linalg.norm(u)
    v *= 3.0 / np.linalg.norm(v)
    res = complex_svd(np.outer(u, v.conj()))
    assert res.rank == 1
    assert res.sigma[0] == pytest.approx(6.0, rel=1e-12)


def test_svd_reconstruction_and_semi_unitarity():
    rng = np.random.default_rng(1)
    a = _random_complex(rng, (16, 16))
    res = complex_svd(a)
    recon = res.u @ np.diag(res.sigma) @ res.v.conj().T
    assert np.linalg.norm(recon - a) < 1e-8 * np.linalg.norm(a)
    assert np.allclose(res.v.conj().T @ res.v, np.eye(res.rank), atol=1e-8)
    assert np.allclose(res.u.conj().T @ res.u, np.eye(res.rank), atol=1e-8)
    assert np.all(np.diff(res.sigma) <= 1e-12)


def test_svd_zero_matrix():
    assert complex_svd(np.zeros((4, 6), dtype=complex)).rank == 0


@pytest.mark.parametrize("seed", range(5))
def test_projector_typed_invariants(seed):
    rng = np.random.default_rng(seed)
    est = _random_complex(rng, (16, 16))
    k = int(rng.integers(1, 4))
    proj = make_projector(est, k)
    assert np.allclose(proj.p, proj.p.conj().T, atol=1e-10)
    assert np.allclose(proj.p @ proj.p, proj.p, atol=1e-10)
    assert np.trace(proj.p).real == pytest.approx(16 - k, abs=1e-8)
    assert proj.scale == pytest.approx(np.sqrt(16 / (16 - k)))


def test_rank_one_estimate_fully_nulled(table_channels):
    proj = make_projector(table_channels.g_ab, 1)
    leak = np.linalg.norm(table_channels.g_ab @ proj.p)
    assert leak < 1e-10 * np.linalg.norm(table_channels.g_ab)
    assert np.trace(proj.p).real == pytest.approx(15.0, abs=1e-8)


def test_projector_configuration_errors(table_channels):
    with pytest.raises(ConfigurationError):
        make_projector(table_channels.g_ab, 16)
    with pytest.raises(ConfigurationError):
        make_projector(table_channels.g_ab, 0)
    # rank-1 estimate cannot support K=2
    with pytest.raises(ConfigurationError):
        make_projector(table_channels.g_ab, 2)


@pytest.mark.parametrize("seed", range(4))
def test_energy_preservation(seed):
    rng = np.random.default_rng(100 + seed)
    est = _random_complex(rng, (16, 16))
    proj = make_projector(est, int(rng.integers(1, 8)))
    psi = probe_matrix(16, 16, float(rng.uniform(0.1, 5.0)), 5e-6)
    out = apply_scaled(proj, psi)
    assert 2 * np.linalg.norm(out) ** 2 == pytest.approx(
        2 * np.linalg.norm(psi) ** 2, rel=1e-10)


def test_identity_projector_passthrough():
    proj = identity_projector(16)
    assert proj.k == 0 and proj.scale == 1.0
    psi = probe_matrix(16, 16, 1.0, 5e-6)
    assert np.array_equal(apply_scaled(proj, psi), psi)


def test_nullspace_annihilation():
    rng = np.random.default_rng(5)
    est = _random_complex(rng, (16, 16))
    k = 2
    proj = make_projector(est, k)
    v_k = complex_svd(est).v[:, :k]
    psi = v_k @ _random_complex(rng, (k, 16))  # columns inside span(V_K)
    assert np.linalg.norm(apply_scaled(proj, psi)) < 1e-10 * np.linalg.norm(psi)


def test_projector_invariant_under_estimate_scaling():
    rng = np.random.default_rng(6)
    est = _random_complex(rng, (16, 16))
    p1 = make_projector(est, 1).p
    p2 = make_projector((0.3 - 1.7j) * est, 1).p
    assert np.allclose(p1, p2, atol=1e-10)
