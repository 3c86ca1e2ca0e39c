"""SNR <-> power calibration and the dynamic-range figure of merit.

The dynamic range is the ratio of (direct + backscatter) received power to
backscatter-only power; averaging over channel-estimation noise is done in
the linear domain and converted to dB afterwards.
"""

import math

import numpy as np

from .chanest import ls_estimate, receive_pilots
from .nullproj import Projector, apply_scaled, identity_projector, make_projector
from .scene import ChannelSet, SceneConfig, build_channels
from .seeding import derive_stream
from .waveform import pilot_matrix, probe_matrix

# Backscatter power below this fraction of its unprojected value counts as
# fully nulled, making the ratio undefined (collinear BSD + perfect projection).
_UNDEFINED_REL_TOL = 1e-12


def power_from_snr_p(snr_p: float, beta_ba: float, j_p: int, tau_p: int,
                     symbol_length: float) -> float:
    """Transmit power realizing a pilot-phase SNR_p = beta_BA * p_t * J_p * tau_p * L."""
    if min(snr_p, beta_ba, j_p, tau_p, symbol_length) <= 0:
        raise ValueError("all SNR_p factors must be > 0")
    return snr_p / (beta_ba * j_p * tau_p * symbol_length)


def power_from_snr_d(snr_d: float, beta_cb: float, beta_ac: float, j_d: int,
                     tau_d: int, symbol_length: float, gamma_bar: float) -> float:
    """Transmit power realizing SNR_d = beta_CB * beta_AC * p_t * J_d * tau_d * L * gamma_bar."""
    if min(snr_d, beta_cb, beta_ac, j_d, tau_d, symbol_length) <= 0:
        raise ValueError("all SNR_d factors must be > 0")
    if not 0.0 < gamma_bar <= 1.0:
        raise ValueError(f"gamma_bar must be in (0, 1], got {gamma_bar}")
    return snr_d / (beta_cb * beta_ac * j_d * tau_d * symbol_length * gamma_bar)


def dynamic_range_sample(channels: ChannelSet, proj: Projector,
                         psi: np.ndarray) -> float:
    """Linear dynamic-range ratio for one projector realization; NaN when undefined."""
    x = apply_scaled(proj, psi)
    direct = float(np.linalg.norm(channels.g_ab @ x) ** 2)
    backscatter = float(np.linalg.norm(channels.g_cb) ** 2
                        * np.linalg.norm(channels.g_ac @ x) ** 2)
    reference = float(np.linalg.norm(channels.g_cb) ** 2
                      * np.linalg.norm(channels.g_ac @ psi) ** 2)
    if backscatter <= _UNDEFINED_REL_TOL * reference:
        return float("nan")
    return (direct + backscatter) / backscatter


def dynamic_range_mc(scene: SceneConfig, tau_p: int, tau_d: int, j_p: int,
                     symbol_length: float, k: int, snr_p_db, trials: int,
                     rng_seed: int, label: str = "dynrange") -> float:
    """Mean dynamic range in dB over `trials` Phase I estimation realizations.

    snr_p_db is a pilot SNR in dB, or the literal "none" (no projection) or
    "perfect" (projector from the true channel); both literals are
    deterministic, so a single sample is evaluated.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    channels = build_channels(scene)
    # the ratio is invariant to the probe power, any positive value works
    psi = probe_matrix(scene.m, tau_d, 1.0, symbol_length)

    if snr_p_db == "none":
        sample = dynamic_range_sample(channels, identity_projector(scene.m), psi)
        return 10.0 * math.log10(sample) if not math.isnan(sample) else float("nan")
    if snr_p_db == "perfect":
        proj = make_projector(channels.g_ab, k)
        sample = dynamic_range_sample(channels, proj, psi)
        return 10.0 * math.log10(sample) if not math.isnan(sample) else float("nan")

    snr_p = 10.0 ** (float(snr_p_db) / 10.0)
    p_t = power_from_snr_p(snr_p, channels.beta_ab, j_p, tau_p, symbol_length)
    phi = pilot_matrix(scene.n, tau_p, p_t, symbol_length)
    g_ba = channels.g_ba
    acc = 0.0
    for t in range(trials):
        rng = derive_stream(rng_seed, f"{label}|snr_p={snr_p_db:g}", t)
        obs = [receive_pilots(g_ba, phi, rng, slot=j) for j in range(j_p)]
        g_ab_est = ls_estimate(obs, phi).T
        proj = make_projector(g_ab_est, k)
        sample = dynamic_range_sample(channels, proj, psi)
        if math.isnan(sample):
            return float("nan")
        acc += sample
    return 10.0 * math.log10(acc / trials)
