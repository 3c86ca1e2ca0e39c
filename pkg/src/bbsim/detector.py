"""Phase II reception, the NP test statistic, thresholds, and the closed-form ROC.

The statistic is L' = sum_j Re{Tr(A_j Y'_j^H)} with A_j = gamma_j * g_CB g_AC^T P_s Psi
and Y'_j = Y_j - G_AB P_s Psi. Under H1 it is N(S, S/2) and under H0 N(0, S/2),
where S = sum_j ||A_j||^2, giving P_D = Q(Q^{-1}(P_FA) - sqrt(2S)).
"""

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy import special

from .errors import UsageError
from .nullproj import Projector, apply_scaled
from .scene import ChannelSet
from .seeding import complex_noise

_SQRT2 = math.sqrt(2.0)


def _q_f64(x: float) -> float:
    return 0.5 * special.erfc(x / _SQRT2)


def q_func(x):
    """Standard normal upper-tail probability.

    Array inputs use the float64 erfc path. Scalars are evaluated in extended
    precision and returned as a long double: near p ~ 1 a float64 result does
    not carry enough information for the inverse to recover x to 1e-9.
    """
    if np.ndim(x) > 0:
        return 0.5 * special.erfc(np.asarray(x, float) / _SQRT2)
    with mp.workdps(40):
        val = 0.5 * mp.erfc(mp.mpf(float(x)) / mp.sqrt(2))
        return np.longdouble(mp.nstr(val, 25))


def q_inv(p) -> float:
    """Inverse of q_func on (0, 1); bisection bracket refined by Newton steps."""
    p_ld = np.longdouble(p)
    if not 0.0 < p_ld < 1.0:
        raise ValueError(f"q_inv requires 0 < p < 1, got {p}")
    p64 = float(p_ld)
    lo, hi = -40.0, 40.0  # q_func(lo) ~ 1, q_func(hi) ~ 0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _q_f64(mid) > p64:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-6:
            break
    # Newton in extended precision against the exact (hi + lo split) target
    with mp.workdps(40):
        p_hi = float(p_ld)
        p_lo = float(p_ld - np.longdouble(p_hi))
        target = mp.mpf(p_hi) + mp.mpf(p_lo)
        x = mp.mpf(0.5 * (lo + hi))
        for _ in range(60):
            pdf = mp.exp(-x * x / 2) / mp.sqrt(2 * mp.pi)
            step = (0.5 * mp.erfc(x / mp.sqrt(2)) - target) / pdf
            x += step
            if abs(step) < mp.mpf("1e-25"):
                break
        return float(x)


@dataclass(frozen=True)
class Phase2Observation:
    y: np.ndarray     # N x tau_d received block
    slot: int
    hypothesis: str   # "H0" or "H1" tag, informational


@dataclass(frozen=True)
class DetectorSideInfo:
    a_list: list[np.ndarray]  # per-slot A_j, N x tau_d
    d: np.ndarray             # direct-link term G_AB P_s Psi, N x tau_d
    sum_a2: float             # sum_j ||A_j||^2


def receive_phase2(channels: ChannelSet, x_probe: np.ndarray, gamma: int,
                   present: bool, noise_source: np.random.Generator,
                   slot: int = 0) -> Phase2Observation:
    """One Phase II slot at PanB; x_probe is the already projected and scaled block."""
    y = channels.g_ab @ x_probe
    if present and gamma:
        y = y + gamma * np.outer(channels.g_cb, channels.g_ac @ x_probe)
    y = y + complex_noise(noise_source, y.shape)
    return Phase2Observation(y=y, slot=slot, hypothesis="H1" if present else "H0")


def side_info(channels: ChannelSet, proj: Projector, psi: np.ndarray,
              gamma_schedule) -> DetectorSideInfo:
    """PCSI side information from the true channels and the projector actually used."""
    x = apply_scaled(proj, psi)
    d = channels.g_ab @ x
    base = np.outer(channels.g_cb, channels.g_ac @ x)
    a_list = [gamma * base for gamma in gamma_schedule]
    sum_a2 = float(sum(np.linalg.norm(a) ** 2 for a in a_list))
    return DetectorSideInfo(a_list=a_list, d=d, sum_a2=sum_a2)


def np_statistic(observations: list[Phase2Observation], info: DetectorSideInfo) -> float:
    """L' = sum_j Re{Tr(A_j (Y_j - D)^H)}."""
    if len(observations) != len(info.a_list):
        raise UsageError(
            f"{len(observations)} observations for {len(info.a_list)} scheduled slots")
    total = 0.0
    for obs, a in zip(observations, info.a_list):
        total += float(np.sum(a * (obs.y - info.d).conj()).real)
    return total


def threshold_for_pfa(p_fa: float, sum_a2: float) -> float:
    """Threshold eta' = sqrt(S/2) * Q^{-1}(P_FA) achieving the target false-alarm rate."""
    if not 0.0 < p_fa < 1.0:
        raise ValueError(f"p_fa must be in (0, 1), got {p_fa}")
    if sum_a2 <= 0.0:
        raise ValueError("degenerate test: sum of ||A_j||^2 is zero")
    return math.sqrt(sum_a2 / 2.0) * q_inv(p_fa)


def theoretical_pd(p_fa: float, sum_a2: float) -> float:
    """Closed-form detection probability P_D = Q(Q^{-1}(P_FA) - sqrt(2S))."""
    if sum_a2 < 0.0:
        raise ValueError("sum_a2 must be >= 0")
    if not 0.0 <= p_fa <= 1.0:
        raise ValueError(f"p_fa must be in [0, 1], got {p_fa}")
    if p_fa == 0.0:
        return 0.0
    if p_fa == 1.0:
        return 1.0
    return float(q_func(q_inv(p_fa) - math.sqrt(2.0 * sum_a2)))
