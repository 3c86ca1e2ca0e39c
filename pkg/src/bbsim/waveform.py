"""Orthogonal pilot and probing signal construction.

Both generators take the first rows of a unitary DFT matrix, which
satisfies the required Gram identities exactly and deterministically.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class PhaseParams:
    j_p: int                 # pilot slots (Phase I)
    j_d: int                 # probing slots (Phase II)
    tau_p: int               # symbols per pilot slot
    tau_d: int               # symbols per probing slot
    symbol_length: float     # seconds
    p_t_pilot: float         # transmit power during Phase I (W)
    p_t_probe: float         # transmit power during Phase II (W)
    gamma_schedule: tuple[int, ...]  # per-slot reflection coefficients in Phase II

    def __post_init__(self):
        if min(self.j_p, self.j_d, self.tau_p, self.tau_d) < 1:
            raise ConfigurationError("slot and symbol counts must be >= 1")
        if self.symbol_length <= 0 or self.p_t_pilot <= 0 or self.p_t_probe <= 0:
            raise ConfigurationError("symbol length and powers must be > 0")
        if len(self.gamma_schedule) != self.j_d:
            raise ConfigurationError("gamma_schedule length must equal j_d")
        if any(g not in (0, 1) for g in self.gamma_schedule):
            raise ConfigurationError("gamma_schedule values must be 0 or 1")

    @property
    def gamma_bar(self) -> float:
        return float(np.mean(self.gamma_schedule))

    @property
    def j_total(self) -> int:
        return self.j_p + self.j_d


def default_gamma_schedule(j_d: int) -> tuple[int, ...]:
    """Alternating 1,0,1,0,... so two slots carry exactly one on and one off."""
    return tuple(1 - (j % 2) for j in range(j_d))


def _dft_rows(n_rows: int, size: int) -> np.ndarray:
    k = np.arange(size)
    f = np.exp(-2j * np.pi * np.outer(k, k) / size) / np.sqrt(size)
    return f[:n_rows]


def pilot_matrix(n: int, tau_p: int, p_t: float, symbol_length: float) -> np.ndarray:
    """N x tau_p pilot block with Phi @ Phi^H = (p_t*tau_p*L/N) * I_N."""
    if tau_p < n:
        raise ConfigurationError(f"tau_p={tau_p} must be >= N={n} for orthogonal pilots")
    return np.sqrt(p_t * tau_p * symbol_length / n) * _dft_rows(n, tau_p)


def probe_matrix(m: int, tau_d: int, p_t: float, symbol_length: float) -> np.ndarray:
    """M x tau_d probing block with Psi @ Psi^H = (p_t*tau_d*L/M) * I_M."""
    if tau_d < m:
        raise ConfigurationError(f"tau_d={tau_d} must be >= M={m} for an orthogonal probe")
    return np.sqrt(p_t * tau_d * symbol_length / m) * _dft_rows(m, tau_d)


def signal_energy(x: np.ndarray, j_slots: int) -> float:
    """Total transmitted energy over j_slots repetitions of block x."""
    return j_slots * float(np.linalg.norm(x) ** 2)
