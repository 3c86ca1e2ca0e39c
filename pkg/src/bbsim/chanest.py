"""Phase I: pilot reception at PanA and least-squares estimation of the direct channel."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, UsageError
from .seeding import complex_noise


@dataclass(frozen=True)
class PilotObservation:
    y_p: np.ndarray  # M x tau_p received block
    slot: int


def receive_pilots(g_ba: np.ndarray, phi: np.ndarray,
                   noise_source: np.random.Generator, slot: int = 0) -> PilotObservation:
    """One pilot slot at PanA: Y = G_BA @ Phi + W, W ~ CN(0, 1) per entry.

    The BSD is silent during Phase I, so no backscatter term is generated.
    """
    if g_ba.shape[1] != phi.shape[0]:
        raise ConfigurationError(
            f"channel/pilot dimension mismatch: {g_ba.shape} vs {phi.shape}")
    w = complex_noise(noise_source, (g_ba.shape[0], phi.shape[1]))
    return PilotObservation(y_p=g_ba @ phi + w, slot=slot)


def ls_estimate(observations: list[PilotObservation], phi: np.ndarray) -> np.ndarray:
    """LS estimate of G_BA averaged over slots: (1/J_p) sum_j Y_j Phi^H (Phi Phi^H)^-1."""
    if not observations:
        raise UsageError("ls_estimate requires at least one pilot observation")
    gram = phi @ phi.conj().T
    y_mean = np.mean([obs.y_p for obs in observations], axis=0)
    # gram is (p_t*tau_p*L/N) I by construction; solve keeps this general
    return np.linalg.solve(gram.T, (y_mean @ phi.conj().T).T).T
