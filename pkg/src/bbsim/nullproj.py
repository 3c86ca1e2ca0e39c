"""SVD of the estimated direct channel and the nullspace projector.

P = I - V_K V_K^H annihilates the top-K right singular directions of the
estimate; the scale sqrt(M/(M-K)) keeps the radiated energy unchanged.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class SvdResult:
    u: np.ndarray       # N x K0
    sigma: np.ndarray   # K0 positive singular values, decreasing
    v: np.ndarray       # M x K0 (right singular vectors as columns)

    @property
    def rank(self) -> int:
        return self.sigma.size


@dataclass(frozen=True)
class Projector:
    p: np.ndarray   # M x M orthogonal projection
    k: int          # retained-direction count (0 = no projection)
    scale: float    # sqrt(M/(M-K))


def complex_svd(a: np.ndarray) -> SvdResult:
    """Thin SVD keeping only numerically nonzero singular values."""
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s.size and s[0] > 0:
        tol = s[0] * max(a.shape) * np.finfo(s.dtype).eps
        k0 = int(np.count_nonzero(s > tol))
    else:
        k0 = 0
    return SvdResult(u=u[:, :k0], sigma=s[:k0], v=vh[:k0].conj().T)


def identity_projector(m: int) -> Projector:
    """No-projection baseline: P = I, K = 0, scale = 1."""
    return Projector(p=np.eye(m, dtype=complex), k=0, scale=1.0)


def make_projector(g_ab_est: np.ndarray, k: int) -> Projector:
    """Projector onto the orthogonal complement of the top-k row space of g_ab_est."""
    m = g_ab_est.shape[1]
    if not 1 <= k < m:
        raise ConfigurationError(f"K={k} must satisfy 1 <= K < M={m}")
    svd = complex_svd(g_ab_est)
    if k > svd.rank:
        raise ConfigurationError(f"K={k} exceeds the estimate rank {svd.rank}")
    v_k = svd.v[:, :k]
    p = np.eye(m, dtype=complex) - v_k @ v_k.conj().T
    return Projector(p=p, k=k, scale=float(np.sqrt(m / (m - k))))


def apply_scaled(proj: Projector, psi: np.ndarray) -> np.ndarray:
    """The transmitted Phase II block: sqrt(M/(M-K)) * P @ Psi."""
    return proj.scale * (proj.p @ psi)
