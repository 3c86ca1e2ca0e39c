"""Line-of-sight geometry and deterministic channel construction.

Both panels are uniform linear arrays oriented along the y-axis
(broadside facing along the PanA-PanB baseline). Element i sits at
offset (i - (n-1)/2) * spacing from the array center, so a target on
the baseline is exactly broadside and the direct channel is an exact
rank-1 outer product under the far-field model used here.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class SceneConfig:
    pan_a_center: tuple[float, float]
    pan_b_center: tuple[float, float]
    bsd_pos: tuple[float, float]
    m: int  # antennas at PanA (carrier emitter)
    n: int  # antennas at PanB (reader)
    element_spacing: float = 0.05
    wavelength: float = 0.1

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ConfigurationError("antenna counts must be >= 1")
        if self.element_spacing <= 0 or self.wavelength <= 0:
            raise ConfigurationError("element_spacing and wavelength must be > 0")
        pts = [np.asarray(self.pan_a_center, float),
               np.asarray(self.pan_b_center, float),
               np.asarray(self.bsd_pos, float)]
        for i in range(3):
            for j in range(i + 1, 3):
                if np.linalg.norm(pts[i] - pts[j]) == 0.0:
                    raise ConfigurationError("device positions must be pairwise distinct")


@dataclass(frozen=True)
class ChannelSet:
    """The five deterministic channels; reciprocal views are derived, never stored."""
    g_ab: np.ndarray   # N x M, PanA -> PanB
    g_ac: np.ndarray   # M, PanA -> BSD
    g_cb: np.ndarray   # N, BSD -> PanB
    beta_ab: float
    beta_ac: float
    beta_cb: float

    @property
    def g_ba(self) -> np.ndarray:
        return self.g_ab.T

    @property
    def g_ca(self) -> np.ndarray:
        return self.g_ac

    @property
    def g_bc(self) -> np.ndarray:
        return self.g_cb


def path_loss(d: float) -> float:
    """Free-space power path loss 1/d^2 for distance d in meters."""
    if d <= 0:
        raise ValueError(f"distance must be > 0, got {d}")
    return 1.0 / d**2


def steering_vector(center, n_elems: int, spacing: float, wavelength: float,
                    target) -> np.ndarray:
    """Far-field ULA response toward `target`, unit-modulus entries.

    Element i contributes exp(-j*2*pi*(rhat . p_i)/wavelength) with p_i the
    element offset from the array center along the (y-axis) array axis.
    """
    center = np.asarray(center, float)
    target = np.asarray(target, float)
    delta = target - center
    r = np.linalg.norm(delta)
    if r == 0.0:
        raise ValueError("target coincides with array center")
    rhat = delta / r
    offsets = (np.arange(n_elems) - (n_elems - 1) / 2.0) * spacing
    # array axis is the y-axis, so only the y-component of rhat matters
    proj = offsets * rhat[1]
    return np.exp(-2j * np.pi * proj / wavelength)


def build_channels(scene: SceneConfig) -> ChannelSet:
    """All channel matrices/vectors for a scene (deterministic, rank-1 direct link)."""
    a = np.asarray(scene.pan_a_center, float)
    b = np.asarray(scene.pan_b_center, float)
    c = np.asarray(scene.bsd_pos, float)

    beta_ab = path_loss(np.linalg.norm(b - a))
    beta_ac = path_loss(np.linalg.norm(c - a))
    beta_cb = path_loss(np.linalg.norm(b - c))

    a_b_to_a = steering_vector(b, scene.n, scene.element_spacing, scene.wavelength, a)
    a_a_to_b = steering_vector(a, scene.m, scene.element_spacing, scene.wavelength, b)
    a_a_to_c = steering_vector(a, scene.m, scene.element_spacing, scene.wavelength, c)
    a_b_to_c = steering_vector(b, scene.n, scene.element_spacing, scene.wavelength, c)

    g_ab = np.sqrt(beta_ab) * np.outer(a_b_to_a, a_a_to_b)
    g_ac = np.sqrt(beta_ac) * a_a_to_c
    g_cb = np.sqrt(beta_cb) * a_b_to_c
    return ChannelSet(g_ab=g_ab, g_ac=g_ac, g_cb=g_cb,
                      beta_ab=beta_ab, beta_ac=beta_ac, beta_cb=beta_cb)
