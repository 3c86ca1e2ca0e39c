"""Deterministic noise-stream derivation for reproducible Monte-Carlo runs.

A stream is keyed by (master_seed, experiment_label, trial_index); the same
triple yields a bit-identical stream regardless of execution order or the
number of workers.
"""

import hashlib

import numpy as np


def derive_stream(master_seed: int, experiment_label: str, trial_index: int) -> np.random.Generator:
    digest = hashlib.sha256(experiment_label.encode("utf-8")).digest()
    label_words = tuple(int.from_bytes(digest[i:i + 4], "little") for i in range(0, 16, 4))
    ss = np.random.SeedSequence(entropy=int(master_seed),
                                spawn_key=label_words + (int(trial_index),))
    return np.random.default_rng(ss)


def complex_noise(rng: np.random.Generator, shape) -> np.ndarray:
    """i.i.d. circularly-symmetric complex Gaussian, unit variance per entry."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
