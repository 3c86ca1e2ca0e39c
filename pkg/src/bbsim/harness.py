"""Reproducible experiment drivers for the ROC and dynamic-range figures.

Monte-Carlo trials are split into fixed-size chunks; each chunk draws from a
stream keyed by (master seed, experiment label, chunk index), so results are
bit-identical regardless of execution order or worker count. Aggregation is
an order-independent sum of per-chunk exceedance counts.
"""

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .chanest import ls_estimate, receive_pilots
from .detector import side_info, theoretical_pd, threshold_for_pfa
from .errors import ConfigurationError
from .metrics import dynamic_range_mc, power_from_snr_d, power_from_snr_p
from .nullproj import identity_projector, make_projector
from .scene import SceneConfig, build_channels
from .seeding import complex_noise, derive_stream
from .waveform import pilot_matrix, probe_matrix

CHUNK_TRIALS = 4096

# scenario encodings: "no_projection", "perfect_projection", ("estimated", snr_p_db)
Scenario = str | tuple[str, float]


@dataclass(frozen=True)
class RocPoint:
    scenario: str
    p_fa: float
    p_d_sim: float
    p_d_theory: float
    n_trials: int


@dataclass(frozen=True)
class DynRangePoint:
    y: float
    snr_p_db: str       # numeric string, "none", or "perfect"
    zeta_db: float      # NaN when undefined
    n_trials: int


@dataclass(frozen=True)
class ExperimentConfig:
    scene: SceneConfig
    j_p: int = 1
    j_d: int = 2
    tau_p: int = 16
    tau_d: int = 16
    symbol_length: float = 5e-6
    gamma_schedule: tuple[int, ...] = (1, 0)
    k: int = 1
    snr_d_db: float = -10.0
    roc_scenarios: tuple[Scenario, ...] = ("no_projection", "perfect_projection")
    p_fa_grid: tuple[float, ...] = ()
    roc_trials: int = 100_000
    y_grid: tuple[float, ...] = tuple(float(y) for y in range(21))
    dyn_snr_p_db: tuple[float, ...] = (0.0, 15.0, 30.0)
    dyn_trials: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.tau_p < self.scene.n or self.tau_d < self.scene.m:
            raise ConfigurationError("need tau_p >= N and tau_d >= M")
        if len(self.gamma_schedule) != self.j_d:
            raise ConfigurationError("gamma_schedule length must equal j_d")
        if not self.p_fa_grid or any(not 0 < p < 1 for p in self.p_fa_grid):
            raise ConfigurationError("p_fa_grid must be non-empty with values in (0, 1)")
        if list(self.p_fa_grid) != sorted(self.p_fa_grid):
            raise ConfigurationError("p_fa_grid must be sorted")
        if not self.y_grid or list(self.y_grid) != sorted(self.y_grid):
            raise ConfigurationError("y_grid must be non-empty and sorted")
        if min(self.y_grid) < 0:
            raise ConfigurationError("y_grid values must be >= 0")
        if self.roc_trials < 1 or self.dyn_trials < 1:
            raise ConfigurationError("trial counts must be >= 1")
        if not 1 <= self.k < self.scene.m:
            raise ConfigurationError("need 1 <= K < M")


def default_p_fa_grid(n_points: int = 50, p_min: float = 1e-3) -> tuple[float, ...]:
    """Logarithmically spaced false-alarm grid in [p_min, 1)."""
    grid = np.logspace(np.log10(p_min), np.log10(0.99), n_points)
    return tuple(float(p) for p in grid)


def default_config(seed: int = 0) -> ExperimentConfig:
    scene = SceneConfig(pan_a_center=(0.0, 0.0), pan_b_center=(6.0, 0.0),
                        bsd_pos=(3.0, 3.0), m=16, n=16,
                        element_spacing=0.05, wavelength=0.1)
    return ExperimentConfig(scene=scene, p_fa_grid=default_p_fa_grid(), seed=seed)


def resolve_workers() -> int:
    """Worker count from SIM_THREADS (0 or unset = auto)."""
    raw = os.environ.get("SIM_THREADS", "0")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"SIM_THREADS must be an integer, got {raw!r}") from exc
    if n < 0:
        raise ConfigurationError("SIM_THREADS must be >= 0")
    if n == 0:
        return min(os.cpu_count() or 1, 8)
    return n


def _lprime_chunk(args):
    """One chunk of NP-statistic samples; top level so process pools can pickle it."""
    a_stack, master_seed, label, chunk_index, chunk_size, present = args
    rng = derive_stream(master_seed, label, chunk_index)
    w = complex_noise(rng, (chunk_size,) + a_stack.shape)
    y_res = w + a_stack if present else w  # Y'_j = present*A_j + W_j
    samples = np.einsum("jkl,cjkl->c", a_stack.conj(), y_res).real
    return chunk_index, samples


def simulate_statistics(info, n_trials: int, master_seed: int, label: str,
                        present: bool, workers: int | None = None) -> np.ndarray:
    """n_trials samples of L' under one hypothesis, deterministic in (seed, label)."""
    a_stack = np.asarray(info.a_list)
    n_chunks = (n_trials + CHUNK_TRIALS - 1) // CHUNK_TRIALS
    tasks = []
    for c in range(n_chunks):
        size = min(CHUNK_TRIALS, n_trials - c * CHUNK_TRIALS)
        tasks.append((a_stack, master_seed, label, c, size, present))
    workers = resolve_workers() if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_lprime_chunk, tasks))
    else:
        results = [_lprime_chunk(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    return np.concatenate([samples for _, samples in results])


def _scenario_label(scenario: Scenario) -> str:
    if isinstance(scenario, tuple):
        return f"estimated({scenario[1]:g})"
    return scenario


def _build_projector(scenario: Scenario, config: ExperimentConfig, channels,
                     label: str):
    """Projector for a ROC scenario; the estimated case fixes one Phase I draw."""
    if scenario == "no_projection":
        return identity_projector(config.scene.m)
    if scenario == "perfect_projection":
        return make_projector(channels.g_ab, config.k)
    if isinstance(scenario, tuple) and scenario[0] == "estimated":
        snr_p = 10.0 ** (float(scenario[1]) / 10.0)
        p_t = power_from_snr_p(snr_p, channels.beta_ab, config.j_p, config.tau_p,
                               config.symbol_length)
        phi = pilot_matrix(config.scene.n, config.tau_p, p_t, config.symbol_length)
        rng = derive_stream(config.seed, f"{label}|pilot", 0)
        obs = [receive_pilots(channels.g_ba, phi, rng, slot=j) for j in range(config.j_p)]
        return make_projector(ls_estimate(obs, phi).T, config.k)
    raise ConfigurationError(f"unknown scenario {scenario!r}")


def run_roc(config: ExperimentConfig, workers: int | None = None,
            return_calibration: bool = False):
    """ROC points for every scenario: analytic thresholds, simulated detections.

    Both hypotheses are simulated; the empirical false-alarm rates are not part
    of the CSV schema but are returned when return_calibration is set.
    """
    channels = build_channels(config.scene)
    gamma_bar = float(np.mean(config.gamma_schedule))
    snr_d = 10.0 ** (config.snr_d_db / 10.0)
    p_t = power_from_snr_d(snr_d, channels.beta_cb, channels.beta_ac,
                           config.j_d, config.tau_d, config.symbol_length, gamma_bar)
    psi = probe_matrix(config.scene.m, config.tau_d, p_t, config.symbol_length)

    points = []
    calibration: dict[str, list[float]] = {}
    for scenario in config.roc_scenarios:
        label = _scenario_label(scenario)
        proj = _build_projector(scenario, config, channels, f"roc|{label}")
        info = side_info(channels, proj, psi, config.gamma_schedule)
        l1 = simulate_statistics(info, config.roc_trials, config.seed,
                                 f"roc|{label}|H1", present=True, workers=workers)
        l0 = simulate_statistics(info, config.roc_trials, config.seed,
                                 f"roc|{label}|H0", present=False, workers=workers)
        calibration[label] = []
        for p_fa in config.p_fa_grid:
            eta = threshold_for_pfa(p_fa, info.sum_a2)
            calibration[label].append(float(np.mean(l0 > eta)))
            points.append(RocPoint(scenario=label, p_fa=float(p_fa),
                                   p_d_sim=float(np.mean(l1 > eta)),
                                   p_d_theory=theoretical_pd(p_fa, info.sum_a2),
                                   n_trials=config.roc_trials))
    if return_calibration:
        return points, calibration
    return points


def run_dynrange(config: ExperimentConfig) -> list[DynRangePoint]:
    """Dynamic-range sweep over BSD height for every projection scenario."""
    scenarios = ["none"] + [f"{s:g}" for s in config.dyn_snr_p_db] + ["perfect"]
    points = []
    for y in config.y_grid:
        scene = replace(config.scene, bsd_pos=(config.scene.bsd_pos[0], float(y)))
        for scen in scenarios:
            mode = scen if scen in ("none", "perfect") else float(scen)
            deterministic = scen in ("none", "perfect")
            zeta_db = dynamic_range_mc(
                scene, config.tau_p, config.tau_d, config.j_p,
                config.symbol_length, config.k, mode,
                trials=1 if deterministic else config.dyn_trials,
                rng_seed=config.seed, label=f"dynrange|y={y:g}")
            points.append(DynRangePoint(y=float(y), snr_p_db=scen, zeta_db=zeta_db,
                                        n_trials=1 if deterministic else config.dyn_trials))
    return points


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def write_roc_csv(points: list[RocPoint], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["scenario", "p_fa", "p_d_sim", "p_d_theory", "n_trials"])
        for pt in points:
            writer.writerow([pt.scenario, _fmt(pt.p_fa), _fmt(pt.p_d_sim),
                             _fmt(pt.p_d_theory), pt.n_trials])


def write_dynrange_csv(points: list[DynRangePoint], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["y_m", "snr_p_db", "zeta_db", "n_trials"])
        for pt in points:
            zeta = "" if math.isnan(pt.zeta_db) else _fmt(pt.zeta_db)
            writer.writerow([_fmt(pt.y), pt.snr_p_db, zeta, pt.n_trials])
