"""Render ROC and dynamic-range figures from simulator CSV files.

Strictly read-only over the CSVs: nothing is recomputed, undefined cells are
skipped. Theory curves are drawn as lines, simulation results as markers.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

ROC_HEADER = ["scenario", "p_fa", "p_d_sim", "p_d_theory", "n_trials"]
DYNRANGE_HEADER = ["y_m", "snr_p_db", "zeta_db", "n_trials"]

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_IO = 3


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class PlotSpec:
    input_csv: Path
    output_image: Path
    figure_kind: str  # "roc" or "dynrange"
    dpi: int = 150


def _read_rows(path: Path, expected_header: list[str]) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {expected_header}")
        if header != expected_header:
            raise SchemaError(
                f"{path}: header mismatch, expected {expected_header}, got {header}")
        rows = [dict(zip(header, row)) for row in reader if row]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def _scenario_order(labels):
    # stable presentation order independent of row order
    return sorted(set(labels))


def render_roc(spec: PlotSpec) -> None:
    rows = _read_rows(spec.input_csv, ROC_HEADER)
    fig, ax = plt.subplots(figsize=(7, 5))
    for scenario in _scenario_order(r["scenario"] for r in rows):
        pts = [r for r in rows if r["scenario"] == scenario]
        pts.sort(key=lambda r: float(r["p_fa"]))
        p_fa = [float(r["p_fa"]) for r in pts]
        ax.plot(p_fa, [float(r["p_d_theory"]) for r in pts], "-",
                label=f"{scenario} (theory)")
        ax.plot(p_fa, [float(r["p_d_sim"]) for r in pts], "o", markersize=4,
                fillstyle="none", label=f"{scenario} (simulation)")
    ax.set_xscale("log")
    ax.set_xlabel("Probability of false alarm $P_{FA}$")
    ax.set_ylabel("Probability of detection $P_D$")
    ax.set_title("Backscatter device detection performance")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output_image, dpi=spec.dpi)
    plt.close(fig)


def render_dynrange(spec: PlotSpec) -> None:
    rows = _read_rows(spec.input_csv, DYNRANGE_HEADER)
    fig, ax = plt.subplots(figsize=(7, 5))
    for scenario in _scenario_order(r["snr_p_db"] for r in rows):
        pts = [r for r in rows
               if r["snr_p_db"] == scenario and r["zeta_db"].strip() != ""]
        if not pts:
            continue  # a scenario may be undefined at every requested position
        pts.sort(key=lambda r: float(r["y_m"]))
        if scenario in ("none", "perfect"):
            label = f"{scenario} projection"
        else:
            label = f"estimated, SNR$_p$ = {scenario} dB"
        ax.plot([float(r["y_m"]) for r in pts],
                [float(r["zeta_db"]) for r in pts], "-o", markersize=3,
                label=label)
    ax.set_xlabel("BSD vertical position y (m)")
    ax.set_ylabel("Dynamic range (dB)")
    ax.set_title("Direct-plus-backscatter to backscatter power ratio")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output_image, dpi=spec.dpi)
    plt.close(fig)


def render(spec: PlotSpec) -> None:
    if spec.figure_kind == "roc":
        render_roc(spec)
    elif spec.figure_kind == "dynrange":
        render_dynrange(spec)
    else:
        raise SchemaError(f"unknown figure kind {spec.figure_kind!r}")


def run(argv) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="Render figures from simulator CSV output")
    parser.add_argument("--kind", required=True, choices=["roc", "dynrange"])
    parser.add_argument("--in", dest="input_csv", required=True, type=Path)
    parser.add_argument("--out", dest="output_image", required=True, type=Path)
    parser.add_argument("--dpi", type=int, default=150)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code not in (0, None) else EXIT_OK

    spec = PlotSpec(input_csv=args.input_csv, output_image=args.output_image,
                    figure_kind=args.kind, dpi=args.dpi)
    try:
        render(spec)
    except SchemaError as exc:
        print(f"error: schema: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))
