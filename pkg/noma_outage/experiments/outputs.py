"""
Result files of a run: ``<name>.csv`` (snr_db column then one column per
curve label), ``<name>.json`` metadata and an optional ``<name>.svg`` plot.

Files depend only on the experiment and its curves, so reruns are byte-identical.
"""

import json
import logging
from pathlib import Path
from typing import List, Sequence

import matplotlib
matplotlib.use('Agg')  # Use non-interactive backend
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from noma_outage import __version__
from noma_outage.analytic import OutageCurve
from noma_outage.config import Config
from noma_outage.exceptions import OutputError
from noma_outage.experiments.spec import ExperimentSpec

logger = logging.getLogger(__name__)


def curves_to_frame(curves: Sequence[OutageCurve]) -> pd.DataFrame:
    if not curves:
        raise OutputError("no curves selected; nothing to write")

    grid = curves[0].snr_grid_db
    columns = {"snr_db": grid}
    for curve in curves:
        if not np.array_equal(curve.snr_grid_db, grid):
            raise OutputError(f"{curve.label}: SNR grid differs from {curves[0].label}")
        if curve.label in columns:
            raise OutputError(f"duplicate curve label {curve.label}")
        columns[curve.label] = curve.values
    return pd.DataFrame(columns)


def build_metadata(curves: Sequence[OutageCurve], spec: ExperimentSpec) -> dict:
    payload = spec.model_dump(mode="json")
    payload["curves"] = sorted(spec.curves)
    payload["out_dir"] = str(spec.out_dir)
    return {
        "tool": "noma-outage",
        "version": __version__,
        "name": spec.name,
        "experiment": payload,
        "snr_grid_db": [float(x) for x in spec.grid.points()],
        "columns": [
            {"label": curve.label, "kind": curve.kind, "upper": curve.upper}
            for curve in curves
        ],
        "notes": spec.notes(),
    }


def plot_curves(curves: Sequence[OutageCurve], title: str):
    """Outage on a log axis, throughput on a linear one (one panel per kind)"""
    kinds = [kind for kind in ("outage", "throughput") if any(c.kind == kind for c in curves)]
    fig, axes = plt.subplots(len(kinds), 1, figsize=(8, 5 * len(kinds)), squeeze=False)

    for ax, kind in zip(axes[:, 0], kinds):
        for curve in (c for c in curves if c.kind == kind):
            style = {"mc": "o", "asymptotic": "--"}.get(curve.label.rsplit(":", 1)[-1], "-")
            values = curve.values
            if kind == "outage":
                values = np.where(values > 0, values, np.nan)
            ax.plot(curve.snr_grid_db, values, style, label=curve.label, markerfacecolor="none")

        if kind == "outage":
            ax.set_yscale("log")
            ax.set_ylabel("Outage probability")
        else:
            ax.set_ylabel("Throughput (BPCU)")
        ax.set_xlabel("Transmit SNR (dB)")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=7)

    axes[0, 0].set_title(title)
    fig.tight_layout()
    return fig


def write_outputs(curves: List[OutageCurve], spec: ExperimentSpec) -> List[Path]:
    """Write CSV, metadata and (if requested) SVG; returns the written paths"""
    out_dir = Path(spec.out_dir)
    frame = curves_to_frame(curves)
    metadata = build_metadata(curves, spec)
    written = []

    try:
        out_dir.mkdir(parents=True, exist_ok=True)

        csv_path = out_dir / f"{spec.name}.csv"
        frame.to_csv(csv_path, index=False, float_format=Config.CSV_FLOAT_FORMAT,
                     lineterminator="\n")
        written.append(csv_path)

        json_path = out_dir / f"{spec.name}.json"
        json_path.write_text(json.dumps(metadata, indent=2, sort_keys=True) + "\n")
        written.append(json_path)

        if spec.svg:
            svg_path = out_dir / f"{spec.name}.svg"
            plt.rcParams["svg.hashsalt"] = "noma-outage"
            fig = plot_curves(curves, spec.name)
            try:
                fig.savefig(svg_path, format="svg", metadata={"Date": None})
            finally:
                plt.close(fig)
            written.append(svg_path)
    except OSError as exc:
        raise OutputError(f"cannot write results to {out_dir}: {exc}") from exc

    for path in written:
        logger.info(f"Wrote {path}")
    return written
