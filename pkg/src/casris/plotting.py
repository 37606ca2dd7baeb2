"""Static figure rendering for sweep results.

Renders to files only (vector formats preferred); no interactive backend is
ever touched, so this is safe on headless machines.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .simulator import Axis

__all__ = ["plot_sweep"]

_AXIS_LABELS = {
    Axis.POWER_DB: "transmit power over noise floor (dB)",
    Axis.ELEMENTS_N: "total reflecting elements",
    Axis.RIS_COUNT_L: "cascade depth",
}

_ANALYTIC_COLUMNS = (
    ("ec_taylor", "moment expansion"),
    ("ec_highsnr", "high-SNR form"),
    ("ec_largen", "large-N form"),
)


def plot_sweep(rows, axis: Axis, path, title: str | None = None):
    """Errorbar chart of mean capacity per strategy with analytic overlays.

    Invalid rows are skipped.  Analytic predictions (attached to the
    aligned-isotropic rows) are drawn as dashed lines.  The output format
    follows the file extension.
    """
    valid = [r for r in rows if r.valid]
    labels = []
    for r in valid:
        if r.strategy not in labels:
            labels.append(r.strategy)

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for label in labels:
        sel = [r for r in valid if r.strategy == label]
        x = [r.axis_value for r in sel]
        y = [r.mean_bits for r in sel]
        err = [r.std_error for r in sel]
        ax.errorbar(x, y, yerr=err, marker="o", markersize=3.5,
                    linewidth=1.2, capsize=2.5, label=label)

        for column, name in _ANALYTIC_COLUMNS:
            pairs = [(r.axis_value, getattr(r, column)) for r in sel
                     if getattr(r, column) is not None]
            if len(pairs) == len(sel) and pairs:
                ax.plot([p[0] for p in pairs], [p[1] for p in pairs],
                        linestyle="--", linewidth=1.0, alpha=0.8,
                        label=f"{label} ({name})")

    ax.set_xlabel(_AXIS_LABELS.get(axis, str(axis)))
    ax.set_ylabel("ergodic capacity (bits/s/Hz)")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
