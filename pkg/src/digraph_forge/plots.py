"""Diagnostic figures written next to the delimited outputs."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from scipy import stats as sps  # noqa: E402

# fixed metadata keeps PNG bytes reproducible
_PNG_META = {"Software": None}


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=110, metadata=_PNG_META)
    plt.close(fig)
    return path


def plot_counter_fits(report, path):
    """Histograms of S_n and M_n against their Poisson limits."""
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), tight_layout=True)
    panels = (
        ("self-loops $S_n$", report.samples["s"], report.lambda1_theory),
        ("multi-edge excess $M_n$", report.samples["m"], report.lambda2_theory),
    )
    for ax, (label, values, lam) in zip(axes, panels):
        values = np.asarray(values)
        top = int(values.max()) if values.size else 0
        ks = np.arange(top + 1)
        freq = np.bincount(values, minlength=top + 1) / max(values.size, 1)
        ax.bar(ks, freq, color="0.7", label="simulated")
        if lam:
            ax.plot(ks, sps.poisson.pmf(ks, lam), "o-", color="C3", ms=4, label=f"Poisson({lam:.3g})")
        ax.set_xlabel(label)
        ax.set_ylabel("frequency")
        ax.legend(frameon=False)
    fig.suptitle(
        f"n={report.n}, reps={report.reps}: P(simple) {report.empirical_p_simple:.4f}"
        + ("" if report.theory_p_simple is None else f" vs {report.theory_p_simple:.4f}")
    )
    return _save(fig, path)


def plot_degree_laws(in_degrees, out_degrees, F, G, path):
    """Realized in/out degree frequencies against the target pmfs, log-log."""
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), tight_layout=True)
    for ax, values, dist, label in (
        (axes[0], in_degrees, F, "in-degree"),
        (axes[1], out_degrees, G, "out-degree"),
    ):
        values = np.asarray(values)
        freq = np.bincount(values) / values.size
        ks = np.flatnonzero(freq)
        ax.loglog(ks + 1, freq[ks], "o", mfc="none", ms=4, label="realized")
        grid = np.arange(int(values.max()) + 1)
        target = dist.pmf(grid)
        ok = target > 0
        ax.loglog(grid[ok] + 1, target[ok], "-", color="C3", label=dist.spec)
        ax.set_xlabel(f"{label} + 1")
        ax.set_ylabel("frequency")
        ax.legend(frameon=False)
    return _save(fig, path)
