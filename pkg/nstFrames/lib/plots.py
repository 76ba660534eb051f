"""plots

Summary figures for the approx, separate and gram runs.  Written to files
only (Agg backend), never shown.

"""

import logging
from pathlib import Path
import matplotlib
matplotlib.use("Agg")
from matplotlib import pyplot as plt
import numpy as np

log = logging.getLogger(__name__)

golden_mean = (np.sqrt(5) - 1.0) / 2.0
fig_width = 6.0
fig_size = [fig_width, fig_width * golden_mean]
colors = ["#08589e", "#2b8cbe", "#4eb3d3", "#7bccc4", "#a8ddb5"]

params = {
    "axes.prop_cycle": matplotlib.cycler(color=colors),
    "axes.labelsize": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
    "font.family": "sans-serif",
    "legend.fontsize": 8,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "figure.figsize": fig_size,
    "figure.dpi": 150,
    "lines.markersize": 3,
    "lines.linewidth": 1,
    "savefig.bbox": "tight",
}

# frame -> fixed line style so every figure reads the same way
frame_styles = {"curvelet": "-o", "shearlet": "-s", "wavelet": "-^"}

def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    log.info("wrote plot %s", path)
    return path

def plot_rate_curves(curves, path):
    """Squared n-term error against n on log-log axes, one line per (frame, seed)."""
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        for curve in curves:
            errors = np.asarray(curve.errors)
            keep = errors > 0
            if not np.any(keep):
                continue
            label = "%s seed %s" % (curve.frame, curve.seed)
            if np.isfinite(curve.slope):
                label += " (slope %.2f)" % curve.slope
            ax.loglog(np.asarray(curve.counts)[keep], errors[keep],
                      frame_styles.get(curve.frame, "-"), label=label)
        ax.set_xlabel("n (retained coefficients)")
        ax.set_ylabel("squared error")
        if ax.get_legend_handles_labels()[0]:
            ax.legend()
        return _save(fig, path)

def plot_separation(results, path):
    """Separation ratio and cluster coherence per scale."""
    with plt.rc_context(params):
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(fig_width * 1.6, fig_width * golden_mean))
        js = [r.j for r in results]
        ax1.semilogy(js, [max(r.ratio, 1e-300) for r in results], "-o")
        ax1.set_xlabel("scale j")
        ax1.set_ylabel("separation ratio")
        mu = [r.mu_c for r in results]
        ax2.plot(js, mu, "-s", label="cluster coherence")
        ax2.axhline(0.5, color="k", linestyle=":", label="1/2")
        ax2.set_xlabel("scale j")
        ax2.legend()
        return _save(fig, path)

def plot_convergence(table, path):
    """Op,p norm of nested truncations, one line per p."""
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        for p in sorted(set(row.p for row in table)):
            rows = [row for row in table if row.p == p]
            labels = ["%d/%d" % (row.j_max, row.m_radius) for row in rows]
            ax.plot(range(len(rows)), [row.op_p_norm for row in rows], "-o", label="p = %.3g" % p)
            ax.set_xticks(range(len(rows)))
            ax.set_xticklabels(labels)
        ax.set_xlabel("truncation j_max / m_radius")
        ax.set_ylabel("Op,p norm")
        if table:
            ax.legend()
        return _save(fig, path)
