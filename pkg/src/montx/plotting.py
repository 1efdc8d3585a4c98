"""Figures for chain-length campaigns."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .chains import ALGORITHMS, CampaignSummary  # noqa: E402

COLORS = {"ladder": "#1f77b4", "prac": "#d62728"}


def plot_chain_ratios(summary: CampaignSummary, path, dpi: int = 120) -> None:
    """Histogram of operations-per-bit for each algorithm, saved to ``path``."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ell = summary.bitlen
    for alg in ALGORITHMS:
        ratios = [r.ratio for r in summary.rows if r.algorithm == alg]
        ax.hist(ratios, bins=40, alpha=0.6, color=COLORS[alg],
                label=f"{alg} (mean {summary.mean_ratio[alg]:.3f})")
    ax.axvline(1.44, color="k", ls="--", lw=1, label="1.44 (lower bound)")
    ax.axvline(2 - 1 / ell, color="gray", ls=":", lw=1, label=f"2 - 1/{ell} (ladder)")
    ax.set_xlabel("x-line operations per bit")
    ax.set_ylabel("samples")
    ax.set_title(f"Differential chain lengths, {ell}-bit odd scalars, n = {summary.samples}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
