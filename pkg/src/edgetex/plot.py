"""SVG rendering of a run report: PE histogram with fitted densities, and the (alpha, beta) scatter."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from edgetex.beta_stats import BetaParams, beta_pdf_array  # noqa: E402


def plot_report(report: dict, out) -> None:
    fig, (ax_h, ax_s) = plt.subplots(1, 2, figsize=(10, 4))

    hist = report.get("histogram")
    if hist:
        edges = np.asarray(hist["bin_edges"])
        counts = np.asarray(hist["counts"], dtype=float)
        widths = np.diff(edges)
        total = counts.sum()
        density = counts / (total * widths) if total else counts
        ax_h.bar(edges[:-1], density, width=widths, align="edge", color="0.75", edgecolor="0.4")
    grid = np.linspace(1e-3, 1 - 1e-3, 400)
    for fit in report.get("fits", []):
        if fit.get("alpha") is None:
            continue
        params = BetaParams(fit["alpha"], fit["beta"])
        # densities on the shifted support [1, 2] keep the same height
        ax_h.plot(grid + (fit.get("support_shift") or 0.0), beta_pdf_array(params, grid),
                  lw=1, label=f"{fit['group']}: a={fit['alpha']:.2f} b={fit['beta']:.2f}")
    ax_h.set_xlim(1, 2)
    ax_h.set_xlabel("edge excess index")
    ax_h.set_ylabel("density")
    if len(report.get("fits", [])) <= 8:
        ax_h.legend(fontsize=7)

    threshold = report.get("config", {}).get("beta_threshold", 1.5)
    rows = report.get("scatter", [])
    for cls, color in (("HighTexture", "tab:red"), ("LowTexture", "tab:blue")):
        pts = [(r["alpha"], r["beta"]) for r in rows if r["class"] == cls]
        if pts:
            a, b = zip(*pts)
            ax_s.scatter(a, b, c=color, s=18, label=cls)
    ax_s.axhline(threshold, color="0.5", ls="--", lw=1)
    ax_s.set_xlabel("alpha")
    ax_s.set_ylabel("beta")
    if rows:
        ax_s.legend(fontsize=7)

    fig.tight_layout()
    fig.savefig(out, format="svg", metadata={"Date": None})
    plt.close(fig)
