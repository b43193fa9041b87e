"""Figure rendering for eigenvalue curves (SVG or any matplotlib format)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .perturb import EigenCurveSet


def render_eigencurves(curves: EigenCurveSet, path: str, title: str = "") -> None:
    """Plot the matched eigenvalue paths in the complex plane.

    Eigenvalues of A are drawn as green stars (the t -> 0 anchors), the roots
    of p_vw as blue stars (the finite large-t limits).
    """
    fig, ax = plt.subplots(figsize=(8, 6))
    for i, p in enumerate(curves.paths):
        z = np.asarray(p)
        ax.plot(z.real, z.imag, "-", lw=1.2, label=f"path {i + 1}")
    a = np.asarray(curves.a_eigs.values)
    ax.plot(a.real, a.imag, "*", color="green", ms=14, ls="none",
            label="eigenvalues of A")
    if len(curves.pvw_roots) > 0:
        b = np.asarray(curves.pvw_roots.values)
        ax.plot(b.real, b.imag, "*", color="blue", ms=14, ls="none",
                label="roots of p_vw")
    ax.axvline(0.0, color="0.7", lw=0.8)
    ax.axhline(0.0, color="0.7", lw=0.8)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
