"""Figure rendering for the reporting paths.

Everything draws to files through the Agg backend; nothing here opens a
display.  Each function returns the path it wrote so callers can list the
artifacts next to their delimited output.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .counting import COPRIME_DENSITY, DensityReport

_REFERENCE_LABEL = "6/pi^2"


def _finish(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def density_convergence_figure(reports: Sequence[DensityReport], path: str) -> str:
    """Ratio against side length on top; observed gap to 6/pi^2 against the
    certified envelope below (log-log)."""
    if not reports:
        raise ValueError("at least one density report is required")
    ns = [min(r.n1, r.n2) for r in reports]
    ratios = [float(r.ratio) for r in reports]
    gaps = [abs(float(r.ratio - COPRIME_DENSITY)) for r in reports]
    bounds = [float(r.error_bound) for r in reports]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.4, 6.4), sharex=True)
    top.plot(ns, ratios, marker="o", label="coprime fraction")
    top.axhline(float(COPRIME_DENSITY), linestyle="--", color="gray",
                label=_REFERENCE_LABEL)
    top.set_xscale("log")
    top.set_ylabel("q(n, n) / n^2")
    top.legend()
    bottom.plot(ns, gaps, marker="o", label="observed gap to " + _REFERENCE_LABEL)
    bottom.plot(ns, bounds, marker="s", linestyle="--",
                label="certified envelope")
    bottom.set_xscale("log")
    bottom.set_yscale("log")
    bottom.set_xlabel("side length n")
    bottom.set_ylabel("absolute gap")
    bottom.legend()
    fig.suptitle("Coprime density convergence")
    return _finish(fig, path)


def product_convergence_figure(
    values: Sequence[tuple[int, Fraction]], path: str,
    label: str = "prod (1 - p^-2) over the first K primes",
) -> str:
    """Partial products against prime count with the limiting constant."""
    if not values:
        raise ValueError("at least one partial product is required")
    ks = [k for k, _ in values]
    ys = [float(v) for _, v in values]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(ks, ys, marker="o", label=label)
    ax.axhline(float(COPRIME_DENSITY), linestyle="--", color="gray",
               label=_REFERENCE_LABEL)
    ax.set_xlabel("prime count K")
    ax.set_ylabel("partial product")
    ax.set_title("Product convergence to " + _REFERENCE_LABEL)
    ax.legend()
    return _finish(fig, path)


def monte_carlo_figure(
    runs: Sequence[tuple[int, float, float]], exact: Fraction, path: str
) -> str:
    """Estimates with 4-sigma error bars against the exact partial product.

    ``runs`` holds (samples, estimate, standard_error) triples.
    """
    if not runs:
        raise ValueError("at least one run is required")
    sizes = [s for s, _, _ in runs]
    estimates = [e for _, e, _ in runs]
    bars = [4.0 * se for _, _, se in runs]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.errorbar(sizes, estimates, yerr=bars, fmt="o", capsize=4,
                label="estimate (4 SE bars)")
    ax.axhline(float(exact), linestyle="--", color="gray",
               label="exact partial product")
    ax.set_xscale("log")
    ax.set_xlabel("sample count")
    ax.set_ylabel("estimated coprime fraction")
    ax.set_title("Monte Carlo agreement with the product model")
    ax.legend()
    return _finish(fig, path)
