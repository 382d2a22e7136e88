"""
Runtime measurement of the A ⊑ ∃r.B model check over growing domains.
"""

import logging
import time
from typing import Dict, Optional

import numpy as np
import pandas as pd

from .embedding import build_geometric
from .interpretation import random_interpretation
from .modelcheck import check_ci
from .syntax import CI, Atomic, Exists, Signature

logger = logging.getLogger(__name__)

DEFAULT_SIZES = (8, 16, 32, 64)


def measure_scaling(options: Optional[Dict] = None) -> pd.DataFrame:
    """
    Time ``check_ci`` on A ⊑ ∃r.B over random interpretations.

    Parameters:
    -----------
    options : dict, optional
        - 'sizes': domain sizes to measure (default: DEFAULT_SIZES)
        - 'repeats': timed runs per size, the median is kept (default: 5)
        - 'membership': 'scan' or 'hash' (default: 'scan')
        - 'density': extension density of the random interpretations (default: 0.5)
        - 'seed': base seed (default: 0)

    Returns:
    --------
    pd.DataFrame
        One row per size with columns size, dimension, vertices, verdict,
        median_seconds.
    """
    if options is None:
        options = {}
    sizes = tuple(options.get("sizes", DEFAULT_SIZES))
    repeats = int(options.get("repeats", 5))
    membership = options.get("membership", "scan")
    density = float(options.get("density", 0.5))
    seed = int(options.get("seed", 0))
    if repeats < 1:
        raise ValueError("repeats must be at least 1")

    sig = Signature.of(["A", "B"], ["r"], [])
    axiom = CI(Atomic("A"), Exists("r", Atomic("B")))
    rows = []
    for k, n in enumerate(sizes):
        i = random_interpretation(seed + k, sig, max_domain=n, density=density, domain_size=n)
        g = build_geometric(i, sig)
        timings = []
        verdict = None
        for _ in range(repeats):
            start = time.perf_counter()
            verdict = check_ci(g, axiom, membership=membership).verdict
            timings.append(time.perf_counter() - start)
        rows.append({
            "size": n,
            "dimension": g.dimension,
            "vertices": len(g.vertices),
            "verdict": verdict,
            "median_seconds": float(np.median(timings)),
        })
        logger.debug("size %d: median %.6fs", n, rows[-1]["median_seconds"])
    return pd.DataFrame(rows)


def fit_loglog_slope(frame: pd.DataFrame, x: str = "size", y: str = "median_seconds") -> float:
    """Slope of the least-squares line through (log x, log y)."""
    data = frame[(frame[x] > 0) & (frame[y] > 0)]
    if len(data) < 2:
        raise ValueError("At least two positive measurements are needed")
    slope, _ = np.polyfit(np.log(data[x].to_numpy(float)), np.log(data[y].to_numpy(float)), 1)
    return float(slope)


def plot_scaling(frame: pd.DataFrame, filename: Optional[str] = None):
    """
    Log-log plot of the measurements against the |Δ|⁵ reference line.

    Returns the figure; saves it when ``filename`` is given.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    sizes = frame["size"].to_numpy(float)
    times = frame["median_seconds"].to_numpy(float)
    ax.loglog(sizes, times, "o-", label="check_ci  A ⊑ ∃r.B")
    reference = times[0] * (sizes / sizes[0]) ** 5
    ax.loglog(sizes, reference, "--", color="gray", label="∝ |Δ|⁵")
    ax.set_xlabel("|Δ|")
    ax.set_ylabel("median time (s)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    plt.tight_layout()
    if filename:
        plt.savefig(filename, dpi=300, bbox_inches="tight")
        logger.info("scaling plot saved to %s", filename)
    return fig
