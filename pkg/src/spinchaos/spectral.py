"""Spectrum unfolding, nearest-neighbor spacing statistics, and the level
statistics indicator.

The indicator eta compares the fraction of unfolded spacings below the
first crossing point s0 of the Poisson and Wigner-Dyson densities against
the two reference values: eta = 1 for Poisson statistics, eta = 0 for
Wigner-Dyson statistics.  Evaluating the defining integrals through the
empirical CDF removes any histogram bin-width dependence.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import ConfigError, StatisticsError

MIN_LEVELS = 50


def poisson_pdf(s):
    """Spacing density of uncorrelated levels, exp(-s)."""
    s = _check_domain(s)
    return np.exp(-s)


def wigner_dyson_pdf(s):
    """Wigner surmise for the orthogonal ensemble, (pi s / 2) exp(-pi s^2 / 4)."""
    s = _check_domain(s)
    return (np.pi * s / 2.0) * np.exp(-np.pi * s**2 / 4.0)


def reference_cdfs(s):
    """Cumulative Poisson and Wigner-Dyson spacing distributions at ``s``."""
    s = _check_domain(s)
    return 1.0 - np.exp(-s), 1.0 - np.exp(-np.pi * s**2 / 4.0)


def _check_domain(s):
    arr = np.asarray(s, dtype=np.float64)
    if np.any(arr < 0):
        raise ValueError("spacings are non-negative")
    return arr if arr.ndim else float(arr)


@lru_cache(maxsize=1)
def intersection_s0() -> float:
    """Smallest positive s where the Poisson and Wigner-Dyson densities cross."""
    return float(
        brentq(lambda s: poisson_pdf(s) - wigner_dyson_pdf(s), 1e-9, 1.0, xtol=1e-12)
    )


@dataclass(frozen=True)
class UnfoldingConfig:
    """Polynomial-unfolding knobs.

    ``poly_degree`` is the degree of the least-squares fit to the
    cumulative level counting function; ``edge_trim`` is the fraction of
    levels discarded at each end of the spectrum before fitting.
    """

    poly_degree: int = 9
    edge_trim: float = 0.02

    def __post_init__(self):
        if not 1 <= self.poly_degree <= 20:
            raise ConfigError("poly_degree must lie in 1..20")
        if not 0 <= self.edge_trim < 0.25:
            raise ConfigError("edge_trim must lie in [0, 0.25)")


@dataclass
class SpacingSample:
    """Unfolded nearest-neighbor spacings, rescaled to unit sample mean.

    ``degenerate`` counts exactly coinciding raw levels (kept as zero
    spacings), ``clamped`` counts spacings that a non-monotone fit drove
    negative before clamping.  ``warning`` is set when the unfolding
    polynomial is not monotone over the fit window.
    """

    spacings: np.ndarray = field(repr=False)
    degenerate: int = 0
    clamped: int = 0
    warning: str | None = None

    def __len__(self):
        return len(self.spacings)


def unfold(values, cfg: UnfoldingConfig = UnfoldingConfig()) -> SpacingSample:
    """Unfold an ascending spectrum to unit mean level density.

    The cumulative counting staircase is fitted with a polynomial of
    ``cfg.poly_degree`` on the window left after trimming
    ``cfg.edge_trim`` of the levels at each edge; spacings are differences
    of the fitted values at consecutive levels, clamped at zero and
    rescaled so that the sample mean is exactly 1.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError("expected a 1D array of eigenvalues")
    if np.any(np.diff(values) < 0):
        raise ValueError("eigenvalues must be in ascending order")
    n = len(values)
    k = int(np.floor(cfg.edge_trim * n))
    window = values[k : n - k]
    if len(window) < MIN_LEVELS:
        raise StatisticsError(
            f"{len(window)} levels after trimming; need at least {MIN_LEVELS}"
        )
    staircase = np.arange(k, n - k, dtype=np.float64) + 0.5
    poly = np.polynomial.Polynomial.fit(window, staircase, cfg.poly_degree)
    unfolded = poly(window)
    raw = np.diff(unfolded)
    clamped = int(np.sum(raw < 0))
    warning = None
    if clamped:
        warning = "non-monotone unfolding fit over the data window"
    degenerate = int(np.sum(np.diff(window) == 0))
    spacings = np.clip(raw, 0.0, None)
    mean = spacings.mean()
    if mean <= 0:
        raise StatisticsError("all unfolded spacings vanish")
    return SpacingSample(
        spacings=spacings / mean,
        degenerate=degenerate,
        clamped=clamped,
        warning=warning,
    )


def lsi(sample: SpacingSample) -> float:
    """Level statistics indicator of an unfolded spacing sample.

    eta = [F(s0) - F_WD(s0)] / [F_P(s0) - F_WD(s0)] with F the empirical
    CDF; 1 for Poisson, 0 for Wigner-Dyson statistics.  Sampling noise can
    push the value slightly outside [0, 1]; it is not clamped.
    """
    if len(sample) == 0:
        raise StatisticsError("empty spacing sample")
    s0 = intersection_s0()
    f_p, f_wd = reference_cdfs(s0)
    f_hat = float(np.mean(sample.spacings < s0))
    return (f_hat - f_wd) / (f_p - f_wd)


def pooled_sample(samples) -> SpacingSample:
    """Concatenate several unfolded samples into one (for pooled statistics)."""
    samples = list(samples)
    if not samples:
        raise StatisticsError("no spacing samples to pool")
    return SpacingSample(
        spacings=np.concatenate([s.spacings for s in samples]),
        degenerate=sum(s.degenerate for s in samples),
        clamped=sum(s.clamped for s in samples),
        warning=next((s.warning for s in samples if s.warning), None),
    )


def spacing_histogram(sample: SpacingSample, bin_width: float, s_max: float = 4.0):
    """Density histogram of the spacings on [0, s_max].

    Returns (bin_edges, density); density integrates to the fraction of
    spacings that fall inside the plotted range.
    """
    if bin_width <= 0:
        raise ConfigError("bin_width must be positive")
    nbins = int(np.ceil(s_max / bin_width))
    edges = np.linspace(0.0, nbins * bin_width, nbins + 1)
    counts, _ = np.histogram(sample.spacings, bins=edges)
    density = counts / (len(sample) * bin_width)
    return edges, density


def write_histogram_csv(path, sample: SpacingSample, bin_width: float) -> None:
    """Dump the spacing histogram as CSV with columns (s, density)."""
    edges, density = spacing_histogram(sample, bin_width)
    centers = 0.5 * (edges[:-1] + edges[1:])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "density"])
        for s, d in zip(centers, density):
            writer.writerow([f"{s:.17g}", f"{d:.17g}"])


def write_cdf_csv(path, sample: SpacingSample) -> None:
    """Dump the empirical spacing CDF as CSV with columns (s, cdf)."""
    s = np.sort(sample.spacings)
    cdf = np.arange(1, len(s) + 1) / len(s)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "cdf"])
        for x, f in zip(s, cdf):
            writer.writerow([f"{x:.17g}", f"{f:.17g}"])
