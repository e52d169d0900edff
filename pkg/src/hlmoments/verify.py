"""Monte Carlo probes of the kernel-distribution theory, with typed reports.

Each probe draws from a parametric family, measures an empirical consequence
of the theory (shape of the pairwise-difference distribution, near-zero
median of the kernel distribution, variance dominance of the pairwise
trimmed SD, kernel extrema, affine equivariance) and returns a frozen report
that serializes losslessly to a flat dict.

All probes are deterministic functions of their arguments: replication
streams are derived from the seed with fixed spawn keys, never from global
state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .errors import ArgumentError
from .estimators import (
    hl_central_moment,
    hl_standardized_moment,
    trimmed_sd_pairwise,
    trimmed_sd_symmetric,
)
from .distributions import Family, Weibull
from .kernels import kernel_support_bounds, kernel_values
from .lstat import TrimSpec
from .pseudosample import ExactPlan, MonteCarloPlan

__all__ = [
    "ShapeProbe",
    "VarianceComparison",
    "SupportBoundsReport",
    "EquivarianceReport",
    "McConsistencyReport",
    "pairwise_diff_probe",
    "kernel_shape_probe",
    "variance_comparison",
    "support_bound_probe",
    "equivariance_suite",
    "mc_consistency_probe",
    "report_from_dict",
]

_SCHEMA_VERSION = 1


def _open_unit(rng: np.random.Generator, size) -> np.ndarray:
    return rng.integers(1, 1 << 53, size=size) / float(1 << 53)


def _default_bins(n_draws: int) -> int:
    return int(math.ceil(2.0 * n_draws ** (1.0 / 3.0)))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShapeProbe:
    """Histogram summary of a simulated kernel or pairwise-difference draw.

    ``monotonicity`` is the fraction of adjacent bin pairs ordered the way a
    unimodal-toward-the-mode shape predicts (toward zero for the pairwise
    probe, toward the mode bin for kernel probes).
    """

    kind: str
    family: str
    k: int
    n_draws: int
    seed: int
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    median: float
    sigma: float
    mode_bin: int
    monotonicity: float
    abs_median_over_sigma: float

    def to_dict(self) -> dict:
        return {
            "record": "shape-probe",
            "schema_version": _SCHEMA_VERSION,
            "kind": self.kind,
            "family": self.family,
            "k": self.k,
            "n_draws": self.n_draws,
            "seed": self.seed,
            "bin_edges": list(self.bin_edges),
            "counts": list(self.counts),
            "median": self.median,
            "sigma": self.sigma,
            "mode_bin": self.mode_bin,
            "monotonicity": self.monotonicity,
            "abs_median_over_sigma": self.abs_median_over_sigma,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ShapeProbe":
        return cls(
            kind=str(d["kind"]),
            family=str(d["family"]),
            k=int(d["k"]),
            n_draws=int(d["n_draws"]),
            seed=int(d["seed"]),
            bin_edges=tuple(float(v) for v in d["bin_edges"]),
            counts=tuple(int(v) for v in d["counts"]),
            median=float(d["median"]),
            sigma=float(d["sigma"]),
            mode_bin=int(d["mode_bin"]),
            monotonicity=float(d["monotonicity"]),
            abs_median_over_sigma=float(d["abs_median_over_sigma"]),
        )


@dataclass(frozen=True)
class VarianceComparison:
    """Replication variances of the two trimmed SDs across sample sizes."""

    family: str
    eps: float
    n_values: tuple[int, ...]
    replications: int
    seed: int
    var_symmetric: tuple[float, ...]
    var_pairwise: tuple[float, ...]
    ratio: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "record": "variance-comparison",
            "schema_version": _SCHEMA_VERSION,
            "family": self.family,
            "eps": self.eps,
            "n_values": list(self.n_values),
            "replications": self.replications,
            "seed": self.seed,
            "var_symmetric": list(self.var_symmetric),
            "var_pairwise": list(self.var_pairwise),
            "ratio": list(self.ratio),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VarianceComparison":
        return cls(
            family=str(d["family"]),
            eps=float(d["eps"]),
            n_values=tuple(int(v) for v in d["n_values"]),
            replications=int(d["replications"]),
            seed=int(d["seed"]),
            var_symmetric=tuple(float(v) for v in d["var_symmetric"]),
            var_pairwise=tuple(float(v) for v in d["var_pairwise"]),
            ratio=tuple(float(v) for v in d["ratio"]),
        )


@dataclass(frozen=True)
class SupportBoundsReport:
    """Grid-search extrema of psi_k under min=0, max=1 versus the bounds."""

    k: int
    resolution: int
    observed_min: float
    observed_max: float
    bound_lower: float
    bound_upper: float

    def to_dict(self) -> dict:
        return {
            "record": "support-bounds",
            "schema_version": _SCHEMA_VERSION,
            "k": self.k,
            "resolution": self.resolution,
            "observed_min": self.observed_min,
            "observed_max": self.observed_max,
            "bound_lower": self.bound_lower,
            "bound_upper": self.bound_upper,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SupportBoundsReport":
        return cls(
            k=int(d["k"]),
            resolution=int(d["resolution"]),
            observed_min=float(d["observed_min"]),
            observed_max=float(d["observed_max"]),
            bound_lower=float(d["bound_lower"]),
            bound_upper=float(d["bound_upper"]),
        )


@dataclass(frozen=True)
class EquivarianceReport:
    """Worst relative deviation from kernel / estimator affine equivariance."""

    trials: int
    seed: int
    max_k: int
    max_rel_dev_kernel: float
    max_rel_dev_standardized: float

    def to_dict(self) -> dict:
        return {
            "record": "equivariance",
            "schema_version": _SCHEMA_VERSION,
            "trials": self.trials,
            "seed": self.seed,
            "max_k": self.max_k,
            "max_rel_dev_kernel": self.max_rel_dev_kernel,
            "max_rel_dev_standardized": self.max_rel_dev_standardized,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EquivarianceReport":
        return cls(
            trials=int(d["trials"]),
            seed=int(d["seed"]),
            max_k=int(d["max_k"]),
            max_rel_dev_kernel=float(d["max_rel_dev_kernel"]),
            max_rel_dev_standardized=float(d["max_rel_dev_standardized"]),
        )


@dataclass(frozen=True)
class McConsistencyReport:
    """Relative deviation of Monte Carlo estimates from the exact estimate."""

    family: str
    n: int
    k: int
    eps0: float
    gamma: float
    draws: int
    sample_seed: int
    seeds: tuple[int, ...]
    rel_devs: tuple[float, ...]
    tolerance: float
    passes: int

    def to_dict(self) -> dict:
        return {
            "record": "mc-consistency",
            "schema_version": _SCHEMA_VERSION,
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "eps0": self.eps0,
            "gamma": self.gamma,
            "draws": self.draws,
            "sample_seed": self.sample_seed,
            "seeds": list(self.seeds),
            "rel_devs": list(self.rel_devs),
            "tolerance": self.tolerance,
            "passes": self.passes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "McConsistencyReport":
        return cls(
            family=str(d["family"]),
            n=int(d["n"]),
            k=int(d["k"]),
            eps0=float(d["eps0"]),
            gamma=float(d["gamma"]),
            draws=int(d["draws"]),
            sample_seed=int(d["sample_seed"]),
            seeds=tuple(int(v) for v in d["seeds"]),
            rel_devs=tuple(float(v) for v in d["rel_devs"]),
            tolerance=float(d["tolerance"]),
            passes=int(d["passes"]),
        )


_REPORT_TYPES = {
    "shape-probe": ShapeProbe,
    "variance-comparison": VarianceComparison,
    "support-bounds": SupportBoundsReport,
    "equivariance": EquivarianceReport,
    "mc-consistency": McConsistencyReport,
}


def report_from_dict(d: dict):
    """Reconstruct any verify report (or raise for unknown record tags)."""
    tag = d.get("record")
    cls = _REPORT_TYPES.get(tag)
    if cls is None:
        raise ArgumentError(f"unknown report record {tag!r}")
    return cls.from_dict(d)


# ---------------------------------------------------------------------------
# probes
# ---------------------------------------------------------------------------

def pairwise_diff_probe(
    family: Family,
    n_draws: int = 10**6,
    seed: int = 0,
    bins: int | None = None,
    tail_clip: float = 0.005,
) -> ShapeProbe:
    """Shape of the ordered pairwise difference X - X' (conditioned on X < X').

    For a unimodal parent this distribution lives on the negative axis with
    a density that increases monotonically toward its mode at zero, so the
    monotonicity statistic (fraction of adjacent bins non-decreasing toward
    zero) should approach 1.  ``tail_clip`` drops that lower quantile of the
    draw from the histogram range so a handful of extreme differences cannot
    flood the statistic with empty bins.
    """
    if n_draws < 2:
        raise ArgumentError("n_draws must be at least 2")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    u = _open_unit(rng, (int(n_draws), 2))
    x = family._q(u)
    d = -np.abs(x[:, 0] - x[:, 1])
    nbins = _default_bins(n_draws) if bins is None else int(bins)
    lo = float(np.quantile(d, tail_clip)) if tail_clip > 0 else float(d.min())
    counts, edges = np.histogram(d, bins=nbins, range=(lo, 0.0))
    mono = float(np.mean(counts[1:] >= counts[:-1]))
    sigma = float(d.std())
    med = float(np.median(d))
    return ShapeProbe(
        kind="pairwise-diff",
        family=family.label,
        k=2,
        n_draws=int(n_draws),
        seed=int(seed),
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        median=med,
        sigma=sigma,
        mode_bin=int(np.argmax(counts)),
        monotonicity=mono,
        abs_median_over_sigma=abs(med) / sigma if sigma > 0 else math.inf,
    )


def kernel_shape_probe(
    family: Family,
    k: int,
    n_draws: int = 10**6,
    seed: int = 0,
    bins: int | None = None,
    tail_clip: float = 0.005,
) -> ShapeProbe:
    """Distribution of psi_k over independent k-tuples from the family.

    Reports |median| / sigma (expected to be small: the kernel distribution
    is unimodal-like with mode and median near zero) and a monotonicity
    statistic taken toward the mode bin from both sides, on a histogram
    clipped to the central (tail_clip, 1 - tail_clip) quantile range.
    """
    if k not in (3, 4):
        raise ArgumentError(f"kernel shape probe supports k in {{3, 4}}, got {k}")
    if n_draws < 2:
        raise ArgumentError("n_draws must be at least 2")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    u = _open_unit(rng, (int(n_draws), k))
    v = kernel_values(family._q(u), k)
    med = float(np.median(v))
    sigma = float(v.std())
    nbins = _default_bins(n_draws) if bins is None else int(bins)
    if tail_clip > 0:
        lo, hi = np.quantile(v, [tail_clip, 1.0 - tail_clip])
    else:
        lo, hi = float(v.min()), float(v.max())
    counts, edges = np.histogram(v, bins=nbins, range=(float(lo), float(hi)))
    mode = int(np.argmax(counts))
    left = counts[: mode + 1]
    right = counts[mode:]
    mono_left = float(np.mean(left[1:] >= left[:-1])) if left.size > 1 else 1.0
    mono_right = float(np.mean(right[1:] <= right[:-1])) if right.size > 1 else 1.0
    return ShapeProbe(
        kind="kernel",
        family=family.label,
        k=int(k),
        n_draws=int(n_draws),
        seed=int(seed),
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        median=med,
        sigma=sigma,
        mode_bin=mode,
        monotonicity=min(mono_left, mono_right),
        abs_median_over_sigma=abs(med) / sigma if sigma > 0 else math.inf,
    )


def variance_comparison(
    family: Family,
    n_values=(20, 50, 100),
    eps: float = 0.1,
    replications: int = 1000,
    seed: int = 0,
) -> VarianceComparison:
    """Replication variance of the symmetric-difference SD vs the pairwise SD.

    The pairwise pseudo-sample has ~n^2/2 entries against ~n/2 for the
    symmetric differences, so its trimmed SD is expected to be strictly more
    stable, increasingly so as n grows.
    """
    if replications < 2:
        raise ArgumentError("replications must be at least 2")
    n_values = tuple(int(n) for n in n_values)
    if any(n < 4 for n in n_values):
        raise ArgumentError("each n must be at least 4")
    var_sym = []
    var_pair = []
    for ni, n in enumerate(n_values):
        e1 = np.empty(replications)
        e2 = np.empty(replications)
        for r in range(replications):
            x = family.sample(n, np.random.SeedSequence(seed, spawn_key=(ni, r)))
            e1[r] = trimmed_sd_symmetric(x, eps).value
            e2[r] = trimmed_sd_pairwise(x, eps0=eps, gamma=1.0).value
        var_sym.append(float(np.var(e1, ddof=1)))
        var_pair.append(float(np.var(e2, ddof=1)))
    ratio = tuple(vs / vp for vs, vp in zip(var_sym, var_pair))
    return VarianceComparison(
        family=family.label,
        eps=float(eps),
        n_values=n_values,
        replications=int(replications),
        seed=int(seed),
        var_symmetric=tuple(var_sym),
        var_pairwise=tuple(var_pair),
        ratio=ratio,
    )


def support_bound_probe(k: int, resolution: int = 100) -> SupportBoundsReport:
    """Brute-force extrema of psi_k over grid tuples with min 0 and max 1.

    Enumerates sorted tuples (0, t_2, ..., t_{k-1}, 1) with interior
    coordinates on a uniform grid and compares the observed extrema with the
    closed-form bounds at range delta = -1.
    """
    if not isinstance(k, (int, np.integer)) or not 2 <= k <= 5:
        raise ArgumentError(f"support probe supports 2 <= k <= 5, got {k!r}")
    if not isinstance(resolution, (int, np.integer)) or resolution < 20:
        raise ArgumentError(f"resolution must be an integer >= 20, got {resolution!r}")
    k = int(k)
    resolution = int(resolution)
    if k == 2:
        tuples = np.array([[0.0, 1.0]])
    else:
        interior = np.array(
            list(combinations_with_replacement(range(resolution + 1), k - 2)),
            dtype=np.float64,
        ) / float(resolution)
        tuples = np.empty((interior.shape[0], k))
        tuples[:, 0] = 0.0
        tuples[:, 1:-1] = interior
        tuples[:, -1] = 1.0
    v = kernel_values(tuples, k)
    lower, upper = kernel_support_bounds(k, -1.0)
    return SupportBoundsReport(
        k=k,
        resolution=resolution,
        observed_min=float(v.min()),
        observed_max=float(v.max()),
        bound_lower=lower,
        bound_upper=upper,
    )


def equivariance_suite(
    trials: int = 10_000,
    seed: int = 0,
    max_k: int = 6,
    estimator_trials: int = 32,
) -> EquivarianceReport:
    """Random checks of psi_k(a*t + b) = a^k psi_k(t) and estimator invariance.

    Relative deviations are measured against max(|expected|, 1e-3 * S^k)
    where S bounds the transformed tuple magnitude; the floor keeps the
    ratio meaningful at tuples where the kernel is incidentally near zero.
    The estimator part checks that the standardized moment is unchanged (to
    relative accuracy) under x -> a*x + b with a > 0.
    """
    if trials < 100:
        raise ArgumentError("trials must be at least 100")
    if not 2 <= max_k <= 8:
        raise ArgumentError("max_k must lie in [2, 8]")
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0,)))
    ks = rng.integers(2, max_k + 1, size=trials)
    max_rel_kernel = 0.0
    for k in range(2, max_k + 1):
        m = int(np.sum(ks == k))
        if m == 0:
            continue
        t = rng.uniform(-5.0, 5.0, size=(m, k))
        lam = rng.uniform(-3.0, 3.0, size=m)
        mu = rng.uniform(-5.0, 5.0, size=m)
        lhs = kernel_values(lam[:, None] * t + mu[:, None], k)
        rhs = lam**k * kernel_values(t, k)
        scale = (np.abs(lam) * np.abs(t).max(axis=1) + np.abs(mu)) ** k
        denom = np.maximum(np.abs(rhs), 1e-3 * np.maximum(scale, 1.0))
        max_rel_kernel = max(max_rel_kernel, float(np.max(np.abs(lhs - rhs) / denom)))

    rng2 = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1,)))
    max_rel_est = 0.0
    for _ in range(estimator_trials):
        n = int(rng2.integers(8, 16))
        x = rng2.exponential(size=n)  # skewed, so the moment is well away from 0
        k = int(rng2.integers(3, 5))
        eps0 = float(rng2.choice([0.0, 0.1]))
        lam = float(rng2.uniform(0.5, 3.0))
        mu = float(rng2.uniform(-5.0, 5.0))
        trim = TrimSpec(eps0=eps0)
        v1 = hl_standardized_moment(x, k, trim).value
        v2 = hl_standardized_moment(lam * x + mu, k, trim).value
        rel = abs(v1 - v2) / max(abs(v1), 1e-6)
        max_rel_est = max(max_rel_est, rel)

    return EquivarianceReport(
        trials=int(trials),
        seed=int(seed),
        max_k=int(max_k),
        max_rel_dev_kernel=max_rel_kernel,
        max_rel_dev_standardized=max_rel_est,
    )


def mc_consistency_probe(
    family: Family = Weibull(1.0, 1.0),
    n: int = 20,
    k: int = 3,
    eps0: float = 0.1,
    gamma: float = 1.0,
    draws: int = 10**6,
    n_seeds: int = 10,
    sample_seed: int = 2024,
    first_seed: int = 0,
    tolerance: float = 0.01,
) -> McConsistencyReport:
    """Monte Carlo plans against the exact plan on one fixed sample.

    Draws one sample, computes the exact trimmed kernel moment, then repeats
    the Monte Carlo estimate over consecutive seeds and reports relative
    deviations and the number within tolerance.
    """
    x = family.sample(n, sample_seed)
    trim = TrimSpec(eps0=eps0, gamma=gamma)
    exact = hl_central_moment(x, k, trim, plan=ExactPlan()).value
    if exact == 0.0:
        raise ArgumentError("exact estimate is zero; relative deviation undefined")
    seeds = tuple(range(first_seed, first_seed + n_seeds))
    devs = []
    for s in seeds:
        mc = hl_central_moment(x, k, trim, plan=MonteCarloPlan(draws=draws, seed=s)).value
        devs.append(abs(mc - exact) / abs(exact))
    passes = sum(d <= tolerance for d in devs)
    return McConsistencyReport(
        family=family.label,
        n=int(n),
        k=int(k),
        eps0=float(eps0),
        gamma=float(gamma),
        draws=int(draws),
        sample_seed=int(sample_seed),
        seeds=seeds,
        rel_devs=tuple(float(d) for d in devs),
        tolerance=float(tolerance),
        passes=int(passes),
    )
