"""Robust central-moment and scale estimators on kernel pseudo-samples.

The headline estimator applies an L-estimator (by default a trimmed mean) to
the sorted pseudo-sample of central-moment kernel values over all k-subsets
of the data — a generalized Hodges-Lehmann construction in the sense of
Serfling (1984).  With no trimming it reduces exactly to the U-statistic,
i.e. the minimum-variance unbiased estimator of the kth central moment.

Two trimmed standard deviations are provided for comparison:

* ``trimmed_sd_pairwise`` — square root of the trimmed mean of the sorted
  pairwise kernel values (x_i - x_j)^2 / 2, following Bickel and Lehmann's
  pairwise-difference measure of spread.  With no trimming it equals the
  Bessel-corrected sample standard deviation exactly (the 1/sqrt(2) scaling
  of the pairwise differences makes the estimand sigma rather than
  sqrt(2) sigma).
* ``trimmed_sd_symmetric`` — root mean square of symmetric order-statistic
  differences X_(i) - X_(n-i+1) for i from floor(n/2)+1 up to
  floor(n(1-eps)), normalized by the retained term count.  Its pseudo-sample
  has only ~n/2 entries, which is why its variance loses to the pairwise
  form.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import ArgumentError, DegenerateSampleError, DegenerateTrimError
from .lstat import (
    LEstimatorSpec,
    TrimSpec,
    _snap,
    apply_lestimator,
    breakdown_from_trim,
    trimmed_mean,
)
from .pseudosample import ExactPlan, MonteCarloPlan, PseudoPlan, build_pseudosample

__all__ = [
    "MomentEstimate",
    "hl_central_moment",
    "hl_standardized_moment",
    "trimmed_sd_pairwise",
    "trimmed_sd_symmetric",
    "sample_central_moment",
    "h_statistic",
]


@dataclass(frozen=True)
class MomentEstimate:
    """An estimate with full provenance.

    ``eps0``/``gamma`` are the pseudo-sample trim parameters, ``eps`` the
    induced sample-level breakdown point, ``pseudo_n`` the pseudo-sample
    size (C(n, k) for exact plans, the draw count for Monte Carlo plans),
    and ``seed`` the Monte Carlo seed when one was used.
    """

    value: float
    k: int
    eps0: float
    gamma: float
    eps: float
    n: int
    pseudo_n: int
    method: str
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["record"] = "moment-estimate"
        d["schema_version"] = 1
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MomentEstimate":
        return cls(
            value=float(d["value"]),
            k=int(d["k"]),
            eps0=float(d["eps0"]),
            gamma=float(d["gamma"]),
            eps=float(d["eps"]),
            n=int(d["n"]),
            pseudo_n=int(d["pseudo_n"]),
            method=str(d["method"]),
            seed=None if d.get("seed") is None else int(d["seed"]),
        )


def _plan_seed(plan: PseudoPlan) -> Optional[int]:
    return plan.seed if isinstance(plan, MonteCarloPlan) else None


def hl_central_moment(
    sample,
    k: int,
    trim: TrimSpec = TrimSpec(),
    estimator: LEstimatorSpec = LEstimatorSpec.trimmed_mean(),
    plan: PseudoPlan = ExactPlan(),
) -> MomentEstimate:
    """L-estimate of the kth central moment from the kernel pseudo-sample.

    With ``trim.eps0 = 0`` and the trimmed-mean estimator this equals the
    U-statistic, the minimum-variance unbiased estimator of the kth central
    moment.
    """
    pseudo = build_pseudosample(sample, k, plan)
    value = apply_lestimator(estimator, pseudo, trim)
    return MomentEstimate(
        value=value,
        k=int(k),
        eps0=trim.eps0,
        gamma=trim.gamma,
        eps=breakdown_from_trim(trim.eps0, int(k)),
        n=int(np.asarray(sample).size),
        pseudo_n=int(pseudo.size),
        method=f"hl-central-moment/{estimator.kind}",
        seed=_plan_seed(plan),
    )


def hl_standardized_moment(
    sample,
    k: int,
    trim: TrimSpec = TrimSpec(),
    trim_scale: Optional[TrimSpec] = None,
    estimator: LEstimatorSpec = LEstimatorSpec.trimmed_mean(),
    plan: PseudoPlan = ExactPlan(),
) -> MomentEstimate:
    """Scale-free kth moment: kth estimate over the variance estimate^(k/2).

    The denominator is the same construction at k = 2, trimmed by
    ``trim_scale`` (defaults to ``trim``).  Invariant under x -> a*x + b for
    a > 0; for odd k the sign flips when a < 0.  The reported breakdown is
    the smaller of the numerator's and denominator's.
    """
    if not isinstance(k, (int, np.integer)) or k < 3:
        raise ArgumentError(f"standardized moments need k >= 3, got {k!r}")
    if trim_scale is None:
        trim_scale = trim
    num = hl_central_moment(sample, k, trim, estimator, plan)
    den = hl_central_moment(sample, 2, trim_scale, estimator, plan)
    if den.value <= 0.0:
        raise DegenerateSampleError(
            f"variance estimate {den.value} is not positive; sample is degenerate"
        )
    return MomentEstimate(
        value=num.value / den.value ** (k / 2.0),
        k=int(k),
        eps0=trim.eps0,
        gamma=trim.gamma,
        eps=min(num.eps, den.eps),
        n=num.n,
        pseudo_n=num.pseudo_n,
        method=f"hl-standardized-moment/{estimator.kind}",
        seed=_plan_seed(plan),
    )


def trimmed_sd_pairwise(
    sample,
    eps0: float = 0.0,
    gamma: float = 1.0,
    plan: PseudoPlan = ExactPlan(),
) -> MomentEstimate:
    """Trimmed SD from the sorted pairwise kernel values (x_i - x_j)^2 / 2.

    With eps0 = 0 this equals the Bessel-corrected sample standard
    deviation to floating-point accuracy.
    """
    trim = TrimSpec(eps0=eps0, gamma=gamma)
    pseudo = build_pseudosample(sample, 2, plan)
    value = math.sqrt(trimmed_mean(pseudo, trim))
    return MomentEstimate(
        value=value,
        k=2,
        eps0=trim.eps0,
        gamma=trim.gamma,
        eps=breakdown_from_trim(trim.eps0, 2),
        n=int(np.asarray(sample).size),
        pseudo_n=int(pseudo.size),
        method="trimmed-sd-pairwise",
        seed=_plan_seed(plan),
    )


def trimmed_sd_symmetric(sample, eps: float = 0.0) -> MomentEstimate:
    """Trimmed SD from symmetric order-statistic differences.

    Averages (X_(i) - X_(n-i+1))^2 over i = floor(n/2)+1 .. floor(n(1-eps))
    (1-based order statistics) and takes the square root; the normalizer is
    the actual number of retained terms, which matches n(1/2 - eps) whenever
    the cut points are integral.
    """
    if not (isinstance(eps, (int, float)) and math.isfinite(eps)):
        raise ArgumentError(f"eps must be a finite real, got {eps!r}")
    if not 0.0 <= eps < 0.5:
        raise ArgumentError(f"eps must lie in [0, 0.5), got {eps}")
    x = np.asarray(sample, dtype=np.float64)
    if x.ndim != 1 or x.size < 2:
        raise ArgumentError("sample must be 1-D with at least two entries")
    if not np.isfinite(x).all():
        raise ArgumentError("sample entries must be finite")
    xs = np.sort(x)
    n = xs.size
    lo = n // 2 + 1
    hi = math.floor(_snap(n * (1.0 - eps)))
    if hi < lo:
        raise DegenerateTrimError(
            f"eps={eps} retains no symmetric differences for n={n}"
        )
    i = np.arange(lo, hi + 1)
    d = xs[i - 1] - xs[n - i]
    value = math.sqrt(float(np.mean(d * d)))
    return MomentEstimate(
        value=value,
        k=2,
        eps0=float(eps),
        gamma=1.0,
        eps=float(eps),
        n=n,
        pseudo_n=n - n // 2,
        method="trimmed-sd-symmetric",
        seed=None,
    )


def sample_central_moment(sample, k: int) -> float:
    """Plug-in moment m_k = mean((x - mean(x))^k); biased, non-robust comparator."""
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ArgumentError(f"k must be a positive integer, got {k!r}")
    x = np.asarray(sample, dtype=np.float64)
    if x.ndim != 1 or x.size < 1:
        raise ArgumentError("sample must be 1-D and non-empty")
    if not np.isfinite(x).all():
        raise ArgumentError("sample entries must be finite")
    d = x - x.mean()
    return float(np.mean(d**k))


def h_statistic(sample, k: int) -> float:
    """Closed-form unbiased estimator of the kth central moment, k in {2, 3, 4}.

    These are the classical h-statistics; they equal the kernel U-statistic
    and serve as an independent cross-check of the enumeration route.
    """
    if not isinstance(k, (int, np.integer)) or k not in (2, 3, 4):
        raise ArgumentError(f"h_statistic supports k in {{2, 3, 4}}, got {k!r}")
    x = np.asarray(sample, dtype=np.float64)
    if x.ndim != 1:
        raise ArgumentError("sample must be 1-D")
    n = x.size
    if n < k:
        raise ArgumentError(f"need n >= k, got n={n} for k={k}")
    if not np.isfinite(x).all():
        raise ArgumentError("sample entries must be finite")
    d = x - x.mean()
    if k == 2:
        return float((d @ d) / (n - 1))
    if k == 3:
        m3 = np.mean(d**3)
        return float(n * n * m3 / ((n - 1) * (n - 2)))
    m2 = np.mean(d**2)
    m4 = np.mean(d**4)
    num = 3.0 * n * (3.0 - 2.0 * n) * m2 * m2 + n * (n * n - 2.0 * n + 3.0) * m4
    return float(num / ((n - 1) * (n - 2) * (n - 3)))
