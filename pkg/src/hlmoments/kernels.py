"""Central-moment kernel functions.

The kth central moment of a distribution admits a symmetric kernel in k
variables whose expectation under i.i.d. draws is exactly the moment
(Heffernan 1997), which is what makes U-statistic estimation of central
moments possible:

    psi_k(x_1, ..., x_k) = sum_{j=0}^{k-2} (-1)^j (1/(k-j))
                               sum x_{i1}^{k-j} x_{i2} ... x_{i(j+1)}
                           + (-1)^(k-1) (k-1) x_1 ... x_k

where the inner sum runs over i1 != i2 != ... != i(j+1) with
i2 < i3 < ... < i(j+1).  For k = 2 this is the familiar
psi_2(x1, x2) = (x1 - x2)^2 / 2.

This module evaluates psi_k for 2 <= k <= 12, exposes the closed-form value
at two-valued configurations (all coordinates equal to one of two levels),
the extrema of psi_k over tuples of fixed range, and the exact alternating
binomial sums that make the kernel's location-invariance identity work.

Evaluation strategy: the expanded monomial list of psi_k is generated once
per order and cached; evaluation is a coefficient-weighted sum of monomials.
Tuples are put in ascending order first, so the evaluator is exactly (bit
for bit) permutation invariant.  For k >= 4 the alternating terms cancel
heavily near psi_k = 0, so the monomial sum is accumulated with Kahan
compensation.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import ArgumentError, UnsupportedOrderError

__all__ = [
    "MAX_ORDER",
    "central_moment_kernel",
    "kernel_values",
    "boundary_kernel_value",
    "kernel_support_bounds",
    "signed_binomial_sums",
]

#: Largest supported moment order.  The expanded kernel has k*(2^(k-1)-1)+1
#: monomials, so cost (and cancellation) grows combinatorially past this.
MAX_ORDER = 12

_EXPANDED_CHUNK = 1 << 16


def _check_order(k) -> int:
    if not isinstance(k, (int, np.integer)):
        raise ArgumentError(f"moment order must be an integer, got {k!r}")
    k = int(k)
    if k < 2:
        raise ArgumentError(f"moment order must be >= 2, got {k}")
    if k > MAX_ORDER:
        raise UnsupportedOrderError(
            f"moment order {k} exceeds the supported cap {MAX_ORDER}"
        )
    return k


# ---------------------------------------------------------------------------
# expanded monomial table
# ---------------------------------------------------------------------------

class _KernelTable:
    """Monomial expansion of psi_k.

    Every monomial except the final product term has exactly one coordinate
    raised to a power >= 2 and a set of distinct linear coordinates, so rows
    are stored as (coefficient, power column, power, linear columns).
    """

    def __init__(self, k: int):
        coeffs: list[float] = []
        pcols: list[int] = []
        pexps: list[int] = []
        lcols: list[tuple[int, ...]] = []
        for j in range(k - 1):  # j = 0 .. k-2
            c = (-1.0) ** j / (k - j)
            for i1 in range(k):
                others = [i for i in range(k) if i != i1]
                for sub in combinations(others, j):
                    coeffs.append(c)
                    pcols.append(i1)
                    pexps.append(k - j)
                    lcols.append(sub)
        self.k = k
        self.coeffs = np.asarray(coeffs, dtype=np.float64)
        self.pcols = np.asarray(pcols, dtype=np.intp)
        self.pexps = np.asarray(pexps, dtype=np.intp)
        self.lcols = lcols
        self.final_coeff = (-1.0) ** (k - 1) * (k - 1)


_TABLES: dict[int, _KernelTable] = {}
_TABLES_LOCK = threading.Lock()


def _table(k: int) -> _KernelTable:
    tab = _TABLES.get(k)
    if tab is None:
        with _TABLES_LOCK:
            tab = _TABLES.get(k)
            if tab is None:
                tab = _KernelTable(k)
                _TABLES[k] = tab
    return tab


def _eval_expanded_block(x: np.ndarray, tab: _KernelTable) -> np.ndarray:
    k = tab.k
    total = np.zeros(x.shape[0])
    comp = np.zeros(x.shape[0])
    kahan = k >= 4
    for c, pc, pe, lc in zip(tab.coeffs, tab.pcols, tab.pexps, tab.lcols):
        term = x[:, pc] ** pe
        for col in lc:
            term = term * x[:, col]
        term *= c
        if kahan:
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
        else:
            total += term
    term = np.full(x.shape[0], tab.final_coeff)
    for col in range(k):
        term *= x[:, col]
    if kahan:
        y = term - comp
        total = total + y
    else:
        total += term
    return total


def _eval_expanded(x: np.ndarray, k: int) -> np.ndarray:
    tab = _table(k)
    if x.shape[0] <= _EXPANDED_CHUNK:
        return _eval_expanded_block(x, tab)
    out = np.empty(x.shape[0])
    for start in range(0, x.shape[0], _EXPANDED_CHUNK):
        stop = min(start + _EXPANDED_CHUNK, x.shape[0])
        out[start:stop] = _eval_expanded_block(x[start:stop], tab)
    return out


# ---------------------------------------------------------------------------
# closed forms for low orders
# ---------------------------------------------------------------------------

def _kernel2(x: np.ndarray) -> np.ndarray:
    d = x[:, 0] - x[:, 1]
    return 0.5 * d * d


def _kernel3(x: np.ndarray) -> np.ndarray:
    # h-statistic of a 3-point sample: 1.5 * sum of cubed deviations
    d = x - x.mean(axis=1, keepdims=True)
    return 1.5 * (d * d * d).sum(axis=1)


def _kernel4(x: np.ndarray) -> np.ndarray:
    # h-statistic of a 4-point sample in plug-in moments: -10 m2^2 + (22/3) m4
    d = x - x.mean(axis=1, keepdims=True)
    d2 = d * d
    m2 = d2.mean(axis=1)
    m4 = (d2 * d2).mean(axis=1)
    return -10.0 * m2 * m2 + (22.0 / 3.0) * m4


def kernel_values(x: np.ndarray, k: int, *, expanded: bool = False) -> np.ndarray:
    """Evaluate psi_k on each row of an (m, k) array.

    Rows are sorted ascending before evaluation, which makes the result an
    exactly permutation-invariant function of each row.  Closed forms are
    used for k <= 4 unless ``expanded`` forces the general monomial sum.
    """
    k = _check_order(k)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != k:
        raise ArgumentError(
            f"expected an (m, {k}) array of {k}-tuples, got shape {x.shape}"
        )
    x = np.sort(x, axis=1)
    if expanded:
        return _eval_expanded(x, k)
    if k == 2:
        return _kernel2(x)
    if k == 3:
        return _kernel3(x)
    if k == 4:
        return _kernel4(x)
    return _eval_expanded(x, k)


def central_moment_kernel(values, k: int | None = None, *, expanded: bool = False):
    """psi_k(values): the unbiased central-moment kernel.

    Parameters
    ----------
    values : array-like
        A tuple of k reals, or an (m, k) batch of tuples.
    k : int, optional
        Moment order; inferred from the trailing axis when omitted and
        validated against it when given.
    expanded : bool
        Force the general expanded-monomial evaluator even for k <= 4,
        where specialized closed forms are otherwise used.

    Returns
    -------
    float or ndarray
        Kernel value per tuple.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim not in (1, 2):
        raise ArgumentError(f"expected a k-tuple or an (m, k) batch, got ndim={x.ndim}")
    width = x.shape[-1]
    if k is None:
        k = width
    k = _check_order(k)
    if width != k:
        raise ArgumentError(f"tuple length {width} does not match order k={k}")
    if not np.isfinite(x).all():
        raise ArgumentError("kernel arguments must be finite")
    if x.ndim == 1:
        return float(kernel_values(x[None, :], k, expanded=expanded)[0])
    return kernel_values(x, k, expanded=expanded)


# ---------------------------------------------------------------------------
# closed-form identities
# ---------------------------------------------------------------------------

def boundary_kernel_value(k: int, i: int, a: float, b: float) -> float:
    """psi_k at the two-valued configuration (a, ..., a, b, ..., b).

    With the first i coordinates at ``a`` and the remaining k - i at ``b``,

        psi_k = C(k, i)^(-1) * (-1)^(1+i) * (a - b)^k       (1 <= i <= k-1)

    These configurations realize the extrema of psi_k over tuples of fixed
    range, which is what pins down the support of the fixed-range slices of
    the kernel distribution.
    """
    k = _check_order(k)
    if not isinstance(i, (int, np.integer)):
        raise ArgumentError(f"i must be an integer, got {i!r}")
    i = int(i)
    if not 1 <= i <= k - 1:
        raise ArgumentError(f"need 1 <= i <= k-1, got i={i} for k={k}")
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ArgumentError("boundary levels must be finite")
    return (-1.0) ** (1 + i) * (a - b) ** k / math.comb(k, i)


def kernel_support_bounds(k: int, delta: float) -> tuple[float, float]:
    """Extrema of psi_k over tuples whose minimum minus maximum equals delta.

    For delta = min - max <= 0 the attainable kernel values span

        ( -C(k, (3 + (-1)^k)/2)^(-1) * (-delta)^k ,  (1/k) * (-delta)^k )

    i.e. the envelope of the fixed-range component of the kernel
    distribution.  Meaningful for k >= 3; for k = 2 the kernel is constant
    delta^2/2 on such tuples and the lower bound is vacuous.
    """
    k = _check_order(k)
    delta = float(delta)
    if not math.isfinite(delta):
        raise ArgumentError("delta must be finite")
    if delta > 0:
        raise ArgumentError(f"delta = min - max must be <= 0, got {delta}")
    span = (-delta) ** k
    lower = -span / math.comb(k, (3 + (-1) ** k) // 2)
    upper = span / k
    return lower, upper


def signed_binomial_sums(k: int, h: int) -> tuple[Fraction, Fraction]:
    """The two alternating binomial sums behind the kernel's shift invariance.

    Computes, exactly,

        S1 = sum_{g=k-h+1}^{k-1} (-1)^(g+1) C(h-1, g-k+h-1)
        S2 = sum_{g=k-h+1}^{k-1} (-1)^(g+1) C(h-1, g-k+h-1) (g-k+h-1)/(k-g+1)

    for 2 <= h <= k.  These evaluate in closed form to (-1)^k and
    (h-2) (-1)^k respectively, which is what cancels every shift term in
    psi_k(lambda*x + mu).  Returned as exact rationals.
    """
    if not isinstance(k, (int, np.integer)) or not isinstance(h, (int, np.integer)):
        raise ArgumentError("k and h must be integers")
    k = int(k)
    h = int(h)
    if k < 2 or not 2 <= h <= k:
        raise ArgumentError(f"need 2 <= h <= k with k >= 2, got k={k}, h={h}")
    s1 = Fraction(0)
    s2 = Fraction(0)
    for g in range(k - h + 1, k):
        c = (-1) ** (g + 1) * math.comb(h - 1, g - k + h - 1)
        s1 += c
        s2 += Fraction(c * (g - k + h - 1), k - g + 1)
    return s1, s2
