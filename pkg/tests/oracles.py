"""Independent reference implementations used only by the tests.

Everything here is deliberately slow and literal: exact rational arithmetic
and brute-force enumeration, sharing no code with the package, so agreement
is evidence rather than tautology.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


def psi_exact(values) -> Fraction:
    """Literal term-by-term expansion of the central-moment kernel, exact."""
    t = [Fraction(v) for v in values]
    k = len(t)
    total = Fraction(0)
    for j in range(k - 1):  # j = 0 .. k-2
        c = Fraction((-1) ** j, k - j)
        inner = Fraction(0)
        for i1 in range(k):
            others = [i for i in range(k) if i != i1]
            for sub in combinations(others, j):
                term = t[i1] ** (k - j)
                for s in sub:
                    term *= t[s]
                inner += term
        total += c * inner
    prod_all = Fraction(1)
    for v in t:
        prod_all *= v
    return total + Fraction((-1) ** (k - 1) * (k - 1)) * prod_all


def exact_population_central_moment(atoms, probs, k: int) -> Fraction:
    """mu_k of a finite discrete distribution, exact."""
    atoms = [Fraction(a) for a in atoms]
    probs = [Fraction(p) for p in probs]
    assert sum(probs) == 1
    mu = sum(p * a for a, p in zip(atoms, probs))
    return sum(p * (a - mu) ** k for a, p in zip(atoms, probs))


def exact_kernel_expectation(atoms, probs, k: int) -> Fraction:
    """E[psi_k(X_1..X_k)] over independent draws from a discrete distribution."""
    atoms = [Fraction(a) for a in atoms]
    probs = [Fraction(p) for p in probs]
    total = Fraction(0)
    for idx in product(range(len(atoms)), repeat=k):
        p = Fraction(1)
        for i in idx:
            p *= probs[i]
        total += p * psi_exact([atoms[i] for i in idx])
    return total


def exact_u_statistic(sample, k: int) -> Fraction:
    """Average of psi_k over all k-subsets, exact (rational sample values)."""
    vals = [Fraction(v) for v in sample]
    total = Fraction(0)
    count = 0
    for subset in combinations(vals, k):
        total += psi_exact(subset)
        count += 1
    return total / count
