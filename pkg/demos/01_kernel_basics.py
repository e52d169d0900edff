"""Central-moment kernels: values, symmetry, and closed-form extrema.

The kth central moment has an unbiased symmetric kernel psi_k in k
variables: averaging psi_k over all k-subsets of a sample gives the
minimum-variance unbiased estimate of the moment.  This walk-through pokes
at the kernel itself.
"""

import numpy as np

from hlmoments import (
    boundary_kernel_value,
    central_moment_kernel,
    kernel_support_bounds,
    signed_binomial_sums,
)

print("=== basic values ===")
print("psi_2(0, 1)      =", central_moment_kernel([0.0, 1.0]), "   (half squared difference)")
print("psi_3(0, 1, 1)   =", central_moment_kernel([0.0, 1.0, 1.0]))
print("psi_3(0, 1, 3)   =", central_moment_kernel([0.0, 1.0, 3.0]), "  (= 10/3)")
print("psi_4(0, 0, 1, 1) =", central_moment_kernel([0.0, 0.0, 1.0, 1.0]), "(= -1/6)")
print("psi_5(c, ..., c) =", central_moment_kernel([2.5] * 5), "     (point mass has no moments)")

print()
print("=== symmetry and affine behaviour ===")
t = np.array([0.3, -1.2, 2.5, 0.9])
print("psi_4(t)              =", central_moment_kernel(t))
print("psi_4(shuffled t)     =", central_moment_kernel(t[[2, 0, 3, 1]]), "(identical)")
print("psi_4(t + 100)        =", central_moment_kernel(t + 100.0), "(shift invariant)")
print("psi_4(3t) / 3^4       =", central_moment_kernel(3.0 * t) / 81.0)

print()
print("=== extrema over tuples with a fixed range ===")
# with first i coordinates at a and the rest at b, the kernel takes the
# closed-form value C(k,i)^(-1) (-1)^(1+i) (a-b)^k; sweeping i traces the
# attainable extremes for tuples confined to [a, b] with both ends hit
for k in (3, 4, 5):
    vals = [boundary_kernel_value(k, i, 0.0, 1.0) for i in range(1, k)]
    lo, hi = kernel_support_bounds(k, -1.0)
    print(f"k={k}: two-level values {np.round(vals, 4)}  support bounds ({lo:.4f}, {hi:.4f})")

print()
print("=== the alternating sums behind shift invariance ===")
# these exact identities are why every mu-term cancels in psi_k(lam*x + mu)
for k, h in ((4, 2), (5, 3), (7, 5)):
    s1, s2 = signed_binomial_sums(k, h)
    print(f"k={k}, h={h}: sums = ({s1}, {s2})  closed forms = ({(-1)**k}, {(h-2)*(-1)**k})")
