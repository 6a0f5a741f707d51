"""Tour of the metric-complexity functionals on small spaces.

Builds a few finite semi-metric spaces, compares the exact functional
(branch-and-bound over admissible set sequences) with the greedy
farthest-point construction and the partition-based variant, and shows
how the truncated order-p functional collapses to the Chebyshev radius
once p covers the whole space.
"""

import numpy as np

import chainbounds as cb

rng = np.random.default_rng(1)

# A 3-point path 0 -- 1/2 -- 1.  The level-0 set may hold a single point,
# and levels >= 1 may hold all three, so the exact value is the Chebyshev
# radius 1/2 even though the diameter is 1.
path = cb.build_metric_space([[0.0, 0.5, 1.0], [0.5, 0.0, 0.5], [1.0, 0.5, 0.0]])
print("3-point path:")
print("  diameter          ", path.diameter())
print("  exact functional  ", cb.gamma_exact(path, 2.0).value)
print("  greedy upper bound", cb.gamma_greedy(path, 2.0).value)
print("  partition variant ", cb.gamma_prime(path, 2.0).value)

# Random point clouds: greedy >= exact >= diameter/2 on every draw.
print("\nrandom 6-point clouds (l2 metric):")
for trial in range(4):
    pts = rng.normal(size=(6, 3))
    space = cb.space_from_points(pts)
    exact = cb.gamma_exact(space, 2.0).value
    greedy = cb.gamma_greedy(space, 2.0).value
    print(f"  trial {trial}: exact={exact:.4f}  greedy={greedy:.4f}  "
          f"diameter/2={space.diameter() / 2:.4f}")

# Order-p truncation: the sum starts at level floor(log2 p), so raising p
# drops the fine levels and the value decreases toward the radius.
space = cb.space_from_points(rng.normal(size=(6, 3)))
print("\norder-p truncation on one cloud:")
for p in (1.0, 2.0, 4.0, 8.0):
    print(f"  p={p:>3}: {cb.gamma_exact(space, 2.0, p=p).value:.4f}")

# Entropy-integral comparison: the covering-number route is within constant
# factors of the chaining value.
print("\nentropy integral vs functional:")
ent = cb.entropy_integral(space, 2.0)
print(f"  entropy integral {ent.value:.4f}  exact {cb.gamma_exact(space, 2.0).value:.4f}")
