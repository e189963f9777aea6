"""
Zigzag distances on a hand-built directed space
===============================================

Three points on a line, but every edge points at the middle one.  You can
still travel between the outer points: ride your edge forward, then ride
the other edge backward.  The zigzag distance charges you for both legs.
"""

import numpy as np

from dirmetric import (
    DirectedMetricSpace,
    FiniteDSpace,
    compute_reachability,
    compute_zigzag,
    disjoint_union,
    reverse,
)

# x0 --1.0--> x1 <--1.0-- x2, with straight-line base distances
base = np.array([
    [0.0, 1.0, 2.0],
    [1.0, 0.0, 1.0],
    [2.0, 1.0, 0.0],
])
space = FiniteDSpace(base=base, edges=((0, 1, 1.0), (2, 1, 1.0)), labels=("x0", "x1", "x2"))

print("base metric:")
print(space.base)
print("zigzag metric:")
print(compute_zigzag(space))
# d_zz(x0, x2) = 2: forward along the first edge, backward along the second.
# The base already said 2 here, but zigzag can only be larger, never smaller.

print("one-way reachability (row = from, column = to):")
print(compute_reachability(space).astype(int))
# Only the middle point is reachable from the ends; the matrix is not
# symmetric even though the zigzag matrix always is.

# Reversing every edge changes which directed walks exist ...
print("reversed reachability:")
print(compute_reachability(reverse(space)).astype(int))
# ... but not the zigzag distances: walks traverse edges both ways anyway.
print("zigzag unchanged under reversal:", np.array_equal(compute_zigzag(space), compute_zigzag(reverse(space))))

# Two copies side by side: no zigzag walk crosses between them, so the
# cross distances are infinite.  Infinity is a value here, not an error.
both = DirectedMetricSpace.from_space(disjoint_union(space, space))
print("disjoint union, distance from 0:x0 to 1:x2:", both.zz[0, 5])
