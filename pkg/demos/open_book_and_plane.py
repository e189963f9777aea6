"""
Infima that are not attained, and hub-and-spoke detours
=======================================================

Two constructions where the zigzag metric does something the base metric
cannot.  The open book has pages of length 1/n between the same two
points: the gap closes as pages are added but no single page realizes the
limit.  The hub-and-spoke plane routes everything through the origin, so
points on the same ray are close and points on different rays pay the
full detour.
"""

from dirmetric import (
    DirectedMetricSpace,
    hollow_square,
    open_book,
    sncf_plane,
)

# Open book: a and b joined by pages of lengths 1, 1/2, ..., 1/n.
print("pages  d_zz(a, b)")
for n in range(1, 9):
    book = DirectedMetricSpace.from_space(open_book(n, 3))
    a = book.space.labels.index("a")
    b = book.space.labels.index("b")
    print(f"{n:5d}  {book.zz[a, b]:.6f}")
# The shortest page always wins: the distance is exactly 1/n, marching
# toward 0 without ever reaching it at any finite stage.

# Hub-and-spoke: every edge points outward along a ray from the origin.
pts = [(1.0, 0.0), (2.0, 0.0), (0.0, 1.0)]
plane = DirectedMetricSpace.from_space(sncf_plane(pts))
lab = plane.space.labels
print("\nhub-and-spoke labels:", lab)
i10 = lab.index("(1,0)")
i20 = lab.index("(2,0)")
i01 = lab.index("(0,1)")
print("same ray   (1,0)->(2,0):", plane.zz[i10, i20])   # straight along the ray
print("cross rays (1,0)->(0,1):", plane.zz[i10, i01])   # back to the hub, then out
# Cross-ray distance is the sum of the two radii: 1 + 1 = 2, much larger
# than the Euclidean gap sqrt(2).

# Hollow square: boundary flow only, no interior shortcut.
hs = DirectedMetricSpace.from_space(hollow_square(2))
lab = hs.space.labels
print("\nhollow square over", hs.n, "boundary points")
print("corner to corner (1,0)->(0,1):", hs.zz[lab.index("(1,0)"), lab.index("(0,1)")])
# Opposite corners of the flow cost the full half-perimeter 2.0; the
# filled square manages the same pair in 2 - something once diagonal
# steps through the interior exist.
