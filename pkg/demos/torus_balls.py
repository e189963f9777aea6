"""
Metric balls on the one-way flat torus
======================================

On the flat torus with diagonal flow the zigzag metric is squeezed
between the flat metric and sqrt(2) times it, so every zigzag ball is
sandwiched between two round balls.  This script checks the sandwich on
a 32 x 32 grid and draws one ball as an SVG scatter.
"""

import numpy as np

from dirmetric import DirectedMetricSpace, GridSpec, flat_torus_grid, label_coords, metric_ball
from dirmetric.cli import scatter_svg

spec = GridSpec(k=32)
torus = DirectedMetricSpace.from_space(flat_torus_grid(spec))
labels = torus.space.labels
center = labels.index("(0.5,0.5)")
band = 1.0 / spec.k  # one grid cell of slack at the boundary

for r in (0.15, 0.30, 0.45):
    inner = metric_ball(torus.space.base, center, r / np.sqrt(2) - band)
    zz_ball = metric_ball(torus.zz, center, r)
    outer = metric_ball(torus.space.base, center, r + band)
    ok_in = bool(np.all(~inner.members | zz_ball.members))
    ok_out = bool(np.all(~zz_ball.members | outer.members))
    print(
        f"r={r:.2f}: |base r/sqrt2|={inner.count:4d} <= |zigzag r|={zz_ball.count:4d}"
        f" <= |base r|={outer.count:4d}   inclusions {'hold' if ok_in and ok_out else 'FAIL'}"
    )

coords = np.array([label_coords(l) for l in labels])
ball = metric_ball(torus.zz, center, 0.30)
with open("torus_ball.svg", "w") as fh:
    fh.write(scatter_svg(coords, ball.members, center))
print("wrote torus_ball.svg (members blue, rest grey, center red)")
# The blue region is a diamond tilted by the flow directions, not a disc:
# the zigzag metric remembers which detours the one-way edges allow.
