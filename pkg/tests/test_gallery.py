"""Example constructors and their advertised numbers.

Claims covered: worst-case overhead ratios of step sets in closed form,
unit-square oracle values against the grid graph, equality of the direct
torus construction with the quotient route, spine distances of the open
book family, hub-and-spoke and hollow-square frozen values, and metric
ball behaviour.
"""

import math

import numpy as np
import pytest

from dirmetric import (
    DEFAULT_STEPS,
    GridSpec,
    compute_reachability,
    compute_zigzag,
    directed_interval,
    directed_square_grid,
    flat_torus_grid,
    hollow_square,
    label_coords,
    metric_ball,
    open_book,
    quotient,
    sncf_plane,
    source_sink_interval,
    square_grid_graph,
    square_zigzag_oracle,
    step_ratio,
    zigzag_from_edges,
)


# ---------------------------------------------------------------------------
# step sets


def test_step_ratio_closed_forms():
    assert step_ratio(((1, 0), (0, 1))) == pytest.approx(math.sqrt(2.0))
    assert step_ratio(((1, 0), (0, 1), (1, 1))) == pytest.approx(math.sqrt(4.0 - 2.0 * math.sqrt(2.0)))
    assert step_ratio(DEFAULT_STEPS) == pytest.approx(math.sqrt(10.0 - 4.0 * math.sqrt(5.0)))


def test_default_step_ratio_below_documented_bound():
    assert step_ratio(DEFAULT_STEPS) < 1.028


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(k=0)
    with pytest.raises(ValueError):
        GridSpec(k=2, steps=((0, 0),))
    with pytest.raises(ValueError):
        GridSpec(k=2, steps=((1, 0), (1, 0)))
    with pytest.raises(ValueError):
        GridSpec(k=2, steps=((1, -1),))


# ---------------------------------------------------------------------------
# unit square oracle


def test_oracle_comparable_pairs_use_straight_distance():
    assert square_zigzag_oracle((0.0, 0.0), (1.0, 1.0)) == pytest.approx(math.sqrt(2.0))
    assert square_zigzag_oracle((0.2, 0.1), (0.5, 0.5)) == pytest.approx(math.hypot(0.3, 0.4))
    assert square_zigzag_oracle((0.3, 0.3), (0.3, 0.3)) == 0.0


def test_oracle_incomparable_pairs_pay_the_detour():
    assert square_zigzag_oracle((1.0, 0.0), (0.0, 1.0)) == pytest.approx(2.0)
    assert square_zigzag_oracle((0.8, 0.1), (0.1, 0.8)) == pytest.approx(1.4)
    assert square_zigzag_oracle((0.6, 0.4), (0.4, 0.6)) == pytest.approx(0.4)


def test_oracle_is_symmetric_and_validates_inputs():
    rng = np.random.default_rng(5)
    for _ in range(50):
        p, q = rng.random(2), rng.random(2)
        assert square_zigzag_oracle(p, q) == pytest.approx(square_zigzag_oracle(q, p))
    with pytest.raises(ValueError):
        square_zigzag_oracle((1.2, 0.0), (0.0, 0.0))


def test_route_value_at_fine_grid():
    # frozen route check: both endpoints snapped to the 1/256 lattice,
    # where the best route is pure axis moves and the grid is exact
    k = 256
    p, q = (0.8, 0.1), (0.1, 0.8)
    _, edges = square_grid_graph(GridSpec(k=k))
    ip = round(p[0] * k) * (k + 1) + round(p[1] * k)
    iq = round(q[0] * k) * (k + 1) + round(q[1] * k)
    val = zigzag_from_edges((k + 1) ** 2, edges, sources=[ip])[0, iq]
    assert val == pytest.approx(1.3984375, abs=1e-12)
    sp = (round(p[0] * k) / k, round(p[1] * k) / k)
    sq = (round(q[0] * k) / k, round(q[1] * k) / k)
    assert val == pytest.approx(square_zigzag_oracle(sp, sq), abs=1e-12)
    assert abs(val - 1.4) <= 2.0 * math.sqrt(2.0) / k


def test_grid_between_oracle_and_ratio_bound():
    k = 16
    spec = GridSpec(k=k)
    g = directed_square_grid(spec)
    zz = compute_zigzag(g)
    ratio = step_ratio(spec.steps)
    pts = np.array([label_coords(lbl) for lbl in g.labels])
    oracle = np.array([[square_zigzag_oracle(p, q) for q in pts] for p in pts])
    assert (zz >= oracle - 1e-9).all()
    assert (zz <= ratio * oracle + 1e-9).all()


# ---------------------------------------------------------------------------
# intervals


def test_directed_interval_structure():
    iv = directed_interval(2)
    assert iv.n == 3
    assert iv.labels == ("0", "0.5", "1")
    zz = compute_zigzag(iv)
    assert zz[0, 2] == 1.0
    reach = compute_reachability(iv)
    assert reach[0, 2] and not reach[2, 0]


def test_source_sink_interval_structure():
    k = 4
    s = source_sink_interval(k)
    assert s.n == 2 * k + 1
    zz = compute_zigzag(s)
    xs = np.linspace(-1.0, 1.0, 2 * k + 1)
    assert np.allclose(zz, np.abs(xs[:, None] - xs[None, :]))
    reach = compute_reachability(s)
    assert reach[k].all()
    assert reach[:, k].sum() == 1


# ---------------------------------------------------------------------------
# torus


def test_torus_direct_equals_quotient_route():
    k = 6
    steps = ((1, 0), (0, 1), (1, 1))
    g = directed_square_grid(GridSpec(k=k, steps=steps))
    classes: dict = {}
    for idx in range(g.n):
        i, j = divmod(idx, k + 1)
        classes.setdefault((i % k, j % k), []).append(idx)
    q = quotient(g, [classes[key] for key in sorted(classes)])
    t = flat_torus_grid(GridSpec(k=k, steps=steps))
    assert q.labels == t.labels
    assert sorted(q.edges) == sorted(t.edges)
    assert np.array_equal(compute_zigzag(q), compute_zigzag(t))
    # chaining through intermediate classes can only overshoot the flat metric
    assert float(np.min(q.base - t.base)) >= -1e-12


def test_torus_base_wraps_around():
    k = 8
    t = flat_torus_grid(GridSpec(k=k))
    i0 = t.index_of("(0,0)")
    far = t.index_of(f"({(k - 1) / k:.10g},0)")
    assert t.base[i0, far] == pytest.approx(1.0 / k)
    half = t.index_of("(0.5,0.5)")
    assert t.base[i0, half] == pytest.approx(math.sqrt(0.5))


def test_torus_zigzag_between_scaled_euclidean_bounds():
    t = flat_torus_grid(GridSpec(k=8))
    zz = compute_zigzag(t)
    assert (zz >= t.base - 1e-9).all()
    assert (zz <= math.sqrt(2.0) * t.base + 1e-9).all()


# ---------------------------------------------------------------------------
# open book


def test_open_book_spine_distance_is_shortest_sheet():
    for n in (1, 2, 5):
        book = open_book(n, 3)
        zz = compute_zigzag(book)
        assert zz[book.index_of("a"), book.index_of("b")] == pytest.approx(1.0 / n, abs=1e-9)


def test_open_book_spine_distance_ignores_subdivision():
    vals = []
    for m in (2, 3, 5):
        book = open_book(4, m)
        zz = compute_zigzag(book)
        vals.append(zz[book.index_of("a"), book.index_of("b")])
    assert max(vals) - min(vals) <= 1e-12


def test_open_book_point_count():
    book = open_book(3, 2)
    assert book.n == 2 + 3 * 1
    assert len(book.edges) == 3 * 2


def test_open_book_validates_arguments():
    with pytest.raises(ValueError):
        open_book(0, 3)
    with pytest.raises(ValueError):
        open_book(2, 1)


# ---------------------------------------------------------------------------
# plane examples


def test_sncf_cross_ray_goes_through_hub():
    s = sncf_plane([(1.0, 0.0), (0.0, 2.0)])
    zz = compute_zigzag(s)
    assert zz[s.index_of("(1,0)"), s.index_of("(0,2)")] == pytest.approx(3.0)


def test_sncf_same_ray_stays_on_it():
    s = sncf_plane([(1.0, 0.0), (2.0, 0.0), (0.0, 1.0)])
    assert (s.index_of("(1,0)"), s.index_of("(2,0)"), 1.0) in [
        (a, b, pytest.approx(l)) for (a, b, l) in s.edges
    ]
    zz = compute_zigzag(s)
    assert zz[s.index_of("(1,0)"), s.index_of("(2,0)")] == pytest.approx(1.0)


def test_sncf_prepends_origin_and_rejects_duplicates():
    s = sncf_plane([(1.0, 0.0)])
    assert s.labels[0] == "(0,0)"
    with pytest.raises(ValueError):
        sncf_plane([(1.0, 0.0), (1.0, 0.0)])


def test_hollow_square_boundary_only():
    hs = hollow_square(2)
    assert hs.n == 8
    assert "(0.5,0.5)" not in hs.labels
    zz = compute_zigzag(hs)
    assert zz[hs.index_of("(0,0)"), hs.index_of("(1,1)")] == pytest.approx(2.0)
    assert zz[hs.index_of("(1,0)"), hs.index_of("(0,1)")] == pytest.approx(2.0)
    assert zz[hs.index_of("(0,0)"), hs.index_of("(0.5,0)")] == pytest.approx(0.5)


# ---------------------------------------------------------------------------
# balls


def test_metric_ball_membership_and_validation():
    iv = directed_interval(4)
    zz = compute_zigzag(iv)
    b = metric_ball(zz, 0, 0.5)
    assert b.count == 3
    assert b.members[: 3].all() and not b.members[3:].any()
    assert metric_ball(zz, 0, 0.0).count == 1
    assert metric_ball(zz, 0, 10.0).count == 5
    with pytest.raises(ValueError):
        metric_ball(zz, 9, 0.5)
    with pytest.raises(ValueError):
        metric_ball(zz, 0, -0.1)


def test_label_coords_round_trip():
    assert label_coords("(0.25,0.5)") == (0.25, 0.5)
    assert label_coords("(-1,-1)") == (-1.0, -1.0)
    assert label_coords("a") is None
    assert label_coords("(1,2,3)") is None
