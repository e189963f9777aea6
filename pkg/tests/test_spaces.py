"""Core space containers and constructions.

Claims covered: builder validation, zigzag distances against a slow
relaxation oracle, reachability against recursive search, reversal
leaving zigzag values bitwise unchanged, and the frozen values of the
union / product / quotient constructions.
"""

import numpy as np
import pytest
from oracles import recursive_reachability, relax_zigzag

from dirmetric import (
    INFINITY,
    DirectedMetricSpace,
    FiniteDSpace,
    compute_reachability,
    compute_zigzag,
    diameter,
    disjoint_union,
    ext_abs_diff,
    max_triangle_defect,
    product,
    quotient,
    reverse,
    zigzag_from_edges,
)

TWO = FiniteDSpace(base=[[0.0, 1.0], [1.0, 0.0]], edges=((0, 1, 1.0),))


def random_euclidean(rng, n, n_edges):
    pts = rng.random((n, 2))
    base = np.sqrt(((pts[:, None] - pts[None, :]) ** 2).sum(-1))
    edges = []
    for _ in range(n_edges):
        i, j = rng.integers(n, size=2)
        if i != j:
            edges.append((int(i), int(j), float(base[i, j] * (1 + rng.random()))))
    return FiniteDSpace(base=base, edges=tuple(edges))


# ---------------------------------------------------------------------------
# validation


def test_builder_rejects_self_loop():
    with pytest.raises(ValueError):
        FiniteDSpace(base=[[0.0, 1.0], [1.0, 0.0]], edges=((0, 0, 1.0),))


def test_builder_rejects_out_of_range():
    with pytest.raises(ValueError):
        FiniteDSpace(base=[[0.0, 1.0], [1.0, 0.0]], edges=((0, 2, 1.0),))


def test_builder_rejects_short_edge():
    with pytest.raises(ValueError):
        FiniteDSpace(base=[[0.0, 1.0], [1.0, 0.0]], edges=((0, 1, 0.5),))


def test_builder_rejects_nonpositive_and_infinite_lengths():
    zero = [[0.0, 0.0], [0.0, 0.0]]
    with pytest.raises(ValueError):
        FiniteDSpace(base=zero, edges=((0, 1, 0.0),))
    with pytest.raises(ValueError):
        FiniteDSpace(base=[[0.0, 1.0], [1.0, 0.0]], edges=((0, 1, INFINITY),))


def test_builder_rejects_duplicate_labels():
    with pytest.raises(ValueError):
        FiniteDSpace(base=[[0.0, 1.0], [1.0, 0.0]], edges=(), labels=("a", "a"))


def test_builder_rejects_asymmetric_base():
    with pytest.raises(ValueError):
        FiniteDSpace(base=[[0.0, 1.0], [2.0, 0.0]], edges=())


def test_builder_rejects_triangle_violation():
    bad = [[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]]
    with pytest.raises(ValueError):
        FiniteDSpace(base=bad, edges=())


def test_base_may_contain_infinity():
    base = [[0.0, INFINITY], [INFINITY, 0.0]]
    s = FiniteDSpace(base=base, edges=())
    assert s.base[0, 1] == INFINITY


LINE3 = [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]


def test_labels_default_and_lookup():
    s = FiniteDSpace(base=LINE3, edges=())
    assert s.labels == ("0", "1", "2")
    assert s.index_of("2") == 2
    with pytest.raises(KeyError):
        s.index_of("7")


def test_base_is_read_only():
    with pytest.raises(ValueError):
        TWO.base[0, 1] = 5.0


# ---------------------------------------------------------------------------
# zigzag and reachability against oracles


def test_zigzag_matches_relaxation_oracle():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(2, 8))
        s = random_euclidean(rng, n, int(rng.integers(0, 2 * n)))
        zz = compute_zigzag(s)
        ref = relax_zigzag(n, s.edges)
        assert float(np.max(ext_abs_diff(zz, ref))) <= 1e-9


def test_reachability_matches_recursive_oracle():
    rng = np.random.default_rng(12)
    for _ in range(25):
        n = int(rng.integers(2, 8))
        s = random_euclidean(rng, n, int(rng.integers(0, 2 * n)))
        assert np.array_equal(compute_reachability(s), recursive_reachability(n, s.edges))


def test_zigzag_is_extended_metric_and_dominates_base():
    rng = np.random.default_rng(13)
    for _ in range(15):
        n = int(rng.integers(2, 12))
        s = random_euclidean(rng, n, int(rng.integers(1, 3 * n)))
        zz = compute_zigzag(s)
        assert np.allclose(np.diag(zz), 0.0)
        assert np.array_equal(zz, zz.T)
        assert max_triangle_defect(zz) <= 1e-9
        with np.errstate(invalid="ignore"):
            gap = np.where(np.isinf(zz), 0.0, s.base - zz)
        assert gap.max() <= 1e-9


def test_parallel_edges_take_the_minimum():
    s = FiniteDSpace(base=[[0.0, 1.0], [1.0, 0.0]], edges=((0, 1, 3.0), (0, 1, 1.5)))
    assert compute_zigzag(s)[0, 1] == 1.5


def test_shared_head_pair_connects_through_middle():
    tri = FiniteDSpace(
        base=[[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]],
        edges=((0, 1, 1.0), (2, 1, 1.0)),
    )
    zz = compute_zigzag(tri)
    assert zz[0, 2] == 2.0
    reach = compute_reachability(tri)
    assert not reach[0, 2] and not reach[2, 0] and reach[0, 1] and reach[2, 1]


def test_zigzag_from_edges_source_rows():
    edges = ((0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0))
    full = zigzag_from_edges(4, edges)
    rows = zigzag_from_edges(4, edges, sources=[1, 3])
    assert rows.shape == (2, 4)
    assert np.array_equal(rows, full[[1, 3]])


def test_reversal_keeps_zigzag_bitwise():
    rng = np.random.default_rng(14)
    for _ in range(20):
        n = int(rng.integers(2, 10))
        s = random_euclidean(rng, n, int(rng.integers(0, 3 * n)))
        assert np.array_equal(compute_zigzag(s), compute_zigzag(reverse(s)))


def test_reverse_flips_reachability():
    s = FiniteDSpace(base=LINE3, edges=((0, 1, 1.0), (1, 2, 2.0)))
    assert np.array_equal(compute_reachability(reverse(s)), compute_reachability(s).T)


# ---------------------------------------------------------------------------
# constructions


def test_disjoint_union_keeps_blocks_apart():
    u = disjoint_union(TWO, TWO)
    assert u.n == 4
    assert u.labels == ("0:0", "0:1", "1:0", "1:1")
    zz = compute_zigzag(u)
    assert np.isinf(zz[:2, 2:]).all()
    assert zz[0, 1] == 1.0 and zz[2, 3] == 1.0


def test_product_sum_metric_and_corner_distance():
    p = product(TWO, TWO)
    assert p.n == 4
    i = {lbl: k for k, lbl in enumerate(p.labels)}
    assert p.base[i["(0,0)"], i["(1,1)"]] == 2.0
    assert p.base[i["(0,0)"], i["(0,1)"]] == 1.0
    zz = compute_zigzag(p)
    assert zz[i["(1,0)"], i["(0,1)"]] == 2.0
    assert zz[i["(0,0)"], i["(1,1)"]] == 2.0


def test_product_diagonal_edge_present():
    p = product(TWO, TWO)
    i = {lbl: k for k, lbl in enumerate(p.labels)}
    assert (i["(0,0)"], i["(1,1)"], 2.0) in p.edges


def test_quotient_glues_interval_into_circle():
    line = FiniteDSpace(
        base=[[0.0, 1, 2, 3], [1, 0.0, 1, 2], [2, 1, 0.0, 1], [3, 2, 1, 0.0]],
        edges=((0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)),
    )
    circle = quotient(line, [[0, 3], [1], [2]])
    assert circle.n == 3
    zz = compute_zigzag(circle)
    assert zz[0, 1] == 1.0 and zz[0, 2] == 1.0 and zz[1, 2] == 1.0


def test_quotient_merges_touching_classes():
    eps = 1e-12
    line = FiniteDSpace(
        base=[[0.0, 1.0, 1.0 + eps], [1.0, 0.0, eps], [1.0 + eps, eps, 0.0]],
        edges=((0, 1, 1.0),),
    )
    q = quotient(line, [[0], [1], [2]])
    assert q.n == 2


def test_quotient_rejects_bad_partition():
    with pytest.raises(ValueError):
        quotient(TWO, [[0]])
    with pytest.raises(ValueError):
        quotient(TWO, [[0, 1], [1]])
    with pytest.raises(ValueError):
        quotient(TWO, [[0, 1], []])


# ---------------------------------------------------------------------------
# wrapper type and helpers


def test_directed_space_wrapper_checks_shapes():
    X = DirectedMetricSpace.from_space(TWO)
    assert X.n == 2
    assert X.zz[0, 1] == 1.0
    assert X.reach[0, 1] and not X.reach[1, 0]
    with pytest.raises(ValueError):
        DirectedMetricSpace(space=TWO, zz=np.zeros((3, 3)), reach=np.zeros((2, 2), dtype=bool))


def test_diameter():
    assert diameter(compute_zigzag(TWO)) == 1.0
    assert diameter(np.array([[0.0, INFINITY], [INFINITY, 0.0]])) == INFINITY
    with pytest.raises(ValueError):
        diameter(np.zeros((0, 0)))
