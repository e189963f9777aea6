"""Finite directed metric spaces and the zigzag distance.

A finite directed space is a point set carrying two layers of data: a
symmetric base metric (possibly taking the value inf between different
weak components) and a set of directed, weighted edges.  Each edge
(src, dst, length) stands for a forward route of the given length, and
lengths are required to respect the base metric (length >= base[src][dst],
no self-loops).

The zigzag distance between two points is the least total length of a
walk that may traverse edges either forwards or backwards.  Combinatorially
that is just shortest paths in the symmetrized weighted graph, which makes
it an extended pseudo-metric; positivity of edge lengths and of the base
metric makes it an extended metric here.  Pairs joined by no zigzag walk
sit at distance inf.

Reachability is the reflexive-transitive closure of the edge relation
and is the order-theoretic shadow of the space: a directed map between
spaces must respect it (see the distances module).

All matrices handed out by this module are read-only numpy arrays.
Operations never mutate their inputs; they build new spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from .extended import INFINITY, ext_abs_diff

DEFAULT_TOL = 1e-9

# Full O(n^3) triangle-inequality validation is run automatically only below
# this size; larger spaces come out of constructions that guarantee it.
TRIANGLE_CHECK_MAX = 192

Edge = tuple[int, int, float]


def max_triangle_defect(d: np.ndarray) -> float:
    """Largest violation of d[i,j] <= d[i,k] + d[k,j] over all triples.

    <= 0 means the (extended) triangle inequality holds.  An inf right
    hand side never counts as violated, whatever the left side is.
    """
    d = np.asarray(d, dtype=float)
    n = d.shape[0]
    worst = -INFINITY
    for k in range(n):
        rhs = np.add.outer(d[:, k], d[k, :])
        with np.errstate(invalid="ignore"):
            defect = np.where(np.isinf(rhs), -INFINITY, d - rhs)
        worst = max(worst, float(np.max(defect))) if defect.size else worst
    return worst


def assert_extended_metric(d: np.ndarray, tol: float = DEFAULT_TOL, *, check_triangle: bool = True) -> None:
    """Raise ValueError unless d is a symmetric extended metric matrix."""
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {d.shape}")
    if np.isnan(d).any():
        raise ValueError("distance matrix contains nan")
    if d.size == 0:
        return
    if np.abs(np.diag(d)).max() > tol:
        raise ValueError("distance matrix has nonzero diagonal")
    if float(np.max(ext_abs_diff(d, d.T))) > tol:
        raise ValueError("distance matrix is not symmetric")
    off = ~np.eye(d.shape[0], dtype=bool)
    if d[off].size and np.min(d[off]) <= 0.0:
        raise ValueError("distinct points at non-positive distance")
    if check_triangle:
        defect = max_triangle_defect(d)
        if defect > tol:
            raise ValueError(f"triangle inequality violated by {defect:.3e}")


def _as_readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FiniteDSpace:
    """Finite point set with a base metric and directed weighted edges.

    base   : (n, n) symmetric extended metric matrix
    edges  : directed edges (src, dst, length), length >= base[src][dst] > 0
    labels : one name per point, unique; defaults to "0", "1", ...
    """

    base: np.ndarray
    edges: tuple[Edge, ...] = ()
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        base = _as_readonly(self.base)
        object.__setattr__(self, "base", base)
        n = base.shape[0] if base.ndim == 2 else -1
        assert_extended_metric(base, check_triangle=(n <= TRIANGLE_CHECK_MAX))

        edges = tuple((int(s), int(d), float(l)) for (s, d, l) in self.edges)
        object.__setattr__(self, "edges", edges)
        if edges:
            arr = np.array(edges, dtype=float)
            src, dst, lens = arr[:, 0].astype(int), arr[:, 1].astype(int), arr[:, 2]
            if src.min() < 0 or src.max() >= n or dst.min() < 0 or dst.max() >= n:
                raise ValueError("edge endpoint out of range")
            if (src == dst).any():
                raise ValueError("self-loop edges are not allowed")
            if not np.isfinite(lens).all() or (lens <= 0.0).any():
                raise ValueError("edge lengths must be finite and positive")
            short = lens < base[src, dst] - DEFAULT_TOL
            if short.any():
                i = int(np.argmax(short))
                raise ValueError(
                    f"edge {edges[i][:2]} shorter than base distance "
                    f"({edges[i][2]:.6g} < {base[src[i], dst[i]]:.6g})"
                )

        labels = tuple(str(l) for l in self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise ValueError("labels must be unique")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.base.shape[0]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no point labelled {label!r}") from None

    def edge_indices(self):
        """Edges as (src, dst, length) integer/float arrays."""
        if not self.edges:
            return np.zeros(0, dtype=int), np.zeros(0, dtype=int), np.zeros(0, dtype=float)
        arr = np.array(self.edges, dtype=float)
        return arr[:, 0].astype(int), arr[:, 1].astype(int), arr[:, 2]

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        """Full validation including the O(n^3) triangle check."""
        assert_extended_metric(self.base, tol, check_triangle=True)


def _weight_csr(n: int, edges, *, reverse: bool = False) -> sp.csr_matrix:
    """Sparse weight matrix, parallel edges reduced to their minimum length."""
    arr = np.asarray([(int(s), int(d), float(l)) for (s, d, l) in edges], dtype=float)
    if arr.size == 0:
        return sp.csr_matrix((n, n))
    src = arr[:, 1 if reverse else 0].astype(np.int64)
    dst = arr[:, 0 if reverse else 1].astype(np.int64)
    lens = arr[:, 2]
    key = src * n + dst
    order = np.lexsort((lens, key))
    key, src, dst, lens = key[order], src[order], dst[order], lens[order]
    first = np.ones(len(key), dtype=bool)
    first[1:] = key[1:] != key[:-1]
    return sp.csr_matrix((lens[first], (src[first], dst[first])), shape=(n, n))


def zigzag_from_edges(n: int, edges, sources=None) -> np.ndarray:
    """Zigzag distances from an edge list, without building a space.

    Shortest paths in the symmetrized weighted graph.  With sources=None
    the full symmetric (n, n) matrix is returned; otherwise one row per
    requested source index.  Meant for large graphs (fine grids) where a
    dense base matrix would not fit.
    """
    graph = _weight_csr(n, edges)
    if n == 0:
        return np.zeros((0, 0))
    if sources is None:
        dist = dijkstra(graph, directed=False)
        # rows are computed independently; tie-break rounding can differ, so
        # symmetrize explicitly
        dist = np.minimum(dist, dist.T)
        np.fill_diagonal(dist, 0.0)
        return dist
    idx = np.atleast_1d(np.asarray(sources, dtype=int))
    return np.atleast_2d(dijkstra(graph, directed=False, indices=idx))


def compute_zigzag(space: FiniteDSpace) -> np.ndarray:
    """Full zigzag distance matrix of a space (extended metric, zz >= base)."""
    return zigzag_from_edges(space.n, space.edges)


def compute_reachability(space: FiniteDSpace) -> np.ndarray:
    """Reflexive-transitive closure of the edge relation, as a bool matrix."""
    n = space.n
    reach = np.eye(n, dtype=bool)
    if space.edges:
        hops = dijkstra(_weight_csr(n, space.edges), directed=True, unweighted=True)
        reach |= np.isfinite(hops)
    return reach


@dataclass(frozen=True)
class DirectedMetricSpace:
    """A space bundled with its derived zigzag metric and reachability.

    Invariants (checked on construction):
      * zz is an extended metric with zz >= base entrywise,
      * reachable pairs are at finite zigzag distance,
      * finiteness of zz is symmetric (it depends only on weak components).
    """

    space: FiniteDSpace
    zz: np.ndarray
    reach: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "zz", _as_readonly(self.zz))
        reach = np.array(self.reach, dtype=bool, copy=True)
        reach.setflags(write=False)
        object.__setattr__(self, "reach", reach)
        n = self.space.n
        if self.zz.shape != (n, n) or reach.shape != (n, n):
            raise ValueError("zz/reach shape does not match the space")
        if n:
            with np.errstate(invalid="ignore"):
                below = np.where(np.isinf(self.zz), -INFINITY, self.space.base - self.zz)
            if float(np.max(below)) > DEFAULT_TOL:
                raise ValueError("zigzag distances drop below the base metric")
        if (reach & ~np.isfinite(self.zz)).any():
            raise ValueError("reachable pair at infinite zigzag distance")
        if (np.isfinite(self.zz) != np.isfinite(self.zz).T).any():
            raise ValueError("finiteness of zz is not symmetric")

    @classmethod
    def from_space(cls, space: FiniteDSpace) -> "DirectedMetricSpace":
        return cls(space=space, zz=compute_zigzag(space), reach=compute_reachability(space))

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels


def reverse(space: FiniteDSpace) -> FiniteDSpace:
    """Same points and base metric, every edge direction flipped."""
    return FiniteDSpace(
        base=space.base,
        edges=tuple((d, s, l) for (s, d, l) in space.edges),
        labels=space.labels,
    )


def disjoint_union(a: FiniteDSpace, b: FiniteDSpace) -> FiniteDSpace:
    """Side-by-side union; cross distances are inf, no cross edges."""
    na, nb = a.n, b.n
    base = np.full((na + nb, na + nb), INFINITY)
    base[:na, :na] = a.base
    base[na:, na:] = b.base
    edges = tuple(a.edges) + tuple((s + na, d + na, l) for (s, d, l) in b.edges)
    labels = tuple(f"0:{l}" for l in a.labels) + tuple(f"1:{l}" for l in b.labels)
    return FiniteDSpace(base=base, edges=edges, labels=labels)


def product(a: FiniteDSpace, b: FiniteDSpace) -> FiniteDSpace:
    """Product space with the sum (taxicab) metric.

    Point (i, j) gets index i * b.n + j.  An edge moves along a, along b,
    or along both at once; lengths add.  Staying put in both factors is
    not an edge (no self-loops).
    """
    na, nb = a.n, b.n
    base = (a.base[:, None, :, None] + b.base[None, :, None, :]).reshape(na * nb, na * nb)
    edges: list[Edge] = []
    for (s, d, l) in a.edges:
        edges.extend((s * nb + j, d * nb + j, l) for j in range(nb))
    for i in range(na):
        edges.extend((i * nb + s, i * nb + d, l) for (s, d, l) in b.edges)
    for (sa, da, la) in a.edges:
        edges.extend((sa * nb + sb, da * nb + db, la + lb) for (sb, db, lb) in b.edges)
    labels = tuple(f"({la},{lb})" for la in a.labels for lb in b.labels)
    return FiniteDSpace(base=base, edges=tuple(edges), labels=labels)


def quotient(space: FiniteDSpace, classes: Sequence[Iterable[int]], tol: float = DEFAULT_TOL) -> FiniteDSpace:
    """Glue the points of each class together.

    The quotient base distance between classes A and B is the infimum of
    chain sums  d(a1, b1) + d(a2, b2) + ...  hopping freely inside classes
    between paid hops.  By the triangle inequality consecutive paid hops
    never help, so this equals shortest paths in the weighted class graph
    whose arc A -> B costs the least base distance between members; that
    graph problem is what gets solved here.  Classes ending up at distance
    <= tol are merged (the quotient is again a metric space, not just a
    pseudometric).  Edges descend with their lengths; edges collapsing to
    a self-loop are dropped.
    """
    n = space.n
    members = [sorted(int(i) for i in c) for c in classes]
    if any(len(c) == 0 for c in members):
        raise ValueError("quotient classes must be non-empty")
    flat = [i for c in members for i in c]
    if sorted(flat) != list(range(n)):
        raise ValueError("classes must partition the point set")
    m = len(members)
    cls_of = np.empty(n, dtype=int)
    for ci, c in enumerate(members):
        cls_of[c] = ci

    # least base distance between classes, via a grouped min over all pairs
    key = (cls_of[:, None] * m + cls_of[None, :]).ravel()
    vals = space.base.ravel()
    order = np.argsort(key, kind="stable")
    key_s, vals_s = key[order], vals[order]
    starts = np.flatnonzero(np.r_[True, key_s[1:] != key_s[:-1]])
    cost = np.full(m * m, INFINITY)
    cost[key_s[starts]] = np.minimum.reduceat(vals_s, starts)
    cost = cost.reshape(m, m)
    np.fill_diagonal(cost, 0.0)

    # all-pairs shortest paths by plain relaxation; the class graph is
    # small and scipy's dense routines drop near-zero weights as non-edges
    dist = np.minimum(cost, cost.T)
    for k in range(m):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    np.fill_diagonal(dist, 0.0)

    # merge classes that the chain infimum identifies
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    close = np.argwhere(dist <= tol)
    for i, j in close:
        if i < j:
            ri, rj = find(int(i)), find(int(j))
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for ci in range(m):
        groups.setdefault(find(ci), []).append(ci)
    merged = [sorted(i for ci in g for i in members[ci]) for g in groups.values()]
    merged.sort(key=lambda c: c[0])

    reps = [c[0] for c in merged]
    rep_cls = np.array([cls_of[r] for r in reps], dtype=int)
    base_q = dist[np.ix_(rep_cls, rep_cls)].copy()
    np.fill_diagonal(base_q, 0.0)

    new_of = np.empty(n, dtype=int)
    for qi, c in enumerate(merged):
        new_of[c] = qi
    descended = sorted(
        {(int(new_of[s]), int(new_of[d]), float(l)) for (s, d, l) in space.edges if new_of[s] != new_of[d]}
    )
    labels = tuple(space.labels[r] for r in reps)
    return FiniteDSpace(base=base_q, edges=tuple(descended), labels=labels)


def diameter(d: np.ndarray) -> float:
    """Largest pairwise distance; inf on disconnected spaces.  Rejects empty."""
    d = np.asarray(d, dtype=float)
    if d.size == 0:
        raise ValueError("diameter of an empty space is undefined")
    return float(np.max(d))
