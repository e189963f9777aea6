"""Comparison distances between directed metric spaces.

All comparisons reduce to distortion: how much a relation between two
point sets bends distances, measured in the sup norm with the extended
convention |inf - inf| = 0.  Three distances are computed, forming a
chain (each bounds the previous from above):

  gh_distance              half the least distortion of any correspondence
                           between the zigzag metrics; coincides with the
                           classical metric comparison of the zigzag spaces.
  distortion_distance      half the least joint distortion of a pair of
                           direction-respecting maps (one each way) plus
                           their codistortion coupling term.
  dcorrespondence_distance half the least distortion of a correspondence
                           whose pairs relate points with matching
                           reachability patterns; may be infinite, since
                           such correspondences need not exist.

A direction-respecting vertex map (d-map) sends every edge of the source
into the reachability relation of the target.  Constant maps always
qualify, so the map-pair distance is always finite on nonempty spaces.

Search strategy: small problems are solved exactly by branch and bound
over pairs (gh, d-correspondence) or by enumerating map pairs; larger
ones fall back to seeded local search and report exact=False unless the
best value meets a proven lower bound.  Infeasibility of the
d-correspondence search is certified either by constraint propagation
(a point whose reachability pattern admits no partner) or by exhausted
branch and bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .extended import INFINITY, ext_abs_diff
from .spaces import DEFAULT_TOL, DirectedMetricSpace, diameter


@dataclass(frozen=True)
class SearchBudget:
    """Caps deciding when searches are exhaustive, and search effort.

    exhaustive_gh    : run exact correspondence search when |X|*|Y| is at most this
    exhaustive_cdis  : likewise for d-correspondences
    map_pair_limit   : run exact map-pair search when |Y|^|X| * |X|^|Y| is at most this
    restarts         : local-search restarts in the non-exhaustive regime
    seed             : seeds every stochastic choice; fixed seed, fixed output
    """

    exhaustive_gh: int = 16
    exhaustive_cdis: int = 12
    map_pair_limit: int = 10_000_000
    restarts: int = 32
    seed: int = 0


DEFAULT_BUDGET = SearchBudget()


# ---------------------------------------------------------------------------
# subset distances


def hausdorff(d: np.ndarray, a, b) -> float:
    """Hausdorff distance between two non-empty index subsets under d."""
    d = np.asarray(d, dtype=float)
    a = np.atleast_1d(np.asarray(a, dtype=int))
    b = np.atleast_1d(np.asarray(b, dtype=int))
    if a.size == 0 or b.size == 0:
        raise ValueError("hausdorff distance needs non-empty subsets")
    sub = d[np.ix_(a, b)]
    return float(max(sub.min(axis=1).max(), sub.min(axis=0).max()))


def directed_hausdorff(X: DirectedMetricSpace, a, b) -> float:
    """Hausdorff distance of two subsets under the zigzag metric."""
    return hausdorff(X.zz, a, b)


# ---------------------------------------------------------------------------
# maps, relations and their distortion


def map_distortion(images, dX: np.ndarray, dY: np.ndarray) -> float:
    """Sup-norm distortion of the vertex map x -> images[x]."""
    im = np.asarray(images, dtype=int)
    if im.size == 0:
        return 0.0
    return float(np.max(ext_abs_diff(dX, dY[np.ix_(im, im)])))


def pair_codistortion(f_images, g_images, dX: np.ndarray, dY: np.ndarray) -> float:
    """Coupling defect of maps f: X -> Y and g: Y -> X.

    sup over (x, y) of |dX(x, g y) - dY(f x, y)|; zero iff the two maps
    move each cross pair coherently.
    """
    f = np.asarray(f_images, dtype=int)
    g = np.asarray(g_images, dtype=int)
    if f.size == 0 or g.size == 0:
        return 0.0
    return float(np.max(ext_abs_diff(dX[:, g], dY[f, :])))


def distortion_relation(pairs, dX: np.ndarray, dY: np.ndarray) -> float:
    """Sup-norm distortion of a non-empty relation given as (x, y) pairs."""
    P = np.asarray(list(pairs), dtype=int).reshape(-1, 2)
    if P.shape[0] == 0:
        raise ValueError("distortion of an empty relation is undefined")
    xs, ys = P[:, 0], P[:, 1]
    return float(np.max(ext_abs_diff(dX[np.ix_(xs, xs)], dY[np.ix_(ys, ys)])))


@dataclass(frozen=True)
class VertexMap:
    """A vertex map between analyzed spaces, f(x) = images[x]."""

    source: DirectedMetricSpace
    target: DirectedMetricSpace
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.n:
            raise ValueError("one image per source point required")
        if any(not 0 <= i < self.target.n for i in images):
            raise ValueError("image index out of range")

    @cached_property
    def is_dmap(self) -> bool:
        """True when every source edge lands in target reachability."""
        im = self.images
        reach = self.target.reach
        return all(reach[im[s], im[d]] for (s, d, _) in self.source.space.edges)

    @cached_property
    def distortion(self) -> float:
        """Distortion with respect to the zigzag metrics."""
        return map_distortion(self.images, self.source.zz, self.target.zz)


def codistortion(f: VertexMap, g: VertexMap) -> float:
    """Coupling defect of two opposite maps; rejects mismatched spaces."""
    if f.source is not g.target or f.target is not g.source:
        raise ValueError("codistortion needs maps between the same two spaces, in opposite directions")
    return pair_codistortion(f.images, g.images, f.source.zz, f.target.zz)


@dataclass(frozen=True)
class Correspondence:
    """A relation covering both point sets, as index pairs."""

    n_source: int
    n_target: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(x), int(y)) for (x, y) in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for x, y in pairs:
            if not (0 <= x < self.n_source and 0 <= y < self.n_target):
                raise ValueError("pair index out of range")

    @cached_property
    def is_correspondence(self) -> bool:
        xs = {x for x, _ in self.pairs}
        ys = {y for _, y in self.pairs}
        return len(xs) == self.n_source and len(ys) == self.n_target

    def is_dcorrespondence(self, reach_source: np.ndarray, reach_target: np.ndarray) -> bool:
        """True when related points have matching reachability patterns."""
        if not self.is_correspondence:
            return False
        for x, y in self.pairs:
            for x2, y2 in self.pairs:
                if reach_source[x, x2] != reach_target[y, y2]:
                    return False
        return True

    def distortion(self, dX: np.ndarray, dY: np.ndarray) -> float:
        return distortion_relation(self.pairs, dX, dY)


@dataclass(frozen=True)
class MapPair:
    """Certificate for the map-pair distance: images of f and of g."""

    forward: tuple[int, ...]
    backward: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "forward", tuple(int(i) for i in self.forward))
        object.__setattr__(self, "backward", tuple(int(i) for i in self.backward))

    def objective(self, dX: np.ndarray, dY: np.ndarray) -> float:
        return max(
            map_distortion(self.forward, dX, dY),
            map_distortion(self.backward, dY, dX),
            pair_codistortion(self.forward, self.backward, dX, dY),
        )


@dataclass(frozen=True)
class DistanceReport:
    """Outcome of a distance computation.

    value       : the distance (upper bound unless exact)
    exact       : the search provably attained the optimum
    lower       : best proven lower bound (equals value when exact)
    certificate : Correspondence or MapPair attaining value, when one exists
    method      : how the value was obtained
    """

    kind: str
    value: float
    exact: bool
    lower: float
    certificate: object = None
    method: str = ""


# ---------------------------------------------------------------------------
# lower bounds


def _value_gap_lower(dX: np.ndarray, dY: np.ndarray) -> float:
    """Lower bound on the least correspondence distortion from value sets.

    Any correspondence matches every entry of dX with some entry of dY
    and vice versa, so the worst one-sided gap between the two value
    multisets bounds every distortion from below; so does the diameter
    difference.  All in distortion units (twice the distance).
    """
    gaps = [ext_abs_diff(diameter(dX), diameter(dY))] if dX.size and dY.size else [0.0]
    for A, B in ((dX, dY), (dY, dX)):
        av = A.ravel()
        bv = B.ravel()
        b_fin = np.sort(bv[np.isfinite(bv)])
        b_inf = bool(np.isinf(bv).any())
        a_fin = av[np.isfinite(av)]
        worst = 0.0
        if a_fin.size:
            if b_fin.size:
                pos = np.searchsorted(b_fin, a_fin)
                left = np.where(pos > 0, np.abs(a_fin - b_fin[np.maximum(pos - 1, 0)]), INFINITY)
                right = np.where(pos < b_fin.size, np.abs(b_fin[np.minimum(pos, b_fin.size - 1)] - a_fin), INFINITY)
                worst = float(np.max(np.minimum(left, right)))
            else:
                worst = INFINITY
        if np.isinf(av).any() and not b_inf:
            worst = INFINITY
        gaps.append(worst)
    return float(max(gaps))


# ---------------------------------------------------------------------------
# correspondence search (exact branch and bound + local-search fallback)


def _pair_cost_matrix(dX: np.ndarray, dY: np.ndarray) -> np.ndarray:
    nX, nY = dX.shape[0], dY.shape[0]
    C = ext_abs_diff(dX[:, None, :, None], dY[None, :, None, :])
    return C.reshape(nX * nY, nX * nY)


def _images_respect_direction(images, edges, reach_target) -> bool:
    return all(reach_target[images[s], images[d]] for (s, d, _) in edges)


def _bnb_correspondence(
    dX: np.ndarray,
    dY: np.ndarray,
    compat: Optional[np.ndarray],
    seeds: list[list[tuple[int, int]]],
):
    """Exact minimum-distortion correspondence via branch and bound.

    With compat given, only pairwise-compatible pair sets are admitted
    (the d-correspondence search); returns (inf, None) if none covers
    both sides.  Seeds are known correspondences used as incumbents.
    """
    nX, nY = dX.shape[0], dY.shape[0]
    mn = nX * nY
    C = _pair_cost_matrix(dX, dY)
    allowed = np.ones(mn, dtype=bool)
    if compat is not None:
        allowed = _arc_consistent_candidates(compat, nX, nY)
        if not _all_covered(allowed, nX, nY):
            return INFINITY, None
    order = np.flatnonzero(allowed)
    m = order.size

    # how many allowed pairs of each row/column sit at or after position i
    row_of = order // nY
    col_of = order % nY
    row_suffix = np.zeros((m + 1, nX), dtype=int)
    col_suffix = np.zeros((m + 1, nY), dtype=int)
    for i in range(m - 1, -1, -1):
        row_suffix[i] = row_suffix[i + 1]
        col_suffix[i] = col_suffix[i + 1]
        row_suffix[i, row_of[i]] += 1
        col_suffix[i, col_of[i]] += 1

    best_val = INFINITY
    best: Optional[list[int]] = None
    for seed in seeds:
        ps = [x * nY + y for (x, y) in seed]
        if not ps or not allowed[ps].all():
            continue
        if compat is not None and not all(compat[p, q] for p in ps for q in ps):
            continue
        val = float(np.max(C[np.ix_(ps, ps)]))
        if val < best_val:
            best_val, best = val, ps

    chosen: list[int] = []

    def covered_ok(i: int, rows_missing, cols_missing) -> bool:
        return not (rows_missing & (row_suffix[i] == 0)).any() and not (cols_missing & (col_suffix[i] == 0)).any()

    rows_have = np.zeros(nX, dtype=int)
    cols_have = np.zeros(nY, dtype=int)

    def rec(i: int, partial: float):
        nonlocal best_val, best
        if partial >= best_val:
            return
        if i == m:
            if (rows_have > 0).all() and (cols_have > 0).all():
                best_val, best = partial, list(chosen)
            return
        if not covered_ok(i, rows_have == 0, cols_have == 0):
            return
        p = order[i]
        # include p
        ok = compat is None or all(compat[p, q] for q in chosen)
        if ok:
            add = float(np.max(C[p, chosen])) if chosen else 0.0
            new_partial = max(partial, add)
            if new_partial < best_val:
                chosen.append(p)
                rows_have[row_of[i]] += 1
                cols_have[col_of[i]] += 1
                rec(i + 1, new_partial)
                chosen.pop()
                rows_have[row_of[i]] -= 1
                cols_have[col_of[i]] -= 1
        # exclude p
        rec(i + 1, partial)

    rec(0, 0.0)
    if best is None:
        return INFINITY, None
    return best_val, sorted((int(p // nY), int(p % nY)) for p in best)


def _all_covered(cand: np.ndarray, nX: int, nY: int) -> bool:
    grid = cand.reshape(nX, nY)
    return bool(grid.any(axis=1).all() and grid.any(axis=0).all())


def _arc_consistent_candidates(compat: np.ndarray, nX: int, nY: int) -> np.ndarray:
    """Prune pairs that cannot sit in any d-correspondence.

    A pair needs, in every row and every column, at least one surviving
    compatible partner; iterate to a fixed point.  Sound: members of a
    d-correspondence always survive, so an emptied row or column proves
    there is no d-correspondence at all.
    """
    mn = nX * nY
    cand = np.ones(mn, dtype=bool)
    compat3r = compat.reshape(mn, nX, nY)
    while True:
        live = compat3r & cand.reshape(1, nX, nY)
        row_ok = live.any(axis=2).all(axis=1)
        col_ok = live.any(axis=1).all(axis=1)
        new = cand & row_ok & col_ok
        if (new == cand).all():
            return new
        cand = new


def _reach_compat_matrix(reachX: np.ndarray, reachY: np.ndarray) -> np.ndarray:
    nX, nY = reachX.shape[0], reachY.shape[0]
    fwd = reachX[:, None, :, None] == reachY[None, :, None, :]
    bwd = reachX.T[:, None, :, None] == reachY.T[None, :, None, :]
    return (fwd & bwd).reshape(nX * nY, nX * nY)


def _default_seeds(nX: int, nY: int) -> list[list[tuple[int, int]]]:
    seeds: list[list[tuple[int, int]]] = []
    if nX == nY and nX > 0:
        seeds.append([(i, i) for i in range(nX)])
    if nX and nY:
        # product-with-a-point correspondences
        seeds.append([(x, 0) for x in range(nX)] + [(0, y) for y in range(1, nY)])
    return seeds


def _greedy_map(dX: np.ndarray, dY: np.ndarray, rng: Optional[np.random.Generator]) -> np.ndarray:
    """A map X -> Y matching rows with similar distance profiles."""
    nX, nY = dX.shape[0], dY.shape[0]
    qs = np.linspace(0.0, 1.0, 8)
    with np.errstate(invalid="ignore"):
        px = np.nanquantile(np.where(np.isfinite(dX), dX, np.nan), qs, axis=1).T
        py = np.nanquantile(np.where(np.isfinite(dY), dY, np.nan), qs, axis=1).T
    px = np.nan_to_num(px, nan=0.0)
    py = np.nan_to_num(py, nan=0.0)
    cost = np.abs(px[:, None, :] - py[None, :, :]).max(axis=2)
    if rng is not None:
        cost = cost + rng.uniform(0.0, 1e-6 + cost.max() * 0.05, size=cost.shape)
    return cost.argmin(axis=1)


def _random_greedy_map(dS, dT, edgesS, reachT, rng) -> Optional[np.ndarray]:
    """Random-order greedy assignment of a (direction-respecting) map.

    Points are placed one by one; each placement satisfies the reach
    constraints of edges whose other endpoint is already placed and
    minimizes (with a little seeded noise) the distortion against the
    points placed so far.  Returns None on a dead end.
    """
    nS, nT = dS.shape[0], dT.shape[0]
    out_e: list[list[int]] = [[] for _ in range(nS)]
    in_e: list[list[int]] = [[] for _ in range(nS)]
    for (s, d, _) in edgesS:
        out_e[s].append(d)
        in_e[d].append(s)
    adj = [sorted(set(out_e[u]) | set(in_e[u])) for u in range(nS)]

    # place points in randomized BFS order over the undirected edge graph:
    # every new point is then constrained only through placed neighbours,
    # which avoids most dead ends (all of them, on forests)
    order: list[int] = []
    seen = np.zeros(nS, dtype=bool)
    for r in rng.permutation(nS):
        if seen[r]:
            continue
        seen[r] = True
        queue = [int(r)]
        while queue:
            u = queue.pop(0)
            order.append(u)
            nbrs = [w for w in adj[u] if not seen[w]]
            rng.shuffle(nbrs)
            for w in nbrs:
                seen[w] = True
                queue.append(w)

    images = np.full(nS, -1, dtype=int)
    for u in order:
        mask = np.ones(nT, dtype=bool)
        if reachT is not None:
            for w in out_e[u]:
                if images[w] >= 0:
                    mask &= reachT[:, images[w]]
            for w in in_e[u]:
                if images[w] >= 0:
                    mask &= reachT[images[w], :]
        cand = np.flatnonzero(mask)
        if cand.size == 0:
            return None
        placed = np.flatnonzero(images >= 0)
        if placed.size == 0:
            y = int(cand[rng.integers(cand.size)])
        else:
            cost = ext_abs_diff(dS[u, placed][None, :], dT[np.ix_(cand, images[placed])]).max(axis=1)
            finite = cost[np.isfinite(cost)]
            spread = float(finite.min()) if finite.size else 1.0
            noisy = cost + rng.uniform(0.0, 1e-9 + 0.05 * (spread + 1e-3), cand.size)
            y = int(cand[np.argmin(noisy)])
        images[u] = y
    return images


def _local_search_map_pair(
    dX: np.ndarray,
    dY: np.ndarray,
    budget: SearchBudget,
    *,
    reachX: Optional[np.ndarray] = None,
    reachY: Optional[np.ndarray] = None,
    edgesX=None,
    edgesY=None,
):
    """Best map pair (f, g) by alternating pointwise descent.

    Objective: max of the two distortions and the codistortion.  With
    reach/edge data given, moves are restricted to direction-respecting
    maps (constant starting maps always are).  Deterministic for a fixed
    budget.seed.
    """
    nX, nY = dX.shape[0], dY.shape[0]
    rng = np.random.default_rng(budget.seed)

    def valid_move(images, u, y, edges, reach):
        if edges is None:
            return True
        for (s, d, _) in edges:
            if s == u and not reach[y, images[d] if d != u else y]:
                return False
            if d == u and s != u and not reach[images[s], y]:
                return False
        return True

    def objective(f, g):
        return max(
            map_distortion(f, dX, dY),
            map_distortion(g, dY, dX),
            pair_codistortion(f, g, dX, dY),
        )

    def descend(f, g):
        val = objective(f, g)
        for _ in range(60):
            improved = False
            for images, other, n_opts, edges, reach, is_f in (
                (f, g, nY, edgesX, reachY, True),
                (g, f, nX, edgesY, reachX, False),
            ):
                for u in range(len(images)):
                    cur = images[u]
                    best_y, best_v = cur, val
                    for y in range(n_opts):
                        if y == cur:
                            continue
                        if not valid_move(images, u, y, edges, reach):
                            continue
                        images[u] = y
                        v = objective(f, g)
                        if v < best_v - 1e-15:
                            best_y, best_v = y, v
                    images[u] = best_y
                    if best_v < val - 1e-15:
                        val = best_v
                        improved = True
            if not improved:
                break
        return val, f, g

    restarts = max(budget.restarts, 1)

    def add(pool: list, images) -> None:
        if images is None:
            return
        key = tuple(int(i) for i in images)
        if key not in {tuple(p) for p in pool}:
            pool.append(np.asarray(key, dtype=int))

    # constant maps are always direction respecting; identity and greedy
    # profile maps join the pool when they are (or nothing is constrained)
    pool_f: list[np.ndarray] = []
    pool_g: list[np.ndarray] = []
    ecc_x = np.argsort(np.where(np.isfinite(dX), dX, 0.0).max(axis=1), kind="stable")
    ecc_y = np.argsort(np.where(np.isfinite(dY), dY, 0.0).max(axis=1), kind="stable")
    for cy in (ecc_y[0], ecc_y[-1]):
        add(pool_f, np.full(nX, cy, dtype=int))
    for cx in (ecc_x[0], ecc_x[-1]):
        add(pool_g, np.full(nY, cx, dtype=int))
    if nX == nY:
        ident = np.arange(nX)
        if edgesX is None or _images_respect_direction(ident, edgesX, reachY):
            add(pool_f, ident)
        if edgesY is None or _images_respect_direction(ident, edgesY, reachX):
            add(pool_g, ident)
    f0 = _greedy_map(dX, dY, None)
    if edgesX is None or _images_respect_direction(f0, edgesX, reachY):
        add(pool_f, f0)
    g0 = _greedy_map(dY, dX, None)
    if edgesY is None or _images_respect_direction(g0, edgesY, reachX):
        add(pool_g, g0)
    tries = 0
    sample_f = nX * nX * nY <= 20_000_000  # randomized construction is O(n^2 m)
    sample_g = nY * nY * nX <= 20_000_000
    while (sample_f or sample_g) and (len(pool_f) < restarts or len(pool_g) < restarts) and tries < 4 * restarts:
        tries += 1
        if sample_f and len(pool_f) < restarts:
            add(pool_f, _random_greedy_map(dX, dY, edgesX or (), reachY, rng))
        if sample_g and len(pool_g) < restarts:
            add(pool_g, _random_greedy_map(dY, dX, edgesY or (), reachX, rng))

    # cross-pair the pools, keep the most promising pairs, polish those
    scored = []
    for fi, f in enumerate(pool_f):
        for gi, g in enumerate(pool_g):
            scored.append((objective(f, g), fi, gi))
    scored.sort(key=lambda t: (t[0], t[1], t[2]))
    polish = min(len(scored), max(6, restarts // 4))
    if (nX * nY) * max(nX, nY) ** 2 > 500_000_000:
        # pointwise descent would be too slow; report the best pool pair
        val0, fi, gi = scored[0]
        return val0, tuple(int(v) for v in pool_f[fi]), tuple(int(v) for v in pool_g[gi])

    best_val, best_f, best_g = INFINITY, None, None
    for val0, fi, gi in scored[:polish]:
        val, f, g = descend(list(pool_f[fi]), list(pool_g[gi]))
        if val < best_val:
            best_val, best_f, best_g = val, tuple(f), tuple(g)
    return best_val, best_f, best_g


# ---------------------------------------------------------------------------
# the three distances


def gh_distance(X: DirectedMetricSpace, Y: DirectedMetricSpace, budget: SearchBudget = DEFAULT_BUDGET) -> DistanceReport:
    """Half the least correspondence distortion between the zigzag metrics.

    Exhaustive (exact) when |X|*|Y| <= budget.exhaustive_gh; otherwise a
    local-search upper bound together with proven lower bounds, marked
    exact only if the two meet.
    """
    return _min_correspondence_report("gh", X.zz, Y.zz, budget)


def _min_correspondence_report(kind: str, dX: np.ndarray, dY: np.ndarray, budget: SearchBudget) -> DistanceReport:
    nX, nY = dX.shape[0], dY.shape[0]
    if nX == 0 or nY == 0:
        if nX == 0 and nY == 0:
            return DistanceReport(kind, 0.0, True, 0.0, Correspondence(0, 0, ()), "empty")
        return DistanceReport(kind, INFINITY, True, INFINITY, None, "empty")
    lower = 0.5 * _value_gap_lower(dX, dY)
    if nX * nY <= budget.exhaustive_gh:
        val, pairs = _bnb_correspondence(dX, dY, None, _default_seeds(nX, nY))
        cert = Correspondence(nX, nY, tuple(pairs)) if pairs is not None else None
        return DistanceReport(kind, 0.5 * val, True, 0.5 * val, cert, "branch-and-bound")
    val, f, g = _local_search_map_pair(dX, dY, budget)
    pairs = tuple(sorted({(x, f[x]) for x in range(nX)} | {(g[y], y) for y in range(nY)}))
    val = distortion_relation(pairs, dX, dY)  # the induced correspondence can only be better
    value = 0.5 * val
    exact = value <= lower + 1e-12
    return DistanceReport(kind, value, exact, value if exact else lower, Correspondence(nX, nY, pairs), "local-search")


def distortion_distance(
    X: DirectedMetricSpace, Y: DirectedMetricSpace, budget: SearchBudget = DEFAULT_BUDGET
) -> DistanceReport:
    """Half the best joint objective over direction-respecting map pairs.

    Exhaustive enumeration when |Y|^|X| * |X|^|Y| <= budget.map_pair_limit,
    else seeded alternating local search over d-maps.
    """
    nX, nY = X.n, Y.n
    if nX == 0 or nY == 0:
        if nX == 0 and nY == 0:
            return DistanceReport("dis", 0.0, True, 0.0, MapPair((), ()), "empty")
        return DistanceReport("dis", INFINITY, True, INFINITY, None, "empty")
    lower = 0.5 * _value_gap_lower(X.zz, Y.zz)
    if nY**nX * nX**nY <= budget.map_pair_limit:
        val, f, g = _exhaustive_map_pair(X, Y)
        if f is None:
            return DistanceReport("dis", INFINITY, True, INFINITY, None, "exhaustive")
        return DistanceReport("dis", 0.5 * val, True, 0.5 * val, MapPair(f, g), "exhaustive")
    val, f, g = _local_search_map_pair(
        X.zz,
        Y.zz,
        budget,
        reachX=X.reach,
        reachY=Y.reach,
        edgesX=X.space.edges,
        edgesY=Y.space.edges,
    )
    value = 0.5 * val
    exact = value <= lower + 1e-12
    cert = MapPair(tuple(f), tuple(g)) if f is not None else None
    return DistanceReport("dis", value, exact, value if exact else lower, cert, "local-search")


def _enumerate_dmaps(source: DirectedMetricSpace, target: DirectedMetricSpace) -> np.ndarray:
    """All direction-respecting maps source -> target, one row per map."""
    nS, nT = source.n, target.n
    count = nT**nS
    # mixed-radix decode of 0..nT^nS - 1, one digit per source point
    weights = nT ** np.arange(nS - 1, -1, -1, dtype=np.int64)
    maps = (np.arange(count, dtype=np.int64)[:, None] // weights) % nT
    mask = np.ones(count, dtype=bool)
    reach = target.reach
    for (s, d, _) in source.space.edges:
        mask &= reach[maps[:, s], maps[:, d]]
    return maps[mask]


def _batch_map_distortion(dS: np.ndarray, dT: np.ndarray, maps: np.ndarray) -> np.ndarray:
    n = dS.shape[0]
    out = np.empty(maps.shape[0])
    chunk = max(1, 10_000_000 // max(n * n, 1))
    for i in range(0, maps.shape[0], chunk):
        M = maps[i : i + chunk]
        imaged = dT[M[:, :, None], M[:, None, :]]
        out[i : i + chunk] = ext_abs_diff(dS[None, :, :], imaged).max(axis=(1, 2))
    return out


def _exhaustive_map_pair(X: DirectedMetricSpace, Y: DirectedMetricSpace):
    F = _enumerate_dmaps(X, Y)
    G = _enumerate_dmaps(Y, X)
    if F.shape[0] == 0 or G.shape[0] == 0:
        return INFINITY, None, None
    dX, dY = X.zz, Y.zz
    disF = _batch_map_distortion(dX, dY, F)
    disG = _batch_map_distortion(dY, dX, G)
    fo = np.argsort(disF, kind="stable")
    go = np.argsort(disG, kind="stable")
    F, disF = F[fo], disF[fo]
    G, disG = G[go], disG[go]
    # dX indexed by every g at once: column block per g
    best = INFINITY
    best_f = best_g = None
    gT = G.T  # (nY, kG)
    cross = dX[:, gT]  # (nX, nY, kG) -> dX[x, g[y]]
    for fi in range(F.shape[0]):
        if disF[fi] >= best:
            break
        f = F[fi]
        codis = ext_abs_diff(cross, dY[f, :][:, :, None]).max(axis=(0, 1))  # per g
        obj = np.maximum(np.maximum(codis, disG), disF[fi])
        gi = int(np.argmin(obj))
        if obj[gi] < best:
            best = float(obj[gi])
            best_f, best_g = tuple(int(v) for v in f), tuple(int(v) for v in G[gi])
    return best, best_f, best_g


def dcorrespondence_distance(
    X: DirectedMetricSpace, Y: DirectedMetricSpace, budget: SearchBudget = DEFAULT_BUDGET
) -> DistanceReport:
    """Half the least distortion of a reachability-compatible correspondence.

    INFINITY with exact=True when constraint propagation or exhausted
    search proves that no d-correspondence exists.  Exhaustive search
    when |X|*|Y| <= budget.exhaustive_cdis; beyond that, greedy
    completion gives an upper bound (exact=False) when it succeeds.
    """
    nX, nY = X.n, Y.n
    if nX == 0 or nY == 0:
        if nX == 0 and nY == 0:
            return DistanceReport("cdis", 0.0, True, 0.0, Correspondence(0, 0, ()), "empty")
        return DistanceReport("cdis", INFINITY, True, INFINITY, None, "empty")
    dX, dY = X.zz, Y.zz
    compat = _reach_compat_matrix(X.reach, Y.reach)
    cand = _arc_consistent_candidates(compat, nX, nY)
    lower = 0.5 * _value_gap_lower(dX, dY)
    if not _all_covered(cand, nX, nY):
        return DistanceReport("cdis", INFINITY, True, INFINITY, None, "propagation")
    if nX * nY <= budget.exhaustive_cdis:
        val, pairs = _bnb_correspondence(dX, dY, compat, [])
        if pairs is None:
            return DistanceReport("cdis", INFINITY, True, INFINITY, None, "branch-and-bound")
        return DistanceReport("cdis", 0.5 * val, True, 0.5 * val, Correspondence(nX, nY, tuple(pairs)), "branch-and-bound")
    pairs = _greedy_dcorrespondence(dX, dY, compat, cand, budget)
    if pairs is None:
        return DistanceReport("cdis", INFINITY, False, lower, None, "greedy")
    val = distortion_relation(pairs, dX, dY)
    value = 0.5 * val
    exact = value <= lower + 1e-12
    return DistanceReport("cdis", value, exact, value if exact else lower, Correspondence(nX, nY, tuple(pairs)), "greedy")


def _greedy_dcorrespondence(dX, dY, compat, cand, budget: SearchBudget):
    """Greedy covering by compatible pairs, a few seeded randomized tries."""
    nX, nY = dX.shape[0], dY.shape[0]
    C = None
    order0 = np.flatnonzero(cand)
    rng = np.random.default_rng(budget.seed)
    for attempt in range(max(4, min(budget.restarts, 16))):
        chosen: list[int] = []
        rows = np.zeros(nX, dtype=bool)
        cols = np.zeros(nY, dtype=bool)
        ok = True
        while not (rows.all() and cols.all()):
            usable = [
                p
                for p in order0
                if (not rows[p // nY] or not cols[p % nY]) and all(compat[p, q] for q in chosen)
            ]
            if not usable:
                ok = False
                break
            if C is None:
                C = _pair_cost_matrix(dX, dY)
            scores = [max((float(np.max(C[p, chosen])) if chosen else 0.0), 0.0) for p in usable]
            best = float(np.min(scores))
            ties = [p for p, s in zip(usable, scores) if s <= best + 1e-15]
            p = int(ties[0] if attempt == 0 else ties[int(rng.integers(len(ties)))])
            chosen.append(p)
            rows[p // nY] = True
            cols[p % nY] = True
        if ok:
            return sorted((int(p // nY), int(p % nY)) for p in chosen)
    return None


def is_disometry(f: VertexMap, tol: float = DEFAULT_TOL) -> bool:
    """Bijective direction-respecting map preserving zigzag distances.

    Requires the inverse to respect direction as well, so the two spaces
    are indistinguishable as directed metric spaces.
    """
    nX, nY = f.source.n, f.target.n
    if nX != nY:
        return False
    images = np.asarray(f.images, dtype=int)
    if np.unique(images).size != nX:
        return False
    if not f.is_dmap:
        return False
    inv = np.empty(nX, dtype=int)
    inv[images] = np.arange(nX)
    g = VertexMap(source=f.target, target=f.source, images=tuple(int(i) for i in inv))
    if not g.is_dmap:
        return False
    return f.distortion <= tol


@dataclass(frozen=True)
class ChainReport:
    """Joint report on the ordering of the comparison distances.

    chain_holds covers the guaranteed ordering: correspondence distance
    below map-pair distance below reach-compatible distance.  The
    comparison distance of the bare base metrics is carried separately
    as base_le_zigzag because it is NOT guaranteed: a two-point space
    whose edge is longer than the base gap can sit closer to another
    space in the zigzag metrics than in the base metrics.  conclusive is
    False when any ingredient came back inexact; nothing is judged then.
    """

    gh: DistanceReport
    dis: DistanceReport
    cdis: DistanceReport
    gh_base: DistanceReport
    tol: float = DEFAULT_TOL

    @property
    def conclusive(self) -> bool:
        return all(r.exact for r in (self.gh, self.dis, self.cdis, self.gh_base))

    @property
    def chain_holds(self):
        if not self.conclusive:
            return None
        return bool(
            self.gh.value <= self.dis.value + self.tol
            and self.dis.value <= self.cdis.value + self.tol
        )

    @property
    def base_le_zigzag(self):
        if not (self.gh.exact and self.gh_base.exact):
            return None
        return bool(self.gh_base.value <= self.gh.value + self.tol)


def verify_chain(X: DirectedMetricSpace, Y: DirectedMetricSpace, budget: SearchBudget = DEFAULT_BUDGET) -> ChainReport:
    """Compute all three distances plus the base-metric comparison.

    Meant for sizes where every search is exhaustive; with budgets too
    small for that the report comes back inconclusive, never failed.
    """
    return ChainReport(
        gh=gh_distance(X, Y, budget),
        dis=distortion_distance(X, Y, budget),
        cdis=dcorrespondence_distance(X, Y, budget),
        gh_base=_min_correspondence_report("gh-base", X.space.base, Y.space.base, budget),
    )
