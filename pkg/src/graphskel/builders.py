"""Filtration builders: plain Rips, lower-star, weighted Rips and its sparse version.

The weighted filtrations value a vertex at its density-derived weight and an
edge at the smallest scale ``alpha`` at which both endpoint balls of radius
``sqrt(alpha^2 - w^2)`` touch; triangles enter at the max of their edge values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.spatial.distance import cdist

from .complexes import (
    Filtration,
    Simplex,
    build_filtration,
    canonicalize,
    dim,
    facets,
    filtration_from_arrays,
)
from .errors import (
    BudgetExceededError,
    DuplicatePointError,
    IncompleteComplexError,
    ParameterError,
    StateError,
)

DEFAULT_SIMPLEX_BUDGET = 2**28


class WeightedPointCloud:
    """Points plus metric access plus (optional) density weights.

    ``metric`` is "l2", "l1" or "precomputed"; in the precomputed case the
    full symmetric distance matrix is supplied instead of coordinates.
    Duplicate points (zero off-diagonal distance) are rejected.
    """

    def __init__(
        self,
        points: Optional[np.ndarray],
        metric: str = "l2",
        distance_matrix: Optional[np.ndarray] = None,
    ):
        if metric not in ("l2", "l1", "precomputed"):
            raise ParameterError(f"unknown metric {metric!r}")
        self.metric = metric
        self.weights: Optional[np.ndarray] = None
        self.k: Optional[int] = None
        if metric == "precomputed":
            if distance_matrix is None:
                raise ParameterError("precomputed metric requires a distance matrix")
            m = np.asarray(distance_matrix, dtype=float)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ParameterError("distance matrix must be square")
            if not np.allclose(m, m.T, atol=1e-12):
                raise ParameterError("distance matrix must be symmetric")
            if np.any(np.diag(m) != 0):
                raise ParameterError("distance matrix diagonal must be zero")
            self.points = None if points is None else np.asarray(points, dtype=float)
            self._dist = m
        else:
            if points is None:
                raise ParameterError("points required unless metric is precomputed")
            self.points = np.asarray(points, dtype=float)
            if self.points.ndim != 2:
                raise ParameterError("points must be a 2-D array")
            p = "euclidean" if metric == "l2" else "cityblock"
            self._dist = cdist(self.points, self.points, metric=p)
        off = self._dist.copy()
        np.fill_diagonal(off, np.inf)
        dup = np.argwhere(off == 0)
        if dup.size:
            i, j = dup[0]
            raise DuplicatePointError(f"points {i} and {j} coincide")

    @property
    def n(self) -> int:
        return self._dist.shape[0]

    def distance(self, p: int, q: int) -> float:
        return float(self._dist[p, q])

    def distance_matrix(self) -> np.ndarray:
        return self._dist

    def require_weights(self) -> np.ndarray:
        if self.weights is None:
            raise StateError("weights not computed; call dtm_weights first")
        return self.weights


def knn(cloud: WeightedPointCloud, p: int, k: int) -> List[Tuple[int, float]]:
    """k nearest neighbors of point p, excluding p itself.

    Sorted by distance, ties broken by lower index.
    """
    n = cloud.n
    if not 1 <= k <= n - 1:
        raise ParameterError(f"k must be in [1, {n - 1}], got {k}")
    d = cloud._dist[p]
    others = np.delete(np.arange(n), p)
    order = np.lexsort((others, d[others]))
    picked = others[order[:k]]
    return [(int(q), float(d[q])) for q in picked]


def dtm_weights(cloud: WeightedPointCloud, k: int) -> WeightedPointCloud:
    """Populate per-point weights with the RMS distance to the k nearest neighbors."""
    n = cloud.n
    if not 1 <= k <= n - 1:
        raise ParameterError(f"k must be in [1, {n - 1}], got {k}")
    d = cloud._dist
    # self-distance excluded by sorting: diagonal is 0 but sits at position 0
    part = np.sort(d, axis=1)[:, 1 : k + 1]
    cloud.weights = np.sqrt(np.mean(part**2, axis=1))
    cloud.k = k
    return cloud


def weighted_edge_value(w_p: float, w_q: float, d: float) -> float:
    """Smallest scale at which two weighted balls at distance d touch.

    Solves sqrt(a^2 - w_p^2) + sqrt(a^2 - w_q^2) = d for the smallest valid
    alpha; when d <= sqrt(|w_p^2 - w_q^2|) the heavier weight dominates.
    """
    if d <= 0:
        raise ParameterError(f"d must be positive, got {d}")
    if w_p < 0 or w_q < 0:
        raise ParameterError("weights must be non-negative")
    lo, hi = (w_p, w_q) if w_p <= w_q else (w_q, w_p)
    if d * d <= hi * hi - lo * lo:
        return hi
    t = (d * d + lo * lo - hi * hi) / (2.0 * d)
    return math.sqrt(hi * hi + t * t)


def _edge_value_matrix(d: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Vectorized weighted_edge_value over a full distance matrix.

    Diagonal entries are meaningless and set to +inf.
    """
    lo = np.minimum.outer(w, w)
    hi = np.maximum.outer(w, w)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (d * d + lo * lo - hi * hi) / (2.0 * d)
        vals = np.sqrt(hi * hi + t * t)
    dominated = d * d <= hi * hi - lo * lo
    vals = np.where(dominated, hi, vals)
    np.fill_diagonal(vals, np.inf)
    return vals


def _check_budget(count: int, budget: int) -> None:
    if count > budget:
        raise BudgetExceededError(f"{count} simplices exceeds budget {budget}")


def _triangles_from_adjacency(
    adj: np.ndarray, edge_value: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Enumerate triangles of an adjacency matrix; value = max incident edge value.

    Returns (T, 3) vertex triples and their values.
    """
    n = adj.shape[0]
    tris = []
    vals = []
    for u in range(n):
        nu = np.nonzero(adj[u])[0]
        nu = nu[nu > u]
        for v in nu:
            common = nu[(nu > v) & adj[v, nu]]
            if common.size:
                block = np.empty((common.size, 3), dtype=np.int64)
                block[:, 0] = u
                block[:, 1] = v
                block[:, 2] = common
                t_vals = np.maximum(edge_value[u, common], edge_value[v, common])
                np.maximum(t_vals, edge_value[u, v], out=t_vals)
                tris.append(block)
                vals.append(t_vals)
    if not tris:
        return np.empty((0, 3), dtype=np.int64), np.empty(0)
    return np.vstack(tris), np.concatenate(vals)


def _assemble(
    n: int,
    edges: np.ndarray,
    edge_vals: np.ndarray,
    tris: np.ndarray,
    tri_vals: np.ndarray,
    vertex_vals: np.ndarray,
    budget: int,
) -> Filtration:
    total = n + len(edges) + len(tris)
    _check_budget(total, budget)
    verts = np.full((total, 3), -1, dtype=np.int64)
    rho = np.empty(total)
    verts[:n, 0] = np.arange(n)
    rho[:n] = vertex_vals
    e0 = n + len(edges)
    verts[n:e0, :2] = edges
    rho[n:e0] = edge_vals
    verts[e0:, :] = tris
    rho[e0:] = tri_vals
    return filtration_from_arrays(verts, rho)


def rips_2skeleton(
    cloud: WeightedPointCloud,
    r: float,
    budget: int = DEFAULT_SIMPLEX_BUDGET,
) -> Filtration:
    """2-skeleton of the Rips complex at radius r.

    Edges enter at their length (threshold d <= r), triangles at their longest
    edge.  Note the convention difference with the weighted builders, whose
    zero-weight edge value is d/2.
    """
    if r <= 0:
        raise ParameterError(f"r must be positive, got {r}")
    n = cloud.n
    d = cloud._dist
    adj = (d <= r) & ~np.eye(n, dtype=bool)
    iu, ju = np.nonzero(np.triu(adj))
    edges = np.column_stack([iu, ju])
    edge_vals = d[iu, ju]
    ev = np.where(adj, d, np.inf)
    tris, tri_vals = _triangles_from_adjacency(adj, ev)
    return _assemble(n, edges, edge_vals, tris, tri_vals, np.zeros(n), budget)


def dtm_rips_filtration(
    cloud: WeightedPointCloud,
    r_max: float = math.inf,
    budget: int = DEFAULT_SIMPLEX_BUDGET,
) -> Filtration:
    """Full weighted Rips filtration up to scale r_max (default: unbounded).

    Vertices enter at their weight, edges at their weighted value, triangles
    at the max of their faces' values.  Requires dtm_weights to have run.
    """
    w = cloud.require_weights()
    n = cloud.n
    ev = _edge_value_matrix(cloud._dist, w)
    adj = ev <= r_max
    iu, ju = np.nonzero(np.triu(adj, k=1))
    edges = np.column_stack([iu, ju])
    edge_vals = ev[iu, ju]
    tris, tri_vals = _triangles_from_adjacency(adj, ev)
    return _assemble(n, edges, edge_vals, tris, tri_vals, w, budget)


@dataclass
class SparseParams:
    """Sparsification bookkeeping: greedy permutation radii and deletion scales.

    ``insertion_radii[p]`` is the farthest-first insertion radius of point p
    (infinite for the first greedy point); ``deletion_scale[p]`` is the
    weighted scale past which edges at p are dropped.
    """

    epsilon: float
    insertion_radii: np.ndarray
    deletion_scale: np.ndarray
    greedy_order: np.ndarray


def greedy_permutation(dist: np.ndarray, start: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """Farthest-first traversal.  Returns (order, insertion radii per point)."""
    n = dist.shape[0]
    order = np.empty(n, dtype=np.int64)
    lam = np.empty(n)
    order[0] = start
    lam[start] = np.inf
    nearest = dist[start].copy()
    for i in range(1, n):
        nxt = int(np.argmax(nearest))
        order[i] = nxt
        lam[nxt] = nearest[nxt]
        np.minimum(nearest, dist[nxt], out=nearest)
    return order, lam


def sparse_dtm_rips(
    cloud: WeightedPointCloud,
    epsilon: float,
    budget: int = DEFAULT_SIMPLEX_BUDGET,
) -> Tuple[Filtration, SparseParams]:
    """Sparse weighted Rips filtration.

    Points get a deletion scale T_p combining the farthest-first insertion
    radius with the point's weight: T_p = sqrt(w_p^2 + (lam_p (1+eps)/eps)^2).
    An edge is kept iff its weighted value is at most min(T_p, T_q); triangles
    follow their edges.  At zero weights this reduces to the standard
    metric-only rule lam_p (1+eps)/eps.
    """
    if not 0 < epsilon < 1:
        raise ParameterError(f"epsilon must be in (0,1), got {epsilon}")
    w = cloud.require_weights()
    n = cloud.n
    d = cloud._dist
    order, lam = greedy_permutation(d)
    scale = lam * (1.0 + epsilon) / epsilon
    with np.errstate(over="ignore"):
        deletion = np.sqrt(w * w + scale * scale)
    ev = _edge_value_matrix(d, w)
    keep = ev <= np.minimum.outer(deletion, deletion)
    iu, ju = np.nonzero(np.triu(keep, k=1))
    edges = np.column_stack([iu, ju])
    edge_vals = ev[iu, ju]
    ev_kept = np.where(keep, ev, np.inf)
    tris, tri_vals = _triangles_from_adjacency(keep, ev_kept)
    filtration = _assemble(n, edges, edge_vals, tris, tri_vals, w, budget)
    params = SparseParams(
        epsilon=epsilon,
        insertion_radii=lam,
        deletion_scale=deletion,
        greedy_order=order,
    )
    return filtration, params


VertexFunction = Union[Dict[int, float], Callable[[int], float], Sequence[float]]


def _as_vertex_function(f: VertexFunction) -> Callable[[int], float]:
    if callable(f):
        return f
    if isinstance(f, dict):
        return lambda v: f[v]
    arr = np.asarray(f, dtype=float)
    return lambda v: float(arr[v])


def lower_star_filtration(
    complex_simplices: Iterable[Simplex], f: VertexFunction
) -> Filtration:
    """Filtration induced by a vertex function: each simplex enters at the
    value of its maximal vertex, in the order of the vertex sweep.

    Ties between vertex values are broken by vertex index, which makes the
    sweep order well defined even for non-injective f.
    """
    fn = _as_vertex_function(f)
    simplices = [canonicalize(s) for s in complex_simplices]
    present = set(simplices)
    if len(present) != len(simplices):
        raise IncompleteComplexError("repeated simplex in complex")
    for s in simplices:
        for face in facets(s):
            if face not in present:
                raise IncompleteComplexError(f"face {face} of {s} missing")

    def max_vertex(s: Simplex) -> int:
        return max(s, key=lambda v: (fn(v), v))

    keyed = []
    for s in simplices:
        mv = max_vertex(s)
        keyed.append(((fn(mv), mv, len(s), s), s, fn(mv)))
    keyed.sort(key=lambda t: t[0])
    return Filtration([s for _, s, _ in keyed], [r for _, _, r in keyed], validate=True)
