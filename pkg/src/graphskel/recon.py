"""Graph reconstruction from a persistence pairing.

The skeleton is assembled from every edge whose persistence exceeds the
threshold, plus the tree paths connecting its endpoints to the roots of the
forest formed by low-persistence negative edges.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .builders import (
    WeightedPointCloud,
    dtm_weights,
    knn,
    lower_star_filtration,
    rips_2skeleton,
    sparse_dtm_rips,
    DEFAULT_SIMPLEX_BUDGET,
)
from .complexes import Filtration, Simplex, dim
from .errors import GraphSkelError, ParameterError, UndefinedDistanceError
from .persistence import Diagram, edge_classification, reduce

TAG_CRITICAL_POSITIVE = "critical_positive"
TAG_CRITICAL_NEGATIVE = "critical_negative"
TAG_TREE_PATH = "tree_path"


@dataclass
class NegativeForest:
    """Forest of negative edges with persistence <= delta, rooted per tree.

    The root of each tree is its earliest vertex in filtration order
    (argmin of (rho, order index)); parent pointers are oriented toward it.
    Every vertex of the complex appears, singleton trees included.
    """

    parent: Dict[int, Optional[int]]
    parent_edge: Dict[int, Simplex]
    tree_id: Dict[int, int]
    root: Dict[int, int]  # tree id -> root vertex
    member_edges: Set[Simplex]

    def root_of(self, v: int) -> int:
        return self.root[self.tree_id[v]]


def build_forest(filtration: Filtration, diagram: Diagram, delta: float) -> NegativeForest:
    """Collect negative edges with persistence <= delta into a rooted forest."""
    if delta < 0:
        raise ParameterError(f"delta must be >= 0, got {delta}")
    vertices = [s[0] for s in filtration.simplices if len(s) == 1]
    member = {
        e
        for e, (sign, pers) in edge_classification(diagram).items()
        if sign == "negative" and pers <= delta
    }

    # union-find purely as a cycle guard; roots are assigned below
    uf = {v: v for v in vertices}

    def find(v: int) -> int:
        while uf[v] != v:
            uf[v] = uf[uf[v]]
            v = uf[v]
        return v

    adjacency: Dict[int, List[Tuple[int, Simplex]]] = {v: [] for v in vertices}
    for e in member:
        u, v = e
        ru, rv = find(u), find(v)
        if ru == rv:
            raise GraphSkelError(
                f"negative edges below delta contain a cycle at {e}; "
                "persistence pairing is inconsistent"
            )
        uf[ru] = rv
        adjacency[u].append((v, e))
        adjacency[v].append((u, e))

    # earliest vertex of each component, by (rho, order index)
    key = {v: (filtration.rho_of((v,)), filtration.index_of((v,))) for v in vertices}
    best: Dict[int, int] = {}
    for v in vertices:
        r = find(v)
        if r not in best or key[v] < key[best[r]]:
            best[r] = v

    parent: Dict[int, Optional[int]] = {}
    parent_edge: Dict[int, Simplex] = {}
    tree_id: Dict[int, int] = {}
    root: Dict[int, int] = {}
    for tid, (_, root_vertex) in enumerate(sorted(best.items())):
        root[tid] = root_vertex
        stack = [root_vertex]
        parent[root_vertex] = None
        tree_id[root_vertex] = tid
        while stack:
            v = stack.pop()
            for u, e in adjacency[v]:
                if u in tree_id:
                    continue
                tree_id[u] = tid
                parent[u] = v
                parent_edge[u] = e
                stack.append(u)
    return NegativeForest(
        parent=parent,
        parent_edge=parent_edge,
        tree_id=tree_id,
        root=root,
        member_edges=member,
    )


def tree_path(forest: NegativeForest, v: int) -> List[Simplex]:
    """Edges of the unique path from v to the root of its tree."""
    path = []
    while forest.parent[v] is not None:
        path.append(forest.parent_edge[v])
        v = forest.parent[v]
    return path


class SkeletonGraph:
    """Reconstructed skeleton: vertices with optional coordinates, tagged edges."""

    def __init__(self) -> None:
        self.vertices: Dict[int, Optional[Tuple[float, ...]]] = {}
        self.edges: Dict[Tuple[int, int], Dict] = {}

    def add_vertex(self, v: int, coords: Optional[Sequence[float]] = None) -> None:
        if coords is not None:
            self.vertices[v] = tuple(float(c) for c in coords)
        elif v not in self.vertices:
            self.vertices[v] = None

    def add_edge(self, e: Simplex, tag: str, pers: float) -> None:
        key = (e[0], e[1])
        info = self.edges.get(key)
        if info is None:
            self.edges[key] = {"tags": {tag}, "pers": pers}
        else:
            info["tags"].add(tag)
            info["pers"] = max(info["pers"], pers)

    @property
    def edge_set(self) -> Set[Tuple[int, int]]:
        return set(self.edges)

    def __len__(self) -> int:
        return len(self.vertices)

    def components(self) -> int:
        uf = {v: v for v in self.vertices}

        def find(v):
            while uf[v] != v:
                uf[v] = uf[uf[v]]
                v = uf[v]
            return v

        for u, v in self.edges:
            uf[find(u)] = find(v)
        return len({find(v) for v in self.vertices})

    def beta0(self) -> int:
        return self.components()

    def beta1(self) -> int:
        if not self.vertices:
            return 0
        return len(self.edges) - len(self.vertices) + self.components()

    def coords_array(self) -> np.ndarray:
        pts = [c for c in self.vertices.values() if c is not None]
        if len(pts) != len(self.vertices):
            raise UndefinedDistanceError("graph has vertices without coordinates")
        return np.asarray(pts, dtype=float)

    def to_json(self) -> str:
        nodes = []
        for v in sorted(self.vertices):
            node: Dict = {"id": v}
            if self.vertices[v] is not None:
                node["coords"] = list(self.vertices[v])
            nodes.append(node)
        edges = []
        for (u, v) in sorted(self.edges):
            info = self.edges[(u, v)]
            pers = info["pers"]
            edges.append(
                {
                    "u": u,
                    "v": v,
                    "tag": "+".join(sorted(info["tags"])),
                    "pers": "inf" if math.isinf(pers) else pers,
                }
            )
        return json.dumps({"nodes": nodes, "edges": edges}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "SkeletonGraph":
        data = json.loads(text)
        g = cls()
        for node in data["nodes"]:
            g.add_vertex(int(node["id"]), node.get("coords"))
        for e in data["edges"]:
            pers = math.inf if e["pers"] == "inf" else float(e["pers"])
            for tag in e["tag"].split("+"):
                g.add_edge((int(e["u"]), int(e["v"])), tag, pers)
        return g

    def to_edge_list(self) -> str:
        return "\n".join(f"{u} {v}" for u, v in sorted(self.edges))


def reconstruct(
    filtration: Filtration,
    diagram: Diagram,
    delta: float,
    coords: Optional[np.ndarray] = None,
) -> SkeletonGraph:
    """Assemble the output graph for threshold delta.

    Every edge with persistence > delta (positive or negative, infinite
    persistence included) enters with its class tag, together with the tree
    paths from its endpoints to their roots in the low-persistence forest.
    """
    forest = build_forest(filtration, diagram, delta)
    classification = edge_classification(diagram)
    graph = SkeletonGraph()

    def include(v: int) -> None:
        graph.add_vertex(v, None if coords is None else coords[v])

    for e in filtration.simplices:
        if len(e) != 2:
            continue
        sign, pers = classification[e]
        if pers <= delta:
            continue
        tag = TAG_CRITICAL_POSITIVE if sign == "positive" else TAG_CRITICAL_NEGATIVE
        include(e[0])
        include(e[1])
        graph.add_edge(e, tag, pers)
        for endpoint in e:
            for pe in tree_path(forest, endpoint):
                include(pe[0])
                include(pe[1])
                graph.add_edge(pe, TAG_TREE_PATH, pers)
    return graph


def skeletonize(
    points: np.ndarray,
    k: int,
    epsilon: float,
    delta: float,
    metric: str = "l2",
    budget: int = DEFAULT_SIMPLEX_BUDGET,
) -> Tuple[SkeletonGraph, Diagram]:
    """Full point-cloud pipeline: weights -> sparse weighted Rips -> pairing -> graph."""
    if metric == "precomputed":
        cloud = WeightedPointCloud(None, metric="precomputed", distance_matrix=points)
        coords = None
    else:
        cloud = WeightedPointCloud(np.asarray(points, dtype=float), metric=metric)
        coords = cloud.points
    dtm_weights(cloud, k)
    filtration, _ = sparse_dtm_rips(cloud, epsilon, budget=budget)
    diagram = reduce(filtration)
    graph = reconstruct(filtration, diagram, delta, coords=coords)
    return graph, diagram


def gaussian_knn_density(cloud: WeightedPointCloud, k: int, bandwidth: float) -> np.ndarray:
    """Density estimate: sum of Gaussian kernel values over the k nearest neighbors."""
    if bandwidth <= 0:
        raise ParameterError(f"bandwidth must be positive, got {bandwidth}")
    out = np.empty(cloud.n)
    for p in range(cloud.n):
        dists = np.array([d for _, d in knn(cloud, p, k)])
        out[p] = np.sum(np.exp(-(dists**2) / (2.0 * bandwidth**2)))
    return out


def mean_knn_distance(cloud: WeightedPointCloud, k: int) -> float:
    d = np.sort(cloud.distance_matrix(), axis=1)[:, 1 : k + 1]
    return float(np.mean(d))


def skeletonize_baseline(
    points: np.ndarray,
    r: float,
    k: int,
    delta: float,
    bandwidth: Optional[float] = None,
    metric: str = "l2",
    budget: int = DEFAULT_SIMPLEX_BUDGET,
) -> Tuple[SkeletonGraph, Diagram]:
    """Fixed-radius baseline: Rips 2-skeleton + lower-star of negated density.

    ``bandwidth`` defaults to the mean k-nearest-neighbor distance.
    """
    if metric == "precomputed":
        cloud = WeightedPointCloud(None, metric="precomputed", distance_matrix=points)
        coords = None
    else:
        cloud = WeightedPointCloud(np.asarray(points, dtype=float), metric=metric)
        coords = cloud.points
    if bandwidth is None:
        bandwidth = mean_knn_distance(cloud, k)
    density = gaussian_knn_density(cloud, k, bandwidth)
    skeleton_complex = rips_2skeleton(cloud, r, budget=budget)
    filtration = lower_star_filtration(skeleton_complex.simplices, -density)
    diagram = reduce(filtration)
    graph = reconstruct(filtration, diagram, delta, coords=coords)
    return graph, diagram


def graph_distance(g1: SkeletonGraph, g2: SkeletonGraph, diameter: float) -> float:
    """Symmetrized mean nearest-node distance between two graphs, over diameter."""
    if diameter <= 0:
        raise ParameterError(f"diameter must be positive, got {diameter}")
    if not g1.vertices or not g2.vertices:
        raise UndefinedDistanceError("graph distance undefined for empty graphs")
    from scipy.spatial.distance import cdist

    a = g1.coords_array()
    b = g2.coords_array()
    d = cdist(a, b)
    forward = float(np.mean(np.min(d, axis=1)))
    backward = float(np.mean(np.min(d, axis=0)))
    return 0.5 * (forward + backward) / diameter
