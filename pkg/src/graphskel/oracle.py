"""Brute-force ground truth for small instances.

Homology ranks by dense Z2 elimination, exhaustive enumeration of the
representative cycles attached to a persistence point, lexicographic
comparison of cycles, and a machine check that the reconstructed graph
contains the lex-optimal cycle basis.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .complexes import (
    Filtration,
    PersistenceRecord,
    Simplex,
    build_filtration,
    dim,
    facets,
)
from .errors import GraphSkelError, OracleScaleError, ParameterError
from .persistence import Diagram, reduce
from .recon import SkeletonGraph, reconstruct

SUBSET_GUARD = 2**16


def _gf2_rank(m: np.ndarray) -> int:
    """Rank over Z2 by in-place elimination (m is copied)."""
    a = (np.asarray(m, dtype=np.uint8) & 1).copy()
    rank = 0
    rows, cols = a.shape
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if a[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        hits = np.nonzero(a[:, c])[0]
        hits = hits[hits != rank]
        a[hits] ^= a[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def _gf2_in_span(a: np.ndarray, b: np.ndarray) -> bool:
    """True when b lies in the column span of a over Z2."""
    if a.shape[1] == 0:
        return not np.any(b & 1)
    aug = np.column_stack([a, b])
    return _gf2_rank(a) == _gf2_rank(aug)


def homology_ranks_bruteforce(
    complex_simplices: Sequence[Simplex], limit: int = 25
) -> Tuple[int, int]:
    """(beta_0, beta_1) of a face-closed 2-complex via rank-nullity.

    Independent of any reduction algorithm; guarded at ``limit`` simplices.
    """
    simplices = list(complex_simplices)
    if len(simplices) > limit:
        raise OracleScaleError(f"{len(simplices)} simplices exceeds oracle limit {limit}")
    vertices = sorted(s[0] for s in simplices if len(s) == 1)
    edges = sorted(s for s in simplices if len(s) == 2)
    triangles = sorted(s for s in simplices if len(s) == 3)
    v_idx = {v: i for i, v in enumerate(vertices)}
    e_idx = {e: i for i, e in enumerate(edges)}

    d1 = np.zeros((len(vertices), len(edges)), dtype=np.uint8)
    for j, (u, v) in enumerate(edges):
        d1[v_idx[u], j] = 1
        d1[v_idx[v], j] = 1
    d2 = np.zeros((len(edges), len(triangles)), dtype=np.uint8)
    for j, t in enumerate(triangles):
        for f in facets(t):
            d2[e_idx[f], j] = 1

    r1 = _gf2_rank(d1) if edges else 0
    r2 = _gf2_rank(d2) if triangles else 0
    beta0 = len(vertices) - r1
    beta1 = (len(edges) - r1) - r2
    return beta0, beta1


@dataclass(frozen=True)
class CycleSet:
    """A Z2 1-cycle: a set of edges in which every vertex has even degree."""

    edges: FrozenSet[Simplex]

    def __post_init__(self):
        degree: Dict[int, int] = {}
        for e in self.edges:
            for v in e:
                degree[v] = degree.get(v, 0) + 1
        if any(d % 2 for d in degree.values()):
            raise GraphSkelError("edge set is not a cycle (odd vertex degree)")

    def __contains__(self, e: Simplex) -> bool:
        return e in self.edges

    def __len__(self) -> int:
        return len(self.edges)


def lex_compare(c1: CycleSet, c2: CycleSet, filtration: Filtration) -> str:
    """"less"/"equal"/"greater": the cycle missing the latest edge of the
    symmetric difference is the smaller one."""
    diff = c1.edges ^ c2.edges
    if not diff:
        return "equal"
    latest = max(diff, key=filtration.index_of)
    return "less" if latest in c2.edges else "greater"


def _cycle_space(edges_in_order: List[Simplex], guard: int) -> List[FrozenSet[Simplex]]:
    """All nonzero Z2 cycles over the given edges (via fundamental cycles)."""
    parent: Dict[int, int] = {}
    parent_edge: Dict[int, Simplex] = {}

    def find_root(v: int) -> int:
        while parent.get(v, v) != v:
            v = parent[v]
        return v

    # build a forest and collect fundamental cycles of the non-tree edges
    tree_adj: Dict[int, List[Tuple[int, Simplex]]] = {}
    fundamental: List[FrozenSet[Simplex]] = []

    def tree_path_edges(u: int, v: int) -> Set[Simplex]:
        # BFS in the current forest
        prev: Dict[int, Tuple[int, Simplex]] = {}
        stack = [u]
        seen = {u}
        while stack:
            x = stack.pop()
            if x == v:
                break
            for y, e in tree_adj.get(x, []):
                if y not in seen:
                    seen.add(y)
                    prev[y] = (x, e)
                    stack.append(y)
        path: Set[Simplex] = set()
        x = v
        while x != u:
            px, e = prev[x]
            path.add(e)
            x = px
        return path

    for e in edges_in_order:
        u, v = e
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find_root(u), find_root(v)
        if ru == rv:
            fundamental.append(frozenset({e} | tree_path_edges(u, v)))
        else:
            parent[ru] = rv
            tree_adj.setdefault(u, []).append((v, e))
            tree_adj.setdefault(v, []).append((u, e))

    if 2 ** len(fundamental) > guard:
        raise OracleScaleError(
            f"cycle space has 2^{len(fundamental)} elements, guard is {guard}"
        )
    cycles: List[FrozenSet[Simplex]] = []
    for mask in range(1, 2 ** len(fundamental)):
        acc: FrozenSet[Simplex] = frozenset()
        for i, fc in enumerate(fundamental):
            if mask >> i & 1:
                acc = acc ^ fc
        if acc:
            cycles.append(acc)
    return cycles


def _is_boundary_in_prefix(
    filtration: Filtration, cycle: FrozenSet[Simplex], prefix_len: int
) -> bool:
    """Is the cycle a Z2 boundary of the triangles among the first prefix_len simplices?"""
    edges = [
        s for s in filtration.simplices[:prefix_len] if len(s) == 2
    ]
    triangles = [s for s in filtration.simplices[:prefix_len] if len(s) == 3]
    e_idx = {e: i for i, e in enumerate(edges)}
    a = np.zeros((len(edges), len(triangles)), dtype=np.uint8)
    for j, t in enumerate(triangles):
        for f in facets(t):
            a[e_idx[f], j] = 1
    b = np.zeros(len(edges), dtype=np.uint8)
    for e in cycle:
        b[e_idx[e]] = 1
    return _gf2_in_span(a, b)


def persistent_cycles(
    filtration: Filtration,
    point: PersistenceRecord,
    guard: int = SUBSET_GUARD,
) -> List[CycleSet]:
    """All representative cycles of a 1-dimensional persistence point.

    A candidate lives in the birth prefix, contains the creator edge and, for
    a finite point, is not yet a boundary just before death but becomes one
    at death.
    """
    if point.role != "positive" or dim(point.simplex) != 1:
        raise ParameterError("expected a 1-dimensional creator record")
    b = filtration.index_of(point.simplex)
    edges_b = [s for s in filtration.simplices[: b + 1] if len(s) == 2]
    candidates = [
        c for c in _cycle_space(edges_b, guard) if point.simplex in c
    ]
    if point.partner is None:
        return [CycleSet(c) for c in candidates]
    d = filtration.index_of(point.partner)
    out = []
    for c in candidates:
        if _is_boundary_in_prefix(filtration, c, d):
            continue
        if _is_boundary_in_prefix(filtration, c, d + 1):
            out.append(CycleSet(c))
    return out


def lex_optimal_cycle(
    filtration: Filtration,
    point: PersistenceRecord,
    guard: int = SUBSET_GUARD,
) -> CycleSet:
    """The lexicographically smallest representative cycle of a persistence point."""
    candidates = persistent_cycles(filtration, point, guard)
    if not candidates:
        raise GraphSkelError(
            f"no persistent cycle for record of {point.simplex}; "
            "pairing is inconsistent"
        )
    best = candidates[0]
    for c in candidates[1:]:
        if lex_compare(c, best, filtration) == "less":
            best = c
    return best


@dataclass
class TheoremReport:
    """Result of checking the reconstruction guarantee on one instance."""

    passed: bool
    expected_beta1: int
    actual_beta1: int
    basis: List[Tuple[PersistenceRecord, CycleSet]]
    failures: List[str] = field(default_factory=list)

    def format(self) -> str:
        lines = [
            f"beta1: expected {self.expected_beta1}, got {self.actual_beta1}",
            f"basis size: {len(self.basis)}",
        ]
        for rec, cyc in self.basis:
            edges = " ".join(str(e) for e in sorted(cyc.edges))
            lines.append(f"  record {rec.simplex} pers={rec.persistence:g}: {edges}")
        for fail in self.failures:
            lines.append(f"FAIL: {fail}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def check_theorem(
    filtration: Filtration,
    delta: float,
    graph: SkeletonGraph,
    diagram: Optional[Diagram] = None,
    guard: int = SUBSET_GUARD,
) -> TheoremReport:
    """Verify the reconstruction guarantee against the brute-force oracle.

    (i) for every 1-dimensional point with persistence > delta the lex-optimal
    cycle is contained in the graph; (ii) beta_1 of the graph equals the
    number of such points.
    """
    if diagram is None:
        diagram = reduce(filtration)
    high = [r for r in diagram.features(1) if r.persistence > delta]
    failures: List[str] = []
    basis: List[Tuple[PersistenceRecord, CycleSet]] = []
    graph_edges = graph.edge_set
    for rec in high:
        cyc = lex_optimal_cycle(filtration, rec, guard)
        basis.append((rec, cyc))
        missing = [e for e in sorted(cyc.edges) if (e[0], e[1]) not in graph_edges]
        if missing:
            failures.append(
                f"lex-optimal cycle of {rec.simplex} not contained: missing {missing}"
            )
    actual = graph.beta1()
    if actual != len(high):
        failures.append(f"beta1 mismatch: graph {actual}, diagram {len(high)}")
    return TheoremReport(
        passed=not failures,
        expected_beta1=len(high),
        actual_beta1=actual,
        basis=basis,
        failures=failures,
    )


def random_small_filtration(
    rng: np.random.Generator,
    max_vertices: int = 10,
    max_edges: int = 14,
    triangle_prob: float = 0.6,
    tie_prob: float = 0.3,
) -> Filtration:
    """A random valued 2-complex on few points, for fuzzing and oracle suites."""
    n = int(rng.integers(3, max_vertices + 1))
    vertex_vals = rng.uniform(0.0, 1.0, n)
    all_pairs = list(itertools.combinations(range(n), 2))
    m = int(rng.integers(0, min(max_edges, len(all_pairs)) + 1))
    chosen = rng.choice(len(all_pairs), size=m, replace=False)
    valued: List[Tuple[Simplex, float]] = [((v,), float(vertex_vals[v])) for v in range(n)]
    edge_vals: Dict[Simplex, float] = {}
    for idx in chosen:
        e = all_pairs[idx]
        base = max(vertex_vals[e[0]], vertex_vals[e[1]])
        bump = 0.0 if rng.random() < tie_prob else float(rng.uniform(0.0, 0.5))
        edge_vals[e] = base + bump
        valued.append((e, edge_vals[e]))
    for tri in itertools.combinations(range(n), 3):
        es = [tri[:2], tri[::2], tri[1:]]
        if all(e in edge_vals for e in es) and rng.random() < triangle_prob:
            base = max(edge_vals[e] for e in es)
            bump = 0.0 if rng.random() < tie_prob else float(rng.uniform(0.0, 0.3))
            valued.append((tri, base + bump))
    return build_filtration(valued)


def run_theorem_suite(
    n_instances: int,
    seed: int = 0,
    max_vertices: int = 10,
    max_edges: int = 14,
    verbose: bool = False,
) -> List[TheoremReport]:
    """Randomized suite: random filtrations, random thresholds, full check."""
    rng = np.random.default_rng(seed)
    reports = []
    for i in range(n_instances):
        filtration = random_small_filtration(rng, max_vertices, max_edges)
        diagram = reduce(filtration)
        finite = [
            r.persistence
            for r in diagram.records
            if r.role == "positive" and not math.isinf(r.persistence)
        ]
        top = max(finite) if finite else 1.0
        delta = float(rng.uniform(0.0, 1.2 * top)) if rng.random() < 0.8 else 0.0
        graph = reconstruct(filtration, diagram, delta)
        report = check_theorem(filtration, delta, graph, diagram)
        reports.append(report)
        if verbose:
            status = "pass" if report.passed else "FAIL"
            print(f"instance {i}: delta={delta:.4f} {status}")
    return reports
