"""Bottleneck distance between persistence diagrams.

Feasibility of a candidate threshold is decided by bipartite matching on the
standard points-plus-diagonal construction; the distance itself is found by
bisection.  Points at infinity are matched among themselves by sorted birth.
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow


def _split(points: Sequence[Tuple[float, float]]):
    finite, infinite = [], []
    for b, d in points:
        (infinite if math.isinf(d) else finite).append((float(b), float(d)))
    return np.asarray(finite).reshape(-1, 2), sorted(b for b, _ in infinite)


def _diag_cost(pts: np.ndarray) -> np.ndarray:
    return (pts[:, 1] - pts[:, 0]) / 2.0


def _feasible(t: float, a: np.ndarray, b: np.ndarray, cost: np.ndarray) -> bool:
    """Can every point be matched within distance t (diagonal allowed)?"""
    da, db = _diag_cost(a), _diag_cost(b)
    far_a = np.nonzero(da > t)[0]
    far_b = np.nonzero(db > t)[0]
    if far_a.size == 0 and far_b.size == 0:
        return True
    # keep far points plus any near-diagonal point adjacent to a far one
    keep_b = set(far_b.tolist())
    if far_a.size:
        keep_b.update(np.nonzero((cost[far_a] <= t).any(axis=0))[0].tolist())
    keep_a = set(far_a.tolist())
    if far_b.size:
        keep_a.update(np.nonzero((cost[:, far_b] <= t).any(axis=1))[0].tolist())
    ka = np.fromiter(sorted(keep_a), dtype=np.int64, count=len(keep_a))
    kb = np.fromiter(sorted(keep_b), dtype=np.int64, count=len(keep_b))
    na, nb = len(ka), len(kb)
    # perfect matching on the points-plus-diagonal graph, as max flow;
    # interchangeable diagonal copies are aggregated into two capacity nodes
    src, d_left, d_right, sink = 0, 1 + na + nb, 2 + na + nb, 3 + na + nb
    A = 1 + np.arange(na)
    B = 1 + na + np.arange(nb)
    ii, jj = np.nonzero(cost[np.ix_(ka, kb)] <= t)
    a_diag = np.nonzero(da[ka] <= t)[0]
    b_diag = np.nonzero(db[kb] <= t)[0]
    rows = np.concatenate([
        np.full(na, src), [src],
        A[ii], A[a_diag], np.full(len(b_diag), d_left), [d_left],
        B, [d_right],
    ])
    cols = np.concatenate([
        A, [d_left],
        B[jj], np.full(len(a_diag), d_right), B[b_diag], [d_right],
        np.full(nb, sink), [sink],
    ])
    caps = np.concatenate([
        np.ones(na), [nb],
        np.ones(len(ii)), np.ones(len(a_diag)), np.ones(len(b_diag)), [min(na, nb)],
        np.ones(nb), [na],
    ]).astype(np.int32)
    graph = csr_matrix((caps, (rows, cols)), shape=(sink + 1, sink + 1))
    flow = maximum_flow(graph, src, sink, method="dinic").flow_value
    return flow == na + nb


def bottleneck_distance(
    diagram_a: Sequence[Tuple[float, float]],
    diagram_b: Sequence[Tuple[float, float]],
    tol: float = 1e-9,
) -> float:
    """Bottleneck distance between two (birth, death) multisets.

    Death may be +inf; the two diagrams must then carry the same number of
    infinite points or the distance is +inf.
    """
    a, inf_a = _split(diagram_a)
    b, inf_b = _split(diagram_b)
    if len(inf_a) != len(inf_b):
        return math.inf
    inf_part = max(
        (abs(x - y) for x, y in zip(inf_a, inf_b)), default=0.0
    )
    if a.size == 0 and b.size == 0:
        return inf_part
    if a.size == 0 or b.size == 0:
        pts = b if a.size == 0 else a
        return max(inf_part, float(np.max(_diag_cost(pts))))
    cost = np.maximum(
        np.abs(a[:, 0][:, None] - b[:, 0][None, :]),
        np.abs(a[:, 1][:, None] - b[:, 1][None, :]),
    )
    # matching everything to the diagonal is feasible at the largest diagonal cost
    hi = max(
        float(np.max(_diag_cost(a))),
        float(np.max(_diag_cost(b))),
        0.0,
    )
    lo = 0.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if _feasible(mid, a, b, cost):
            hi = mid
        else:
            lo = mid
    return max(inf_part, hi)
