"""Z2 persistence of simplex-wise filtrations by boundary-matrix reduction.

Two reduction routes with identical output pairings:

* ``plain``: the textbook left-to-right column reduction on all columns;
* ``fast`` (default): union-find over the edge sequence for the dimension-0
  pairing plus column reduction of triangle columns only, which is the
  twist/clearing shortcut specialized to 2-skeletons.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Optional, Tuple

from .complexes import Filtration, PersistenceRecord, Simplex, dim, facets


class Diagram:
    """Pairing status of every simplex of a filtration, in filtration order."""

    def __init__(self, records: Iterable[PersistenceRecord]):
        self.records: List[PersistenceRecord] = list(records)
        self._by_simplex = {r.simplex: r for r in self.records}

    def __len__(self) -> int:
        return len(self.records)

    def record_for(self, simplex: Simplex) -> PersistenceRecord:
        return self._by_simplex[simplex]

    def features(self, d: int) -> List[PersistenceRecord]:
        """Creator records of feature dimension d (one per persistence point)."""
        return [
            r for r in self.records if r.role == "positive" and dim(r.simplex) == d
        ]

    def to_csv(self) -> str:
        """Rows ``dim,birth_rho,death_rho`` (with ``inf``), ordered by (dim, birth index)."""
        lines = ["dim,birth_rho,death_rho"]
        feats = [
            (dim(r.simplex), i, r)
            for i, r in enumerate(self.records)
            if r.role == "positive"
        ]
        feats.sort(key=lambda t: (t[0], t[1]))
        for d, _, r in feats:
            death = "inf" if math.isinf(r.death_rho) else f"{r.death_rho:.17g}"
            lines.append(f"{d},{r.birth_rho:.17g},{death}")
        return "\n".join(lines)


def _xor_merge(a: List[int], b: List[int]) -> List[int]:
    """Symmetric difference of two sorted index lists."""
    out: List[int] = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif x > y:
            out.append(y)
            j += 1
        else:
            i += 1
            j += 1
    if i < na:
        out.extend(a[i:])
    if j < nb:
        out.extend(b[j:])
    return out


def boundary_columns(filtration: Filtration) -> List[List[int]]:
    """Sparse boundary matrix: per column the sorted facet indices."""
    index = filtration._index
    return [sorted(index[f] for f in facets(s)) for s in filtration.simplices]


def _reduce_plain(filtration: Filtration) -> Dict[int, int]:
    """Textbook reduction; returns creator index -> destroyer index."""
    cols = boundary_columns(filtration)
    reduced: Dict[int, List[int]] = {}
    pivot_owner: Dict[int, int] = {}
    pairs: Dict[int, int] = {}
    for j, col in enumerate(cols):
        while col:
            low = col[-1]
            k = pivot_owner.get(low)
            if k is None:
                break
            col = _xor_merge(col, reduced[k])
        if col:
            low = col[-1]
            pivot_owner[low] = j
            reduced[j] = col
            pairs[low] = j
    return pairs


def _reduce_fast(filtration: Filtration) -> Dict[int, int]:
    """Union-find for the vertex/edge pairing, column algebra for triangles.

    Cleared by construction: edge columns paired as creators by a triangle
    are never reduced, and vertex columns are empty.
    """
    simplices = filtration.simplices
    index = filtration._index
    pairs: Dict[int, int] = {}

    # dimension 2 first: reduce triangle columns over edge indices
    pivot_owner: Dict[int, int] = {}
    reduced: Dict[int, List[int]] = {}
    for j, s in enumerate(simplices):
        if len(s) != 3:
            continue
        col = sorted(index[f] for f in facets(s))
        while col:
            low = col[-1]
            k = pivot_owner.get(low)
            if k is None:
                break
            col = _xor_merge(col, reduced[k])
        if col:
            low = col[-1]
            pivot_owner[low] = j
            reduced[j] = col
            pairs[low] = j

    # dimension 1: elder-rule union-find over the edge sequence
    root_of: Dict[int, int] = {}  # vertex -> current root vertex

    def find(v: int) -> int:
        r = v
        while root_of[r] != r:
            r = root_of[r]
        while root_of[v] != r:
            root_of[v], v = r, root_of[v]
        return r

    birth: Dict[int, int] = {}  # root vertex -> its filtration index
    for j, s in enumerate(simplices):
        if len(s) == 1:
            root_of[s[0]] = s[0]
            birth[s[0]] = j
        elif len(s) == 2:
            ra, rb = find(s[0]), find(s[1])
            if ra == rb:
                continue  # positive edge; paired (or not) by a triangle above
            # the younger component dies
            if birth[ra] < birth[rb]:
                ra, rb = rb, ra
            pairs[birth[ra]] = j
            root_of[ra] = rb
    return pairs


def reduce(filtration: Filtration, method: str = "fast") -> Diagram:
    """Compute the persistence pairing of a filtration.

    ``method`` is "fast" (default) or "plain"; both give identical pairings.
    """
    if method == "plain":
        pairs = _reduce_plain(filtration)
    elif method == "fast":
        pairs = _reduce_fast(filtration)
    else:
        raise ValueError(f"unknown reduction method {method!r}")

    simplices = filtration.simplices
    rho = filtration.rho
    destroyer_of: Dict[int, int] = {d: b for b, d in pairs.items()}
    records = []
    for i, s in enumerate(simplices):
        if i in pairs:
            j = pairs[i]
            records.append(
                PersistenceRecord(
                    simplex=s,
                    role="positive",
                    partner=simplices[j],
                    birth_rho=float(rho[i]),
                    death_rho=float(rho[j]),
                )
            )
        elif i in destroyer_of:
            b = destroyer_of[i]
            records.append(
                PersistenceRecord(
                    simplex=s,
                    role="negative",
                    partner=simplices[b],
                    birth_rho=float(rho[b]),
                    death_rho=float(rho[i]),
                )
            )
        else:
            records.append(
                PersistenceRecord(
                    simplex=s,
                    role="positive",
                    partner=None,
                    birth_rho=float(rho[i]),
                    death_rho=math.inf,
                )
            )
    return Diagram(records)


def edge_classification(diagram: Diagram) -> Dict[Simplex, Tuple[str, float]]:
    """Map each edge to its sign and persistence.

    Destroyer of a vertex -> negative; creator (paired with a triangle or
    unpaired) -> positive, with infinite persistence when unpaired.
    """
    out: Dict[Simplex, Tuple[str, float]] = {}
    for r in diagram.records:
        if dim(r.simplex) != 1:
            continue
        sign = "positive" if r.role == "positive" else "negative"
        out[r.simplex] = (sign, r.persistence)
    return out


def betti(diagram: Diagram) -> Tuple[int, int]:
    """(beta_0, beta_1) of the final complex: counts of unpaired vertices/edges."""
    b0 = b1 = 0
    for r in diagram.records:
        if r.partner is None:
            if dim(r.simplex) == 0:
                b0 += 1
            elif dim(r.simplex) == 1:
                b1 += 1
    return b0, b1
