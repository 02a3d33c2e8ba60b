"""Simplices, simplex-wise filtrations and persistence records.

A simplex is a strictly increasing tuple of vertex indices of length 1..3
(vertices, edges, triangles).  A filtration is a total order on simplices in
which every face precedes its cofaces and the per-simplex value ``rho`` is
non-decreasing.  Everything downstream (persistence, reconstruction, the
brute-force oracle) consumes these two objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import IncompleteComplexError, InvalidSimplexError, NonMonotoneError

Simplex = Tuple[int, ...]


def canonicalize(vertices: Iterable[int]) -> Simplex:
    """Sort a vertex list into canonical simplex form.

    Raises InvalidSimplexError on duplicates, empty input, or dimension > 2.
    """
    vs = tuple(sorted(int(v) for v in vertices))
    if not 1 <= len(vs) <= 3:
        raise InvalidSimplexError(f"simplex must have 1..3 vertices, got {len(vs)}")
    if len(set(vs)) != len(vs):
        raise InvalidSimplexError(f"duplicate vertices in {vs}")
    if vs[0] < 0:
        raise InvalidSimplexError(f"negative vertex index in {vs}")
    return vs


def dim(simplex: Simplex) -> int:
    return len(simplex) - 1


def facets(simplex: Simplex) -> List[Simplex]:
    """Codimension-1 faces, in lexicographic order.  A vertex has none."""
    if len(simplex) == 1:
        return []
    return [simplex[:i] + simplex[i + 1 :] for i in range(len(simplex))]


@dataclass(frozen=True)
class PersistenceRecord:
    """Pairing status of one simplex in a filtration.

    ``role`` is "positive" for creators (including unpaired simplices) and
    "negative" for destroyers.  ``partner`` is None iff unpaired, in which
    case ``death_rho`` is +inf.
    """

    simplex: Simplex
    role: str
    partner: Optional[Simplex]
    birth_rho: float
    death_rho: float

    @property
    def persistence(self) -> float:
        return self.death_rho - self.birth_rho

    @property
    def dimension(self) -> int:
        """Dimension of the feature: dim of the creator simplex."""
        d = dim(self.simplex)
        return d if self.role == "positive" else d - 1


class Filtration:
    """An ordered sequence of simplices with monotone values.

    Immutable after construction; safe to share across threads.
    """

    __slots__ = ("simplices", "rho", "_index")

    def __init__(
        self,
        simplices: Sequence[Simplex],
        rho: Sequence[float],
        validate: bool = True,
    ):
        self.simplices: List[Simplex] = list(simplices)
        self.rho = np.asarray(rho, dtype=float)
        if len(self.simplices) != len(self.rho):
            raise ValueError("simplices and rho lengths differ")
        self._index: Dict[Simplex, int] = {s: i for i, s in enumerate(self.simplices)}
        if validate:
            self._validate()

    def _validate(self) -> None:
        if len(self._index) != len(self.simplices):
            raise InvalidSimplexError("repeated simplex in filtration")
        if np.any(np.diff(self.rho) < 0):
            raise NonMonotoneError("rho decreases along the filtration order")
        index = self._index
        for i, s in enumerate(self.simplices):
            for f in facets(s):
                j = index.get(f)
                if j is None:
                    raise IncompleteComplexError(f"face {f} of {s} missing")
                if j >= i:
                    raise IncompleteComplexError(f"face {f} does not precede {s}")

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, simplex: Simplex) -> bool:
        return simplex in self._index

    def index_of(self, simplex: Simplex) -> int:
        """0-based position of a simplex in the order."""
        return self._index[simplex]

    def rho_of(self, simplex: Simplex) -> float:
        return float(self.rho[self._index[simplex]])

    @property
    def order_index(self) -> Dict[Simplex, int]:
        """1-based order bijection simplex -> [1..N]."""
        return {s: i + 1 for i, s in enumerate(self.simplices)}

    def simplices_of_dim(self, d: int) -> List[Simplex]:
        return [s for s in self.simplices if len(s) == d + 1]

    def prefix(self, n: int) -> List[Simplex]:
        """The first n simplices (the complex K_n)."""
        return self.simplices[:n]

    def dump(self) -> str:
        """Debug dump, one line per simplex: ``index dim v0[,v1[,v2]] rho``."""
        lines = []
        for i, s in enumerate(self.simplices):
            verts = ",".join(str(v) for v in s)
            lines.append(f"{i + 1} {len(s) - 1} {verts} {self.rho[i]:.17g}")
        return "\n".join(lines)


def _order_key(item: Tuple[Simplex, float]):
    s, value = item
    return (value, len(s), s)


def build_filtration(valued_simplices: Iterable[Tuple[Simplex, float]]) -> Filtration:
    """Order (simplex, rho) pairs into a valid simplex-wise filtration.

    Ties in rho are broken by (dimension, lexicographic vertex tuple), which
    makes the order deterministic and face-consistent.  Raises
    IncompleteComplexError for missing faces and NonMonotoneError when a face
    carries a larger value than a coface.
    """
    items = sorted(valued_simplices, key=_order_key)
    values = {s: v for s, v in items}
    if len(values) != len(items):
        raise InvalidSimplexError("repeated simplex in input")
    for s, v in items:
        for f in facets(s):
            fv = values.get(f)
            if fv is None:
                raise IncompleteComplexError(f"face {f} of {s} missing")
            if fv > v:
                raise NonMonotoneError(f"face {f} (rho={fv}) later than {s} (rho={v})")
    return Filtration([s for s, _ in items], [v for _, v in items], validate=False)


def filtration_from_arrays(
    verts: np.ndarray, rho: np.ndarray, validate: bool = True
) -> Filtration:
    """Fast array-based constructor used by the bulk filtration builders.

    ``verts`` is (N, 3) int with -1 padding for missing vertices; ordering
    semantics are identical to :func:`build_filtration` (rho, dim, lex).
    """
    verts = np.asarray(verts)
    rho = np.asarray(rho, dtype=float)
    dims = np.sum(verts >= 0, axis=1) - 1
    # lexsort keys: last key is primary
    order = np.lexsort((verts[:, 2], verts[:, 1], verts[:, 0], dims, rho))
    verts = verts[order]
    rho = rho[order]
    simplices: List[Simplex] = []
    for row in verts:
        if row[1] < 0:
            simplices.append((int(row[0]),))
        elif row[2] < 0:
            simplices.append((int(row[0]), int(row[1])))
        else:
            simplices.append((int(row[0]), int(row[1]), int(row[2])))
    return Filtration(simplices, rho, validate=validate)


def is_face_closed(simplices: Iterable[Simplex]) -> bool:
    """True when the simplex set is closed under taking faces."""
    present = set(simplices)
    return all(f in present for s in present for f in facets(s))


INF = math.inf
