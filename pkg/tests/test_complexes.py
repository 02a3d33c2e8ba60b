import numpy as np
import pytest

from graphskel.complexes import (
    Filtration,
    build_filtration,
    canonicalize,
    dim,
    facets,
    filtration_from_arrays,
    is_face_closed,
)
from graphskel.errors import IncompleteComplexError, InvalidSimplexError, NonMonotoneError


def test_canonicalize_sorts():
    assert canonicalize([3, 1]) == (1, 3)
    assert canonicalize((2, 0, 5)) == (0, 2, 5)
    assert canonicalize([7]) == (7,)


def test_canonicalize_rejects_bad_input():
    with pytest.raises(InvalidSimplexError):
        canonicalize([1, 1])
    with pytest.raises(InvalidSimplexError):
        canonicalize([])
    with pytest.raises(InvalidSimplexError):
        canonicalize([1, 2, 3, 4])


def test_facets():
    assert sorted(facets((0, 1, 2))) == [(0, 1), (0, 2), (1, 2)]
    assert sorted(facets((3, 5))) == [(3,), (5,)]
    assert facets((4,)) == []
    assert dim((0, 1, 2)) == 2


def test_build_filtration_orders_faces_first():
    f = build_filtration([((0, 1), 1.0), ((0,), 0.5), ((1,), 0.2)])
    assert f.simplices == [(1,), (0,), (0, 1)]
    assert f.rho_of((0, 1)) == 1.0
    assert f.index_of((1,)) == 0


def test_build_filtration_tie_break():
    # equal rho: lower dimension first, then lex on vertices
    f = build_filtration([((0, 1), 1.0), ((2,), 1.0), ((0,), 1.0), ((1,), 1.0)])
    assert f.simplices == [(0,), (1,), (2,), (0, 1)]


def test_missing_face_raises():
    with pytest.raises(IncompleteComplexError):
        build_filtration([((0,), 0.0), ((0, 1), 1.0)])


def test_nonmonotone_raises():
    with pytest.raises(NonMonotoneError):
        build_filtration([((0,), 0.0), ((1,), 0.0), ((0, 1), -1.0)])


def test_dump_format():
    f = build_filtration([((0,), 0.0), ((1,), 0.25), ((0, 1), 0.5)])
    lines = f.dump().splitlines()
    assert lines[0] == "1 0 0 0"
    assert lines[2] == "3 1 0,1 0.5"


def test_prefix():
    f = build_filtration([((0,), 0.0), ((1,), 0.1), ((0, 1), 0.2)])
    assert f.prefix(2) == [(0,), (1,)]
    assert len(f) == 3
    assert (0, 1) in f


def test_filtration_from_arrays_matches_build():
    valued = [((0,), 0.0), ((1,), 0.0), ((2,), 0.3), ((0, 1), 0.4), ((1, 2), 0.4),
              ((0, 2), 0.5), ((0, 1, 2), 0.5)]
    f1 = build_filtration(valued)
    verts = np.full((len(valued), 3), -1, dtype=np.int64)
    rho = np.empty(len(valued))
    for i, (s, v) in enumerate(valued):
        verts[i, : len(s)] = s
        rho[i] = v
    f2 = filtration_from_arrays(verts, rho)
    assert f1.simplices == f2.simplices
    assert np.allclose(f1.rho, f2.rho)


def test_is_face_closed():
    assert is_face_closed([(0,), (1,), (0, 1)])
    assert not is_face_closed([(0, 1)])
