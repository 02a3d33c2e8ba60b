import math

import numpy as np
import pytest

from graphskel.complexes import build_filtration
from graphskel.oracle import homology_ranks_bruteforce, random_small_filtration
from graphskel.persistence import Diagram, betti, edge_classification, reduce


def triangle_filtration():
    return build_filtration([
        ((0,), 0.0), ((1,), 0.1), ((2,), 0.2),
        ((0, 1), 0.3), ((1, 2), 0.4), ((0, 2), 0.5),
        ((0, 1, 2), 0.6),
    ])


def test_triangle_pairing():
    dgm = reduce(triangle_filtration())
    # one essential vertex, everything else paired
    assert betti(dgm) == (1, 0)
    r = dgm.record_for((0, 2))
    assert r.role == "positive" and r.partner == (0, 1, 2)
    assert r.persistence == pytest.approx(0.1)
    # elder rule: vertex 1 dies at edge (0,1), vertex 2 at edge (1,2)
    assert dgm.record_for((1,)).partner == (0, 1)
    assert dgm.record_for((2,)).partner == (1, 2)
    assert dgm.record_for((0,)).partner is None


def test_open_triangle_has_loop():
    f = build_filtration([
        ((0,), 0.0), ((1,), 0.0), ((2,), 0.0),
        ((0, 1), 1.0), ((1, 2), 1.0), ((0, 2), 2.0),
    ])
    dgm = reduce(f)
    assert betti(dgm) == (1, 1)
    assert math.isinf(dgm.record_for((0, 2)).death_rho)


def test_plain_equals_fast_on_random_instances():
    rng = np.random.default_rng(11)
    for _ in range(60):
        f = random_small_filtration(rng)
        pa = {(r.simplex, r.partner) for r in reduce(f, method="plain").records}
        pb = {(r.simplex, r.partner) for r in reduce(f, method="fast").records}
        assert pa == pb


def test_prefix_betti_matches_bruteforce():
    rng = np.random.default_rng(5)
    for _ in range(20):
        f = random_small_filtration(rng, max_vertices=7, max_edges=10)
        dgm = reduce(f)
        n = len(f)
        for prefix_len in range(1, n + 1):
            want = homology_ranks_bruteforce(f.prefix(prefix_len))
            # count features alive at step prefix_len from the pairing
            b0 = b1 = 0
            for i, r in enumerate(dgm.records):
                if r.role != "positive" or i >= prefix_len:
                    continue
                death = (
                    f.index_of(r.partner) if r.partner is not None else math.inf
                )
                if death >= prefix_len:
                    if len(r.simplex) == 1:
                        b0 += 1
                    elif len(r.simplex) == 2:
                        b1 += 1
            assert (b0, b1) == want


def test_edge_classification_signs():
    dgm = reduce(triangle_filtration())
    cls = edge_classification(dgm)
    assert cls[(0, 1)][0] == "negative"
    assert cls[(1, 2)][0] == "negative"
    assert cls[(0, 2)][0] == "positive"


def test_csv_roundtrip_format():
    dgm = reduce(triangle_filtration())
    lines = dgm.to_csv().splitlines()
    assert lines[0] == "dim,birth_rho,death_rho"
    assert any(line.endswith(",inf") for line in lines[1:])
    dims = [int(line.split(",")[0]) for line in lines[1:]]
    assert dims == sorted(dims)


def test_unknown_method():
    with pytest.raises(ValueError):
        reduce(triangle_filtration(), method="banana")
