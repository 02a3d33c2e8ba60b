import math

import numpy as np
import pytest

from graphskel.complexes import build_filtration
from graphskel.errors import GraphSkelError, OracleScaleError
from graphskel.oracle import (
    CycleSet,
    check_theorem,
    homology_ranks_bruteforce,
    lex_compare,
    lex_optimal_cycle,
    persistent_cycles,
    random_small_filtration,
    run_theorem_suite,
)
from graphskel.persistence import reduce
from graphskel.recon import reconstruct


def test_bruteforce_ranks_known_complexes():
    # single triangle boundary: one component, one loop
    assert homology_ranks_bruteforce([(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)]) == (1, 1)
    # filled triangle: loop dies
    assert homology_ranks_bruteforce(
        [(0,), (1,), (2,), (0, 1), (1, 2), (0, 2), (0, 1, 2)]
    ) == (1, 0)
    # two isolated vertices
    assert homology_ranks_bruteforce([(0,), (5,)]) == (2, 0)


def test_cycleset_validates_even_degree():
    CycleSet(frozenset({(0, 1), (1, 2), (0, 2)}))
    with pytest.raises(GraphSkelError):
        CycleSet(frozenset({(0, 1), (1, 2)}))


def two_loops():
    # square 0-1-2-3 with a chord 0-2 splitting it into two triangles (unfilled)
    return build_filtration([
        ((0,), 0.0), ((1,), 0.0), ((2,), 0.0), ((3,), 0.0),
        ((0, 1), 1.0), ((1, 2), 2.0), ((2, 3), 3.0), ((0, 3), 4.0),
        ((0, 2), 5.0),
    ])


def test_lex_compare_uses_latest_edge():
    f = two_loops()
    c_outer = CycleSet(frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))
    c_left = CycleSet(frozenset({(0, 1), (1, 2), (0, 2)}))
    # symmetric difference contains (0,2), the latest edge; outer lacks it
    assert lex_compare(c_outer, c_left, f) == "less"
    assert lex_compare(c_left, c_outer, f) == "greater"
    assert lex_compare(c_outer, c_outer, f) == "equal"


def test_persistent_cycles_of_essential_edges():
    f = two_loops()
    dgm = reduce(f)
    # (0,3) creates the outer square loop; (0,2) creates a second class
    rec = dgm.record_for((0, 3))
    assert rec.role == "positive" and rec.partner is None
    cycles = persistent_cycles(f, rec)
    assert CycleSet(frozenset({(0, 1), (1, 2), (2, 3), (0, 3)})) in [
        CycleSet(c.edges) for c in cycles
    ]
    best = lex_optimal_cycle(f, rec)
    assert best.edges == frozenset({(0, 1), (1, 2), (2, 3), (0, 3)})


def test_lex_optimal_avoids_late_edges_when_possible():
    # pentagon with a late shortcut: the optimal representative of the loop
    # born at the shortcut must contain the shortcut itself but otherwise
    # prefers early edges
    f = build_filtration([
        ((0,), 0.0), ((1,), 0.0), ((2,), 0.0),
        ((0, 1), 1.0), ((1, 2), 2.0), ((0, 2), 3.0),
        ((0, 1, 2), 4.0),
    ])
    dgm = reduce(f)
    rec = dgm.record_for((0, 2))
    best = lex_optimal_cycle(f, rec)
    assert best.edges == frozenset({(0, 1), (1, 2), (0, 2)})


def test_check_theorem_detects_bad_graph():
    f = two_loops()
    dgm = reduce(f)
    good = reconstruct(f, dgm, delta=0.0)
    assert check_theorem(f, 0.0, good, dgm).passed
    # drop an edge: beta1 and containment both break
    bad = reconstruct(f, dgm, delta=0.0)
    del bad.edges[(0, 1)]
    report = check_theorem(f, 0.0, bad, dgm)
    assert not report.passed
    assert report.failures


def test_oracle_scale_guard():
    rng = np.random.default_rng(0)
    f = random_small_filtration(rng)
    dgm = reduce(f)
    recs = [r for r in dgm.features(1)]
    if recs:
        with pytest.raises(OracleScaleError):
            persistent_cycles(f, recs[0], guard=1)


def test_random_filtrations_are_valid_and_varied():
    rng = np.random.default_rng(42)
    betti1 = set()
    for _ in range(100):
        f = random_small_filtration(rng)
        dgm = reduce(f)
        betti1.add(sum(1 for r in dgm.records if r.partner is None and len(r.simplex) == 2))
    assert max(betti1) >= 2  # instances with real loops occur


def test_suite_smoke():
    reports = run_theorem_suite(25, seed=1)
    assert all(r.passed for r in reports)
