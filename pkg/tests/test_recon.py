import numpy as np
import pytest

from graphskel.complexes import build_filtration
from graphskel.datagen import GeneratorConfig, gen_circle
from graphskel.errors import ParameterError, UndefinedDistanceError
from graphskel.persistence import reduce
from graphskel.recon import (
    SkeletonGraph,
    build_forest,
    graph_distance,
    reconstruct,
    skeletonize,
    skeletonize_baseline,
    tree_path,
)


def open_triangle():
    return build_filtration([
        ((0,), 0.0), ((1,), 0.1), ((2,), 0.2),
        ((0, 1), 0.3), ((1, 2), 0.35), ((0, 2), 0.4),
    ])


def test_forest_roots_and_paths():
    f = open_triangle()
    dgm = reduce(f)
    forest = build_forest(f, dgm, delta=1.0)
    # both negative edges absorbed; root is the earliest vertex
    assert forest.root_of(2) == 0
    assert forest.member_edges == {(0, 1), (1, 2)}
    path = tree_path(forest, 2)
    assert path == [(1, 2), (0, 1)]
    assert tree_path(forest, 0) == []


def test_forest_delta_zero():
    f = open_triangle()
    dgm = reduce(f)
    forest = build_forest(f, dgm, delta=0.0)
    assert forest.member_edges == set()
    assert forest.root_of(2) == 2


def test_forest_negative_delta():
    f = open_triangle()
    with pytest.raises(ParameterError):
        build_forest(f, reduce(f), delta=-0.1)


def test_reconstruct_loop_with_tree_paths():
    f = open_triangle()
    dgm = reduce(f)
    g = reconstruct(f, dgm, delta=1.0)
    # the essential edge (0,2) plus tree paths closes the loop
    assert g.edge_set == {(0, 1), (1, 2), (0, 2)}
    assert g.beta1() == 1
    assert g.edges[(0, 2)]["tags"] == {"critical_positive"}
    assert "tree_path" in g.edges[(0, 1)]["tags"]


def test_reconstruct_large_delta_keeps_only_infinite():
    f = open_triangle()
    dgm = reduce(f)
    g = reconstruct(f, dgm, delta=100.0)
    # finite pairs all below delta; only the essential loop edge survives
    assert (0, 2) in g.edge_set
    assert g.beta1() == 1


def test_json_roundtrip():
    f = open_triangle()
    g = reconstruct(f, reduce(f), delta=1.0, coords=np.array([[0.0, 0], [1, 0], [0, 1]]))
    g2 = SkeletonGraph.from_json(g.to_json())
    assert g2.edge_set == g.edge_set
    assert g2.vertices == g.vertices
    for k in g.edges:
        assert g2.edges[k]["tags"] == g.edges[k]["tags"]
        assert g2.edges[k]["pers"] == pytest.approx(g.edges[k]["pers"])
    assert graph_distance(g, g2, diameter=1.0) == 0.0


def test_graph_distance_requires_coords():
    f = open_triangle()
    g = reconstruct(f, reduce(f), delta=1.0)
    with pytest.raises(UndefinedDistanceError):
        g.coords_array()


def test_edge_list_output():
    f = open_triangle()
    g = reconstruct(f, reduce(f), delta=1.0)
    lines = g.to_edge_list().splitlines()
    assert lines == ["0 1", "0 2", "1 2"]


def test_skeletonize_circle_recovers_loop():
    pts = gen_circle(GeneratorConfig(seed=3, n_points=150, noise_sigma=0.04))
    g, dgm = skeletonize(pts, k=10, epsilon=0.99, delta=0.3)
    assert g.beta0() == 1
    assert g.beta1() == 1
    # reconstructed vertices sit near the unit circle
    radii = np.linalg.norm(g.coords_array(), axis=1)
    assert np.all(np.abs(radii - 1.0) < 0.25)


def test_skeletonize_deterministic():
    pts = gen_circle(GeneratorConfig(seed=3, n_points=120))
    g1, d1 = skeletonize(pts, k=10, epsilon=0.99, delta=0.3)
    g2, d2 = skeletonize(pts, k=10, epsilon=0.99, delta=0.3)
    assert g1.to_json() == g2.to_json()
    assert d1.to_csv() == d2.to_csv()


def test_baseline_circle():
    pts = gen_circle(GeneratorConfig(seed=3, n_points=120, noise_sigma=0.04))
    g, dgm = skeletonize_baseline(pts, r=0.35, k=10, delta=1.0)
    assert g.beta1() == 1
