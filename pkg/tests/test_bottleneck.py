import itertools
import math

import numpy as np
import pytest

from graphskel.bottleneck import bottleneck_distance


def brute_bottleneck(a, b):
    """Exact bottleneck by enumerating assignments (tiny diagrams only)."""

    def diag(p):
        return (p[1] - p[0]) / 2.0

    def cost(p, q):
        return max(abs(p[0] - q[0]), abs(p[1] - q[1]))

    best = math.inf
    n, m = len(a), len(b)
    # match a subset of a to a subset of b bijectively; rest to the diagonal
    for k in range(min(n, m) + 1):
        for sa in itertools.combinations(range(n), k):
            for sb in itertools.permutations(range(m), k):
                c = 0.0
                for i, j in zip(sa, sb):
                    c = max(c, cost(a[i], b[j]))
                for i in set(range(n)) - set(sa):
                    c = max(c, diag(a[i]))
                for j in set(range(m)) - set(sb):
                    c = max(c, diag(b[j]))
                best = min(best, c)
    return best


def test_identical_diagrams():
    d = [(0.0, 1.0), (0.5, 2.0)]
    assert bottleneck_distance(d, d) == pytest.approx(0.0, abs=1e-8)


def test_single_point_shift():
    assert bottleneck_distance([(0.0, 2.0)], [(0.5, 2.0)]) == pytest.approx(0.5, abs=1e-7)


def test_point_vs_empty():
    assert bottleneck_distance([(0.0, 2.0)], []) == pytest.approx(1.0, abs=1e-7)
    assert bottleneck_distance([], []) == 0.0


def test_diagonal_shortcut():
    # cheaper to drop both points to the diagonal than to match them
    a = [(0.0, 0.2)]
    b = [(5.0, 5.2)]
    assert bottleneck_distance(a, b) == pytest.approx(0.1, abs=1e-7)


def test_infinite_points():
    a = [(0.0, math.inf), (0.0, 1.0)]
    b = [(0.3, math.inf), (0.0, 1.0)]
    assert bottleneck_distance(a, b) == pytest.approx(0.3, abs=1e-7)
    assert bottleneck_distance([(0.0, math.inf)], []) == math.inf


def test_symmetry():
    rng = np.random.default_rng(3)
    a = [(b_, b_ + p) for b_, p in rng.uniform(0, 1, (6, 2))]
    b = [(b_, b_ + p) for b_, p in rng.uniform(0, 1, (4, 2))]
    assert bottleneck_distance(a, b) == pytest.approx(
        bottleneck_distance(b, a), abs=1e-7
    )


def test_against_bruteforce_random():
    rng = np.random.default_rng(17)
    for _ in range(30):
        na, nb = rng.integers(0, 5, 2)
        a = [(x, x + y) for x, y in rng.uniform(0, 1, (na, 2))]
        b = [(x, x + y) for x, y in rng.uniform(0, 1, (nb, 2))]
        want = brute_bottleneck(a, b)
        got = bottleneck_distance(a, b)
        assert got == pytest.approx(want, abs=1e-6)


def test_large_diagram_runs_fast():
    rng = np.random.default_rng(4)
    base = [(x, x + y) for x, y in rng.uniform(0, 1, (3000, 2))]
    shifted = [(x + 0.01, y + 0.01) for x, y in base]
    d = bottleneck_distance(base, shifted)
    assert d <= 0.01 + 1e-6
