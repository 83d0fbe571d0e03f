"""Seeded generators: determinism, structure, planarity."""

from fractions import Fraction

import pytest

from atsep.errors import Infeasible
from atsep.fileformat import format_graph
from atsep.gen import (
    GenSpec,
    assign_weights,
    generate,
    grid_graph,
    near_tree_planar,
    random_tree,
)
from atsep.graph import build_graph, is_connected
from atsep.planar import planar_embed

from conftest import star


class TestRandomTree:
    def test_single_vertex(self):
        G = random_tree(1, 0)
        assert G.n == 1 and G.m == 0

    def test_tree_shape(self):
        G = random_tree(5, 3)
        assert G.m == 4
        assert is_connected(G)

    def test_deterministic(self):
        assert format_graph(random_tree(40, 9)) == format_graph(random_tree(40, 9))

    def test_seeds_differ(self):
        assert format_graph(random_tree(40, 1)) != format_graph(random_tree(40, 2))


class TestGridGraph:
    def test_3x3(self):
        G = grid_graph(3, 3)
        assert G.n == 9 and G.m == 12

    def test_1x5_is_path(self):
        G = grid_graph(1, 5)
        assert G.m == 4
        assert max(G.degree(v) for v in range(5)) == 2

    def test_2x2_is_c4(self):
        G = grid_graph(2, 2)
        assert G.n == 4 and G.m == 4
        assert all(G.degree(v) == 2 for v in range(4))


class TestNearTreePlanar:
    def test_small_instance(self):
        G = near_tree_planar(GenSpec(n=8, r=1, seed=7))
        assert G.n == 8 and G.m == 9
        planar_embed(G)

    def test_unicyclic(self):
        G = near_tree_planar(GenSpec(n=200, r=0, seed=1))
        assert G.m == G.n
        planar_embed(G)

    def test_over_maximal_planar_bound(self):
        # simple planar graphs have m <= 3n - 6
        with pytest.raises(Infeasible):
            near_tree_planar(GenSpec(n=20, r=35, seed=0))

    def test_tree_excess_rejected(self):
        with pytest.raises(Infeasible):
            near_tree_planar(GenSpec(n=10, r=-1, seed=0))

    def test_generated_instances_planar_connected(self):
        for (n, r, seed) in [(30, 3, 0), (60, 10, 4), (200, 50, 2)]:
            G = near_tree_planar(GenSpec(n=n, r=r, seed=seed))
            assert G.n == n and G.m == n + r
            assert is_connected(G)
            planar_embed(G)

    def test_deterministic(self):
        a = near_tree_planar(GenSpec(n=50, r=8, seed=11))
        b = near_tree_planar(GenSpec(n=50, r=8, seed=11))
        assert format_graph(a) == format_graph(b)


class TestAssignWeights:
    def test_unit(self):
        G = assign_weights(star(6), ("unit",), 0)
        assert G.total_weight == 6

    def test_uniform_range(self):
        G = assign_weights(star(50), ("uniform", 2, 5), 1)
        assert all(2 <= w <= 5 for w in G.weights)

    def test_single_heavy_majority(self):
        G = assign_weights(star(30), ("single_heavy", Fraction(7, 10)), 3)
        heavy = max(G.weights)
        assert heavy * 10 > 7 * G.total_weight

    def test_deterministic(self):
        a = assign_weights(star(30), ("uniform", 1, 100), 5)
        b = assign_weights(star(30), ("uniform", 1, 100), 5)
        assert a.weights == b.weights


class TestGenSpec:
    def test_tree_dispatch(self):
        G = generate(GenSpec(n=12, r=-1, seed=0))
        assert G.excess == -1

    def test_near_tree_dispatch(self):
        G = generate(GenSpec(n=12, r=2, seed=0))
        assert G.excess == 2

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 0, "r": 0, "seed": 0},
            {"n": 5, "r": -2, "seed": 0},
            {"n": 5, "r": 0, "seed": 0, "weight_mode": ("bogus",)},
            {"n": 5, "r": 0, "seed": 0, "weight_mode": ("single_heavy", Fraction(1, 3))},
        ],
    )
    def test_invalid_specs_rejected(self, kwargs):
        with pytest.raises(Infeasible):
            GenSpec(**kwargs)
