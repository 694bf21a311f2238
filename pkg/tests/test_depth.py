import unittest

import pytest

from beidepth.depth import (
    EXACT_RULES,
    Rule,
    clique_chain_lower_bound,
    depth_bounds,
    generalized_block_depth,
    predict_depth,
)
from beidepth.families import Family, FamilySpec, construct, enumerate_connected
from beidepth.graph import (
    complete_graph,
    cycle_graph,
    from_edge_list,
    invariants,
    path_graph,
    star_graph,
)
from beidepth.oracle import depth_exact

__doctests__ = ["beidepth.depth"]  # for trial support

EARS_SHARED = construct(FamilySpec(Family.EARS_SHARED_VERTEX, f=3))
EARS_APART = construct(FamilySpec(Family.EARS_DISJOINT, f=2))
CAPPED_CLIQUE = construct(FamilySpec(Family.CLIQUE_CAPS, f=2, kappa=3))
DIAMOND_PATH = construct(FamilySpec(Family.DIAMOND_PATH, d=4))
K4_CHAIN = construct(FamilySpec(Family.CLIQUE_CHAIN, r=(4, 4, 4), q=(2, 2), shared=(1,)))
PAW = from_edge_list(4, [(1, 2), (1, 3), (2, 3), (3, 4)])
DIAMOND = from_edge_list(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
THREE_TRIANGLES = from_edge_list(
    5, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (1, 5), (2, 5)]
)
SQUARE_WITH_PENDANT = from_edge_list(5, [(1, 2), (2, 3), (3, 4), (4, 1), (4, 5)])
FAN = from_edge_list(6, [(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (3, 6), (4, 6)])
SQUARE_ON_PATH = from_edge_list(6, [(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (4, 6)])
SQUARE_WITH_CUT = from_edge_list(
    7, [(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (4, 6), (6, 7)]
)
SPIDER = from_edge_list(
    9, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7), (1, 8), (8, 9)]
)
TRIANGLE_FAN = from_edge_list(
    6, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (2, 5), (4, 5), (2, 6), (5, 6)]
)
TWIN_PATHS_DIAGONAL_EAR = from_edge_list(
    7,
    [(2, 3), (2, 5), (2, 6), (3, 5), (3, 6), (5, 6), (1, 2), (1, 5), (3, 4), (4, 6), (2, 7), (6, 7)],
)


class DepthBoundsTest(unittest.TestCase):
    def test_generic(self):
        self.assertEqual(depth_bounds(cycle_graph(4)), (2, 4))
        self.assertEqual(depth_bounds(EARS_SHARED), (5, 6))
        self.assertEqual(depth_bounds(path_graph(5)), (6, 6))

    def test_unicyclic(self):
        self.assertEqual(depth_bounds(SQUARE_WITH_PENDANT), (5, 6))
        self.assertEqual(depth_bounds(SQUARE_WITH_CUT), (7, 8))
        # cycles keep the general bounds
        self.assertEqual(depth_bounds(cycle_graph(5)), (2, 5))

    def test_errors(self):
        with pytest.raises(ValueError, match="complete"):
            depth_bounds(complete_graph(4))
        with pytest.raises(ValueError, match="not connected"):
            depth_bounds(from_edge_list(4, [(1, 2), (3, 4)]))


class GeneralizedBlockDepthTest(unittest.TestCase):
    def test_values(self):
        self.assertEqual(generalized_block_depth(star_graph(4)), (5, True))
        self.assertEqual(generalized_block_depth(path_graph(5)), (6, True))
        self.assertEqual(generalized_block_depth(THREE_TRIANGLES), (5, True))
        self.assertEqual(generalized_block_depth(EARS_APART), (5, True))
        self.assertEqual(generalized_block_depth(SPIDER), (10, False))

    def test_not_a_block_graph(self):
        with pytest.raises(ValueError, match="generalized block"):
            generalized_block_depth(cycle_graph(4))
        with pytest.raises(ValueError, match="generalized block"):
            generalized_block_depth(TRIANGLE_FAN)


class CliqueChainBoundTest(unittest.TestCase):
    def test_overlapping_chain(self):
        self.assertEqual(clique_chain_lower_bound(K4_CHAIN), 8)
        self.assertEqual(clique_chain_lower_bound(TRIANGLE_FAN), 5)

    def test_no_bound(self):
        self.assertIsNone(clique_chain_lower_bound(path_graph(5)))
        self.assertIsNone(clique_chain_lower_bound(EARS_APART))
        self.assertIsNone(clique_chain_lower_bound(cycle_graph(4)))


class PredictDepthTest(unittest.TestCase):
    def assertExact(self, graph, depth, rule):
        result = predict_depth(graph)
        self.assertEqual((result.exact, result.rule), (depth, rule))
        self.assertTrue(result.lower <= depth <= result.upper)

    def test_gap_zero(self):
        self.assertExact(path_graph(4), 5, Rule.GAP_ZERO)
        self.assertExact(star_graph(4), 5, Rule.GAP_ZERO)
        self.assertExact(PAW, 5, Rule.GAP_ZERO)
        self.assertExact(DIAMOND, 4, Rule.GAP_ZERO)
        self.assertExact(THREE_TRIANGLES, 5, Rule.GAP_ZERO)
        result = predict_depth(path_graph(5))
        self.assertEqual((result.lower, result.upper, result.exact), (6, 6, 6))

    def test_connectivity_one(self):
        self.assertExact(FAN, 6, Rule.KAPPA1_CHORDAL_FAN)
        self.assertExact(DIAMOND_PATH, 6, Rule.KAPPA1_CHORDAL_FAN)
        ctp = construct(FamilySpec(Family.CLIQUE_TRIANGLE_PATH, f=3, d=2))
        self.assertExact(ctp, 6, Rule.KAPPA1_CHORDAL)
        self.assertExact(SQUARE_ON_PATH, 6, Rule.KAPPA1_SQUARE_NO_CUT)
        self.assertExact(SQUARE_WITH_CUT, 8, Rule.KAPPA1_SQUARE_CUT)

    def test_fan_agrees_with_decomposition(self):
        certificate = predict_depth(FAN).certificate
        self.assertEqual(certificate["decomposition"]["vertex"], 2)
        self.assertIn("decomposition", certificate["agreeing_rules"])

    def test_higher_connectivity(self):
        self.assertExact(EARS_SHARED, 6, Rule.DIAMETER_TWO)
        self.assertExact(CAPPED_CLIQUE, 5, Rule.DIAMETER_TWO)
        self.assertExact(K4_CHAIN, 8, Rule.DIAMETER_TWO)
        self.assertExact(EARS_APART, 5, Rule.KAPPA2_TWIN_PATHS_BARE)
        agreeing = predict_depth(EARS_APART).certificate["agreeing_rules"]
        self.assertEqual(agreeing, ["kappa2-twin-paths-bare", "generalized-block"])
        # a clique on a diagonal of the inner K4 also rules out the bare value n - 1
        self.assertExact(TWIN_PATHS_DIAGONAL_EAR, 7, Rule.KAPPA2_CHORDAL)

    def test_generalized_block(self):
        self.assertExact(SPIDER, 10, Rule.GENERALIZED_BLOCK)
        self.assertEqual(predict_depth(SPIDER).certificate["a"], {"1": 5})

    def test_bounds_only(self):
        result = predict_depth(cycle_graph(4))
        self.assertEqual((result.lower, result.upper, result.exact), (2, 4, None))
        self.assertEqual(result.rule, Rule.GENERIC)
        result = predict_depth(SQUARE_WITH_PENDANT)
        self.assertEqual((result.lower, result.upper, result.exact), (5, 6, None))
        self.assertEqual(result.rule, Rule.UNICYCLIC_BOUNDS)
        result = predict_depth(TRIANGLE_FAN)
        self.assertEqual((result.lower, result.upper, result.exact), (5, 6, None))
        self.assertEqual(result.rule, Rule.CLIQUE_CHAIN_LOWER_BOUND)

    def test_as_dict(self):
        data = predict_depth(DIAMOND).as_dict()
        self.assertEqual(data["rule"], "gap-zero")
        self.assertEqual(data["certificate"]["class"], "gap-zero-connected")

    def test_complete(self):
        with pytest.raises(ValueError, match="complete"):
            predict_depth(complete_graph(3))


@pytest.mark.slow
def test_diagonal_ear_matches_the_oracle():
    assert depth_exact(TWIN_PATHS_DIAGONAL_EAR).depth == 7


def _prediction_properties(n):
    for graph in enumerate_connected(n):
        bundle = invariants(graph)
        if bundle.complete:
            continue
        result = predict_depth(graph)
        assert bundle.d + bundle.f <= result.lower <= result.upper <= bundle.n + 2 - bundle.kappa
        if result.exact is not None:
            assert result.rule in EXACT_RULES
            assert result.lower <= result.exact <= result.upper
        if bundle.gap == 0:
            assert result.exact == bundle.d + bundle.f
        if bundle.gap == 1:
            assert result.exact is not None


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_prediction_properties(n):
    _prediction_properties(n)


@pytest.mark.slow
def test_prediction_properties_seven():
    _prediction_properties(7)
