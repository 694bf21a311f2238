import unittest

import pytest

import beidepth.classify
from beidepth.classify import (
    GAP_ONE_TAGS,
    ClassTag,
    Pattern,
    check_structural_theorem,
    classify,
    cliques_attached,
    diametral_config,
    fan_tag_variants,
    feasibility,
)
from beidepth.families import Family, FamilySpec, construct, enumerate_connected
from beidepth.graph import (
    complete_graph,
    cycle_graph,
    from_edge_list,
    invariants,
    path_graph,
)

__doctests__ = ["beidepth.classify"]  # for trial support

DIAMOND_PATH = construct(FamilySpec(Family.DIAMOND_PATH, d=4))
EARS_SHARED = construct(FamilySpec(Family.EARS_SHARED_VERTEX, f=3))
EARS_APART = construct(FamilySpec(Family.EARS_DISJOINT, f=2))
CAPPED_CLIQUE = construct(FamilySpec(Family.CLIQUE_CAPS, f=2, kappa=3))
DIAMOND = from_edge_list(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
THREE_TRIANGLES = from_edge_list(
    5, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (1, 5), (2, 5)]
)
# vertex 6 sees three consecutive vertices of the path 1..5
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
# K4 on 2, 3, 5, 6 between ends 1 and 4, with a triangle hung on the diagonal 2-6
TWIN_PATHS_DIAGONAL_EAR = from_edge_list(
    7,
    [(2, 3), (2, 5), (2, 6), (3, 5), (3, 6), (5, 6), (1, 2), (1, 5), (3, 4), (4, 6), (2, 7), (6, 7)],
)


def _reversed(graph):
    n = graph.n
    return from_edge_list(n, [(n + 1 - i, n + 1 - j) for i, j in graph.edges()])


class FeasibilityTest(unittest.TestCase):
    def test_values(self):
        self.assertTrue(feasibility(6, 2, 3, 2))
        self.assertTrue(feasibility(6, 1, 4, 2))
        self.assertTrue(feasibility(6, 3, 2, 2))
        self.assertFalse(feasibility(5, 3, 1, 2))
        self.assertFalse(feasibility(6, 2, 1, 4))
        self.assertFalse(feasibility(7, 3, 1, 4))

    def test_kappa1_with_small_f_and_d(self):
        self.assertFalse(feasibility(5, 1, 1, 4))

    def test_errors(self):
        with pytest.raises(ValueError, match="differs"):
            feasibility(6, 3, 1, 2)
        with pytest.raises(ValueError, match="n = 5"):
            feasibility(4, 2, 2, 1)


class DiametralConfigTest(unittest.TestCase):
    def test_fan(self):
        config = diametral_config(FAN)
        self.assertEqual((config.u, config.v), (1, 5))
        self.assertEqual(config.path, (1, 2, 3, 4, 5))
        self.assertEqual(config.off_path_internal, 6)
        self.assertEqual((config.j, config.pattern), (1, Pattern.FAN))

    def test_square(self):
        config = diametral_config(SQUARE_ON_PATH)
        self.assertEqual((config.j, config.pattern), (1, Pattern.SQUARE))
        self.assertEqual(config.path_neighbors(SQUARE_ON_PATH), (1, 3))

    def test_fan_at_the_start_of_the_path(self):
        config = diametral_config(DIAMOND_PATH)
        self.assertEqual((config.j, config.pattern), (0, Pattern.FAN))

    def test_twin_paths(self):
        config = diametral_config(EARS_APART)
        self.assertEqual((config.u, config.v), (5, 6))
        self.assertEqual(config.pattern, Pattern.TWIN_PATHS)
        self.assertEqual(config.twin_edges, ((1, 2), (2, 4), (1, 3), (3, 4)))
        self.assertEqual(config.as_dict()["pattern"], "twin-paths")

    def test_complete(self):
        with pytest.raises(ValueError, match="complete"):
            diametral_config(complete_graph(4))


class CliquesAttachedTest(unittest.TestCase):
    def test_attached(self):
        internal = {1, 2, 3, 4}
        self.assertTrue(cliques_attached(EARS_APART, internal, {1, 2}))
        self.assertFalse(cliques_attached(EARS_APART, internal, {1, 3}))
        ear = frozenset({1, 2, 5})
        self.assertFalse(cliques_attached(EARS_APART, internal, {1, 2}, mandatory=[ear]))
        self.assertTrue(cliques_attached(THREE_TRIANGLES, {1, 2}, {1, 2}))

    def test_attachment_outside_base(self):
        with pytest.raises(ValueError, match="inside the base"):
            cliques_attached(EARS_APART, {1, 2}, {1, 5})


class ClassifyTest(unittest.TestCase):
    def assertTag(self, graph, tag):
        self.assertEqual(classify(graph).tag, tag)

    def test_gap_zero(self):
        self.assertTag(path_graph(5), ClassTag.GAP_ZERO_CUT_VERTEX)
        self.assertTag(DIAMOND, ClassTag.GAP_ZERO_CONNECTED)
        self.assertTag(THREE_TRIANGLES, ClassTag.GAP_ZERO_CONNECTED)

    def test_kappa1(self):
        self.assertTag(FAN, ClassTag.KAPPA1_CHORDAL_FAN)
        self.assertTag(DIAMOND_PATH, ClassTag.KAPPA1_CHORDAL_FAN)
        ctp = construct(FamilySpec(Family.CLIQUE_TRIANGLE_PATH, f=3, d=2))
        self.assertTag(ctp, ClassTag.KAPPA1_CHORDAL)
        self.assertTag(SQUARE_ON_PATH, ClassTag.KAPPA1_SQUARE_NO_CUT)
        self.assertTag(SQUARE_WITH_CUT, ClassTag.KAPPA1_SQUARE_CUT)

    def test_fan_certificate(self):
        detail = classify(FAN).detail
        self.assertEqual(detail["config"]["j"], 1)
        self.assertFalse(detail["off_path_is_cut"])
        self.assertFalse(detail["middle_is_cut"])

    def test_connectivity_two_and_more(self):
        self.assertTag(EARS_SHARED, ClassTag.DIAMETER_TWO)
        self.assertTag(CAPPED_CLIQUE, ClassTag.DIAMETER_TWO)
        self.assertTag(EARS_APART, ClassTag.KAPPA2_TWIN_PATHS_BARE)
        self.assertEqual(classify(EARS_APART).detail["attached_cross_edges"], [])

    def test_clique_on_twin_paths_diagonal(self):
        bundle = invariants(TWIN_PATHS_DIAGONAL_EAR)
        self.assertEqual((bundle.n, bundle.d, bundle.f, bundle.kappa, bundle.gap), (7, 3, 3, 2, 1))
        label = classify(TWIN_PATHS_DIAGONAL_EAR)
        self.assertEqual(label.tag, ClassTag.KAPPA2_CHORDAL)
        self.assertEqual(label.detail["config"]["pattern"], "twin-paths")
        self.assertEqual(label.detail["attached_cross_edges"], [[2, 6]])

    def test_larger_gap(self):
        self.assertTag(SPIDER, ClassTag.GENERALIZED_BLOCK)
        self.assertEqual(classify(SPIDER).detail, {"block": "block"})
        label = classify(TRIANGLE_FAN)
        self.assertEqual(label.tag, ClassTag.CLIQUE_CHAIN_OVERLAP)
        self.assertEqual(label.detail, {"r": [3, 3, 3, 3], "q": [2, 2, 2]})
        self.assertTag(cycle_graph(4), ClassTag.UNCLASSIFIED)

    def test_reversed_labels(self):
        for graph in (FAN, SQUARE_ON_PATH, EARS_SHARED, CAPPED_CLIQUE, path_graph(5)):
            self.assertEqual(classify(_reversed(graph)).tag, classify(graph).tag)

    def test_errors(self):
        with pytest.raises(ValueError, match="complete"):
            classify(complete_graph(3))
        with pytest.raises(ValueError, match="not connected"):
            classify(from_edge_list(4, [(1, 2), (3, 4)]))

    def test_structural_theorem_input(self):
        self.assertTrue(check_structural_theorem(SQUARE_ON_PATH))
        with pytest.raises(ValueError, match="gap-one"):
            check_structural_theorem(path_graph(5))


def _feasible_tuples(n):
    return {
        (kappa, n + 1 - kappa - d, d)
        for kappa in range(1, n - 1)
        for d in range(2, n)
        if n + 1 - kappa - d >= 0 and feasibility(n, kappa, n + 1 - kappa - d, d)
    }


def _gap_one_properties(n):
    realised = set()
    for graph in enumerate_connected(n):
        bundle = invariants(graph)
        if bundle.complete or bundle.gap != 1:
            continue
        realised.add((bundle.kappa, bundle.f, bundle.d))
        assert feasibility(n, bundle.kappa, bundle.f, bundle.d)
        assert check_structural_theorem(graph)
        label = classify(graph)
        assert label.tag in GAP_ONE_TAGS
        if bundle.kappa == 1 and bundle.chordal:
            variants = fan_tag_variants(graph)
            assert not variants or label.tag in variants
    assert realised == _feasible_tuples(n)


@pytest.mark.parametrize("n", [5, 6])
def test_gap_one_properties(n):
    _gap_one_properties(n)


@pytest.mark.slow
def test_gap_one_properties_seven():
    _gap_one_properties(7)


def test_square_tags_need_the_square_configuration(monkeypatch):
    config = diametral_config(SQUARE_ON_PATH)
    monkeypatch.setattr(
        beidepth.classify,
        "diametral_config",
        lambda graph: config._replace(pattern=Pattern.NONE),
    )
    label = classify(SQUARE_ON_PATH)
    assert label.tag is ClassTag.UNCLASSIFIED
    assert label.detail["config"]["pattern"] == "none"
