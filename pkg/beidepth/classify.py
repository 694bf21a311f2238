"""
Recognition of the configurations that decide the depth of graphs one step
away from the lower bound (``gap == 1``), plus the feasibility table of
``(kappa, f, d)`` for such graphs.

The local configurations are read off a diametral pair ``u, v`` and a
shortest path ``P: u = u_0, u_1, ..., u_d = v``:

* *fan*: the one internal vertex ``v'`` off ``P`` is adjacent to exactly
  three consecutive path vertices ``u_j, u_{j+1}, u_{j+2}``;
* *square*: ``v'`` is adjacent to exactly ``u_j`` and ``u_{j+2}``, closing an
  induced 4-cycle;
* *twin paths*: for connectivity 2 and diameter 3, the four internal
  vertices ``u_1, u_2, v_1, v_2`` of two disjoint ``u``-``v`` paths induce a
  complete graph.
"""

from __future__ import annotations

import enum
import logging
from typing import TYPE_CHECKING, Any, NamedTuple

import networkx as nx

from beidepth.graph import (
    Graph,
    InvariantBundle,
    distance_matrix,
    induced_cycle_scan,
    invariants,
    is_complete,
    is_cutset,
    maximal_cliques,
    require_connected,
    simplicial_partition,
)
from beidepth.structure import BlockKind, block_profile, chain_of_cliques

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

    from beidepth._types import Edge, VertexSet

logger = logging.getLogger(__name__)


class Pattern(str, enum.Enum):
    NONE = "none"
    FAN = "fan"
    SQUARE = "square"
    TWIN_PATHS = "twin-paths"


class ClassTag(str, enum.Enum):
    GAP_ZERO_CUT_VERTEX = "gap-zero-cut-vertex"
    GAP_ZERO_CONNECTED = "gap-zero-connected"
    KAPPA1_CHORDAL = "kappa1-chordal"
    KAPPA1_CHORDAL_FAN = "kappa1-chordal-fan"
    KAPPA1_SQUARE_CUT = "kappa1-square-cut"
    KAPPA1_SQUARE_NO_CUT = "kappa1-square-no-cut"
    DIAMETER_TWO = "diameter-two"
    KAPPA2_TWIN_PATHS_BARE = "kappa2-twin-paths-bare"
    KAPPA2_CHORDAL = "kappa2-chordal"
    KAPPA2_NONCHORDAL = "kappa2-nonchordal"
    GENERALIZED_BLOCK = "generalized-block"
    CLIQUE_CHAIN_OVERLAP = "clique-chain-overlap"
    UNCLASSIFIED = "unclassified"


GAP_ONE_TAGS = frozenset(
    {
        ClassTag.KAPPA1_CHORDAL,
        ClassTag.KAPPA1_CHORDAL_FAN,
        ClassTag.KAPPA1_SQUARE_CUT,
        ClassTag.KAPPA1_SQUARE_NO_CUT,
        ClassTag.DIAMETER_TWO,
        ClassTag.KAPPA2_TWIN_PATHS_BARE,
        ClassTag.KAPPA2_CHORDAL,
        ClassTag.KAPPA2_NONCHORDAL,
    }
)


class DiametralConfig(NamedTuple):
    u: int
    v: int

    #: Shortest, hence induced, path ``u = u_0, ..., u_d = v``.
    path: tuple[int, ...]

    #: The single internal vertex off the path, if there is exactly one.
    off_path_internal: int | None = None

    #: Smallest ``l`` in ``0..d`` with ``u_l`` adjacent to ``off_path_internal``.
    j: int | None = None

    pattern: Pattern = Pattern.NONE

    #: For twin paths: ``(u_1, v_1), (v_1, v_2), (u_1, u_2), (v_2, u_2)``.
    twin_edges: tuple[Edge, ...] | None = None

    def path_neighbors(self, graph: Graph) -> tuple[int, ...]:
        """Indices ``l`` of the path vertices adjacent to ``off_path_internal``."""
        if self.off_path_internal is None:
            return ()
        near = graph.neighbors(self.off_path_internal)
        return tuple(index for index, w in enumerate(self.path) if w in near)

    def as_dict(self) -> dict[str, Any]:
        return {
            "u": self.u,
            "v": self.v,
            "path": list(self.path),
            "off_path_internal": self.off_path_internal,
            "j": self.j,
            "pattern": self.pattern.value,
            "twin_edges": (
                None if self.twin_edges is None else [list(e) for e in self.twin_edges]
            ),
        }


class ClassLabel(NamedTuple):
    tag: ClassTag

    #: Certificate: configuration, cut witnesses, clique witnesses, notes.
    detail: Mapping[str, Any]


def feasibility(n: int, kappa: int, f: int, d: int) -> bool:
    """Whether a connected graph with these invariants can have ``gap == 1``.

    The inputs must satisfy ``d + f + 1 == n + 2 - kappa``.

    >>> from beidepth.classify import feasibility
    >>> feasibility(6, 2, 3, 2)
    True
    >>> feasibility(5, 3, 1, 2)
    False
    """
    if n < 5:
        raise ValueError("the gap-one feasibility table starts at n = 5")
    if d + f + 1 != n + 2 - kappa:
        raise ValueError(f"d + f + 1 = {d + f + 1} differs from n + 2 - kappa = {n + 2 - kappa}")
    if f < 2 or d < 2:
        return False
    if kappa == 1:
        # f = d = 2 would force n = 4
        return not (f == 2 and d == 2)
    if kappa == 2:
        return d in (2, 3)
    return d == 2


def _lex_shortest_path(
    graph: Graph, distances: Mapping[int, Mapping[int, int]], u: int, v: int
) -> tuple[int, ...]:
    path = [u]
    while path[-1] != v:
        here = path[-1]
        path.append(
            min(w for w in graph.neighbors(here) if distances[w][v] == distances[here][v] - 1)
        )
    return tuple(path)


def _diametral_pairs(
    graph: Graph, distances: Mapping[int, Mapping[int, int]], d: int
) -> list[tuple[int, int]]:
    return [
        (u, v)
        for u in graph.vertices
        for v in graph.vertices
        if u < v and distances[u][v] == d
    ]


def _twin_edges(
    graph: Graph, internal: VertexSet, path: tuple[int, ...]
) -> tuple[Edge, ...] | None:
    u, v = path[0], path[-1]
    u_side = graph.neighbors(u) & internal
    v_side = graph.neighbors(v) & internal
    if len(internal) != 4 or len(u_side) != 2 or len(v_side) != 2 or u_side & v_side:
        return None
    if not graph.is_clique(internal):
        return None
    u1, u2 = path[1], path[2]
    (v1,) = u_side - {u1}
    (v2,) = v_side - {u2}

    def edge(a: int, b: int) -> Edge:
        return (min(a, b), max(a, b))

    return (edge(u1, v1), edge(v1, v2), edge(u1, u2), edge(v2, u2))


def config_for_path(graph: Graph, path: tuple[int, ...]) -> DiametralConfig:
    """Read the configuration around a given shortest diametral path."""
    u, v = path[0], path[-1]
    partition = simplicial_partition(graph)
    internal = partition.internal
    ends_simplicial = {u, v} <= partition.simplicial
    off_path = sorted(internal - set(path))
    if len(path) == 4 and len(off_path) == 2:
        twin = _twin_edges(graph, internal, path)
        if twin is not None:
            return DiametralConfig(u, v, path, pattern=Pattern.TWIN_PATHS, twin_edges=twin)
    if len(off_path) != 1:
        return DiametralConfig(u, v, path)
    config = DiametralConfig(u, v, path, off_path_internal=off_path[0])
    near = config.path_neighbors(graph)
    if not near:
        return config
    j = near[0]
    if near == (j, j + 1, j + 2) and ends_simplicial:
        pattern = Pattern.FAN
    elif near == (j, j + 2):
        pattern = Pattern.SQUARE
    else:
        pattern = Pattern.NONE
    return config._replace(j=j, pattern=pattern)


def diametral_config(graph: Graph) -> DiametralConfig:
    """Pick a diametral pair and path and read its configuration.

    The pair is the lexicographically smallest one with both ends simplicial,
    or the smallest pair if there is none. The path is the lexicographically
    smallest shortest path between them.
    """
    require_connected(graph)
    if is_complete(graph):
        raise ValueError("complete graphs have no diametral configuration")
    distances = distance_matrix(graph)
    d = max(max(row.values()) for row in distances.values())
    pairs = _diametral_pairs(graph, distances, d)
    simplicial = simplicial_partition(graph).simplicial
    preferred = [p for p in pairs if set(p) <= simplicial] or pairs
    u, v = preferred[0]
    return config_for_path(graph, _lex_shortest_path(graph, distances, u, v))


def cliques_attached(
    graph: Graph,
    base: Iterable[int],
    at: Iterable[int],
    mandatory: Iterable[VertexSet] = (),
) -> bool:
    """Whether some maximal clique outside `mandatory` meets `base` exactly in `at`.

    >>> from beidepth.graph import from_edge_list
    >>> from beidepth.classify import cliques_attached
    >>> book = from_edge_list(5, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (1, 5), (2, 5)])
    >>> cliques_attached(book, {1, 2}, {1, 2})
    True
    """
    base_set, at_set = frozenset(base), frozenset(at)
    if not at_set <= base_set:
        raise ValueError("attachment set must lie inside the base")
    excluded = set(mandatory)
    return any(
        clique & base_set == at_set and clique not in excluded
        for clique in maximal_cliques(graph)
    )


def _cut_witnesses(graph: Graph, config: DiametralConfig) -> dict[str, bool]:
    assert config.off_path_internal is not None and config.j is not None
    middle = config.path[config.j + 1]
    return {
        "off_path_is_cut": is_cutset(graph, {config.off_path_internal}),
        "middle_is_cut": is_cutset(graph, {middle}),
    }


def kappa1_chordal_tag(graph: Graph, config: DiametralConfig) -> tuple[ClassTag, dict[str, Any]]:
    """Fan versus plain for a chordal, connectivity-1, gap-one graph."""
    detail: dict[str, Any] = {"config": config.as_dict()}
    if config.off_path_internal is None:
        detail["note"] = "an endpoint of the diametral path is internal"
        return ClassTag.KAPPA1_CHORDAL, detail
    if config.pattern is not Pattern.FAN:
        return ClassTag.KAPPA1_CHORDAL, detail
    cuts = _cut_witnesses(graph, config)
    detail.update(cuts)
    if any(cuts.values()):
        return ClassTag.KAPPA1_CHORDAL, detail
    return ClassTag.KAPPA1_CHORDAL_FAN, detail


def fan_tag_variants(graph: Graph) -> set[ClassTag]:
    """The fan/plain tag over every simplicial diametral pair and every
    shortest path between them."""
    distances = distance_matrix(graph)
    d = max(max(row.values()) for row in distances.values())
    simplicial = simplicial_partition(graph).simplicial
    tags = set()
    for u, v in _diametral_pairs(graph, distances, d):
        if not {u, v} <= simplicial:
            continue
        for path in nx.all_shortest_paths(graph.to_networkx(), u, v):
            tag, _ = kappa1_chordal_tag(graph, config_for_path(graph, tuple(path)))
            tags.add(tag)
    return tags


def _kappa1_tag(graph: Graph, bundle: InvariantBundle) -> ClassLabel:
    config = diametral_config(graph)
    if bundle.chordal:
        return ClassLabel(*kappa1_chordal_tag(graph, config))
    detail: dict[str, Any] = {"config": config.as_dict()}
    if config.pattern is not Pattern.SQUARE:
        detail["note"] = "the chosen diametral path does not carry the square configuration"
        return ClassLabel(ClassTag.UNCLASSIFIED, detail)
    cuts = _cut_witnesses(graph, config)
    detail.update(cuts)
    if any(cuts.values()):
        return ClassLabel(ClassTag.KAPPA1_SQUARE_CUT, detail)
    return ClassLabel(ClassTag.KAPPA1_SQUARE_NO_CUT, detail)


def _kappa2_diameter3_tag(graph: Graph, bundle: InvariantBundle) -> ClassLabel:
    if not bundle.chordal:
        return ClassLabel(ClassTag.KAPPA2_NONCHORDAL, {})
    config = diametral_config(graph)
    detail: dict[str, Any] = {"config": config.as_dict()}
    if config.pattern is not Pattern.TWIN_PATHS:
        return ClassLabel(ClassTag.KAPPA2_CHORDAL, detail)
    internal = simplicial_partition(graph).internal
    u_side = graph.neighbors(config.u) & internal
    v_side = graph.neighbors(config.v) & internal
    mandatory = [c for c in maximal_cliques(graph) if config.u in c or config.v in c]
    attached = [
        [p, q]
        for p in sorted(u_side)
        for q in sorted(v_side)
        if cliques_attached(graph, internal, {p, q}, mandatory)
    ]
    detail["attached_cross_edges"] = attached
    if attached:
        return ClassLabel(ClassTag.KAPPA2_CHORDAL, detail)
    return ClassLabel(ClassTag.KAPPA2_TWIN_PATHS_BARE, detail)


def classify(graph: Graph) -> ClassLabel:
    """Assign the class that decides which depth rule applies.

    >>> from beidepth.graph import path_graph
    >>> from beidepth.classify import classify
    >>> classify(path_graph(5)).tag.value
    'gap-zero-cut-vertex'
    """
    require_connected(graph)
    if is_complete(graph):
        raise ValueError("complete graphs are not classified")
    bundle = invariants(graph)
    if bundle.gap == 0:
        tag = ClassTag.GAP_ZERO_CUT_VERTEX if bundle.kappa == 1 else ClassTag.GAP_ZERO_CONNECTED
        return ClassLabel(tag, {})
    if bundle.gap == 1:
        if bundle.n < 5:
            return ClassLabel(ClassTag.UNCLASSIFIED, {"note": "no gap-one graphs below 5 vertices"})
        if bundle.kappa == 1:
            return _kappa1_tag(graph, bundle)
        if bundle.d == 2:
            return ClassLabel(ClassTag.DIAMETER_TWO, {})
        if bundle.kappa == 2 and bundle.d == 3:
            return _kappa2_diameter3_tag(graph, bundle)
        logger.warning("gap-one graph outside the feasibility table: %r", bundle)
        return ClassLabel(ClassTag.UNCLASSIFIED, {"note": "outside the gap-one case analysis"})
    profile = block_profile(graph)
    if profile.kind is not BlockKind.NEITHER:
        return ClassLabel(ClassTag.GENERALIZED_BLOCK, {"block": profile.kind.value})
    chain = chain_of_cliques(graph)
    if chain is not None and any(chain.overlap_nonempty):
        return ClassLabel(ClassTag.CLIQUE_CHAIN_OVERLAP, {"r": list(chain.r), "q": list(chain.q)})
    return ClassLabel(ClassTag.UNCLASSIFIED, {})


def check_structural_theorem(graph: Graph) -> bool:
    """Necessary cycle structure of a gap-one graph.

    Connectivity 1 allows chordal graphs or exactly one induced 4-cycle and
    no longer induced cycle; diameter 2 with connectivity at least 2 forces
    chordality; connectivity 2 and diameter 3 allow at most one induced
    4-cycle and no longer one.
    """
    bundle = invariants(graph)
    if bundle.complete or bundle.gap != 1:
        raise ValueError("only gap-one graphs are covered")
    if bundle.chordal:
        return True
    scan = induced_cycle_scan(graph)
    if scan.has_long_cycle:
        return False
    if bundle.kappa == 1:
        return scan.count_c4 == 1
    if bundle.kappa == 2 and bundle.d == 3:
        return scan.count_c4 <= 1
    return False


__all__ = [
    "GAP_ONE_TAGS",
    "ClassLabel",
    "ClassTag",
    "DiametralConfig",
    "Pattern",
    "check_structural_theorem",
    "classify",
    "cliques_attached",
    "config_for_path",
    "diametral_config",
    "fan_tag_variants",
    "feasibility",
    "kappa1_chordal_tag",
]
