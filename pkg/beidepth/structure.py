"""
Graph transformations and the decomposition classes depth results are
proved for: neighborhood completion, vertex deletion, clique sums,
decomposable graphs, (generalized) block graphs, chains of cliques and
unicyclic graphs.
"""

from __future__ import annotations

import enum
from itertools import combinations
from typing import TYPE_CHECKING, NamedTuple

from beidepth.graph import (
    Graph,
    complete_graph,
    component_masks,
    from_edge_list,
    is_chordal,
    is_connected,
    mask_vertices,
    maximal_cliques,
    minimal_cutsets,
    require_connected,
)
from beidepth.util import iter_bits

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from beidepth._types import Edge, VertexSet


class InducedSubgraph(NamedTuple):
    #: The subgraph, relabeled to ``1..k``.
    graph: Graph

    #: ``labels[i - 1]`` is the original label of vertex ``i``.
    labels: tuple[int, ...]

    def original(self, vertices: Iterable[int]) -> VertexSet:
        return frozenset(self.labels[v - 1] for v in vertices)


def complete_neighborhood(graph: Graph, v: int) -> Graph:
    """Return ``G_v``: `graph` with the neighborhood of `v` made a clique.

    >>> from beidepth.graph import path_graph
    >>> from beidepth.structure import complete_neighborhood
    >>> complete_neighborhood(path_graph(3), 2).edge_count
    3
    """
    graph.check_vertex(v)
    neighborhood = graph.rows[v - 1]
    rows = list(graph.rows)
    for k in iter_bits(neighborhood):
        rows[k] |= neighborhood & ~(1 << k)
    return Graph(graph.n, rows)


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> InducedSubgraph:
    labels = tuple(sorted(set(vertices)))
    for v in labels:
        graph.check_vertex(v)
    position = {old: new for new, old in enumerate(labels, start=1)}
    edges = [
        (position[i], position[j])
        for i, j in graph.edges()
        if i in position and j in position
    ]
    return InducedSubgraph(from_edge_list(len(labels), edges), labels)


def delete_vertex(graph: Graph, v: int) -> InducedSubgraph:
    """``G \\ v`` with labels compacted to ``1..n-1``."""
    graph.check_vertex(v)
    return induced_subgraph(graph, (w for w in graph.vertices if w != v))


def delete_edge(graph: Graph, edge: Edge) -> Graph:
    i, j = edge
    if not graph.has_edge(i, j):
        raise ValueError(f"({i}, {j}) is not an edge")
    return from_edge_list(graph.n, (e for e in graph.edges() if e != (min(i, j), max(i, j))))


def clique_sum(
    first: Graph, second: Graph, glue: tuple[Sequence[int], Sequence[int]]
) -> Graph:
    """Glue `second` onto `first`, identifying ``glue[1][k]`` with ``glue[0][k]``.

    The vertices of `first` keep their labels; the remaining vertices of
    `second` follow in increasing order.

    >>> from beidepth.graph import complete_graph
    >>> from beidepth.structure import clique_sum
    >>> diamond = clique_sum(complete_graph(3), complete_graph(3), ([2, 3], [1, 2]))
    >>> (diamond.n, diamond.edge_count)
    (4, 5)
    """
    left, right = (list(side) for side in glue)
    if len(left) != len(right):
        raise ValueError("glued vertex lists differ in size")
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise ValueError("glued vertex lists repeat a vertex")
    for v in left:
        first.check_vertex(v)
    for v in right:
        second.check_vertex(v)
    if not first.is_clique(left) or not second.is_clique(right):
        raise ValueError("glued vertices must induce a complete subgraph")
    mapping = dict(zip(right, left))
    for v in second.vertices:
        if v not in mapping:
            mapping[v] = first.n + 1 + sum(1 for w in range(1, v) if w not in right)
    n = first.n + second.n - len(left)
    edges = [*first.edges(), *((mapping[i], mapping[j]) for i, j in second.edges())]
    return from_edge_list(n, edges)


def disjoint_union(first: Graph, second: Graph) -> Graph:
    return clique_sum(first, second, ([], []))


class Decomposition(NamedTuple):
    #: The cut vertex both parts share; simplicial in each part.
    vertex: int

    parts: tuple[InducedSubgraph, InducedSubgraph]


def is_decomposable(graph: Graph) -> Decomposition | None:
    """Find a vertex ``v`` with ``G = G1 ∪_v G2`` and ``v`` simplicial in both.

    Such a vertex splits the graph into exactly two components, each
    meeting the neighborhood of ``v`` in a clique.
    """
    require_connected(graph)
    for v in graph.vertices:
        rest = graph.full_mask & ~(1 << (v - 1))
        components = list(component_masks(graph, rest))
        if len(components) != 2:
            continue
        neighborhood = graph.rows[v - 1]
        if all(graph.is_clique(mask_vertices(c & neighborhood)) for c in components):
            parts = tuple(
                induced_subgraph(graph, mask_vertices(c) | {v}) for c in components
            )
            return Decomposition(v, parts)  # type: ignore[arg-type]
    return None


class BlockKind(str, enum.Enum):
    BLOCK = "block"
    GENERALIZED_BLOCK = "generalized-block"
    NEITHER = "neither"


class BlockProfile(NamedTuple):
    kind: BlockKind

    #: ``a[i]``: number of minimal cut sets of size ``i``, for ``i < omega``.
    a: dict[int, int]

    #: Total number of minimal cut sets.
    m: int

    #: Clique number.
    omega: int


def _generalized_block(cliques: list[VertexSet]) -> bool:
    for first, second, third in combinations(cliques, 3):
        pairwise = (first & second, first & third, second & third)
        if all(pairwise) and len(set(pairwise)) != 1:
            return False
    return True


def block_profile(graph: Graph) -> BlockProfile:
    """Classify a connected graph as block, generalized block or neither.

    Block graphs are chordal with maximal cliques meeting in at most one
    vertex. Generalized block graphs are chordal, and any three maximal
    cliques that meet pairwise do so in one common intersection.
    """
    if not is_connected(graph):
        return BlockProfile(BlockKind.NEITHER, {}, 0, 0)
    cliques = maximal_cliques(graph)
    omega = max(len(c) for c in cliques)
    cuts = minimal_cutsets(graph, omega - 1)
    if not is_chordal(graph):
        kind = BlockKind.NEITHER
    elif all(len(a & b) <= 1 for a, b in combinations(cliques, 2)):
        kind = BlockKind.BLOCK
    elif _generalized_block(cliques):
        kind = BlockKind.GENERALIZED_BLOCK
    else:
        kind = BlockKind.NEITHER
    return BlockProfile(kind, cuts.a, cuts.m, omega)


class ChainOfCliques(NamedTuple):
    #: Clique sizes along the leaf order.
    r: tuple[int, ...]

    #: ``q[i] = |F_i ∩ F_{i+1}|``.
    q: tuple[int, ...]

    #: Whether consecutive overlaps ``F_{i-1} ∩ F_i`` and ``F_i ∩ F_{i+1}`` meet.
    overlap_nonempty: tuple[bool, ...]

    facet_order: tuple[VertexSet, ...]


def _unique_branch(prefix: Sequence[VertexSet], facet: VertexSet) -> bool:
    # the last facet must be the only one containing every other trace on facet
    branches = [
        candidate
        for candidate in prefix
        if all(
            other & facet <= candidate & facet
            for other in prefix
            if other != candidate
        )
    ]
    return branches == [prefix[-1]] and bool(prefix[-1] & facet)


def _leaf_orders(cliques: list[VertexSet]) -> list[tuple[VertexSet, ...]]:
    orders: list[tuple[VertexSet, ...]] = []

    def extend(prefix: list[VertexSet], left: list[VertexSet]) -> None:
        if not left:
            orders.append(tuple(prefix))
            return
        for facet in left:
            if _unique_branch(prefix, facet):
                extend([*prefix, facet], [f for f in left if f != facet])

    for first in cliques:
        extend([first], [f for f in cliques if f != first])
    return orders


def _chain_from_order(order: tuple[VertexSet, ...]) -> ChainOfCliques:
    overlaps = [a & b for a, b in zip(order, order[1:])]
    return ChainOfCliques(
        r=tuple(len(facet) for facet in order),
        q=tuple(len(overlap) for overlap in overlaps),
        overlap_nonempty=tuple(bool(a & b) for a, b in zip(overlaps, overlaps[1:])),
        facet_order=order,
    )


def chain_of_cliques(graph: Graph) -> ChainOfCliques | None:
    """Return a leaf order ``F_1..F_m`` in which each ``F_{i-1}`` is the unique
    branch of ``F_i``, or ``None`` if the maximal cliques form no chain.

    Among all leaf orders the one with the smallest ``(r, q, facets)`` key is
    returned, so the result does not depend on clique enumeration order.

    >>> from beidepth.graph import path_graph
    >>> from beidepth.structure import chain_of_cliques
    >>> chain = chain_of_cliques(path_graph(4))
    >>> (chain.r, chain.q)
    ((2, 2, 2), (1, 1))
    """
    require_connected(graph)
    if not is_chordal(graph):
        return None
    cliques = maximal_cliques(graph)
    if len(cliques) < 2:
        return None
    orders = _leaf_orders(cliques)
    if not orders:
        return None
    chains = [_chain_from_order(order) for order in orders]
    return min(
        chains,
        key=lambda c: (c.r, c.q, [sorted(facet) for facet in c.facet_order]),
    )


def rebuild_chain(chain: ChainOfCliques) -> Graph:
    """Rebuild a graph isomorphic to the chain's by successive clique sums."""
    order = chain.facet_order
    graph = complete_graph(len(order[0]))
    labels = dict(zip(sorted(order[0]), graph.vertices))
    for previous, facet in zip(order, order[1:]):
        shared = sorted(previous & facet)
        glue = ([labels[v] for v in shared], list(range(1, len(shared) + 1)))
        # fresh vertices of the new clique are appended after the old ones
        for offset, v in enumerate(sorted(facet - previous), start=1):
            labels[v] = graph.n + offset
        graph = clique_sum(graph, complete_graph(len(facet)), glue)
    return graph


def is_unicyclic(graph: Graph) -> bool:
    require_connected(graph)
    return graph.edge_count == graph.n


def is_cycle(graph: Graph) -> bool:
    return is_unicyclic(graph) and all(graph.degree(v) == 2 for v in graph.vertices)


__all__ = [
    "BlockKind",
    "BlockProfile",
    "ChainOfCliques",
    "Decomposition",
    "InducedSubgraph",
    "block_profile",
    "chain_of_cliques",
    "clique_sum",
    "complete_neighborhood",
    "delete_edge",
    "delete_vertex",
    "disjoint_union",
    "induced_subgraph",
    "is_cycle",
    "is_decomposable",
    "is_unicyclic",
    "rebuild_chain",
]
