"""
Named graph families and exhaustive enumeration of small connected graphs.

Five of the families realise every feasible ``(kappa, f, d)`` with
``gap == 1``. All five are clique sums of complete graphs:

``clique-triangle-path``
    ``K_f ∪_e K_3``, with a path on ``d`` vertices attached at an end of
    ``e``. Connectivity 1.
``diamond-path``
    Two triangles sharing an edge, with a path on ``d - 1`` vertices attached
    at a vertex off that edge. Connectivity 1, ``f = 2``.
``ears-shared-vertex``
    ``K_{f+1}`` with triangles glued on two edges that share a vertex.
    Connectivity 2, diameter 2.
``ears-disjoint``
    ``K_{f+2}`` with triangles glued on two disjoint edges. Connectivity 2,
    diameter 3.
``clique-caps``
    ``K_{f+kappa-1}`` with two copies of ``K_{kappa+1}`` glued along
    ``K_kappa`` subgraphs sharing ``kappa - 1`` vertices. Diameter 2.
"""

from __future__ import annotations

import enum
import logging
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING, NamedTuple

import networkx as nx

from beidepth.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    from_edge_list,
    parse_graph6,
    path_graph,
    star_graph,
)
from beidepth.structure import clique_sum

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)


class Family(str, enum.Enum):
    CLIQUE_TRIANGLE_PATH = "clique-triangle-path"
    DIAMOND_PATH = "diamond-path"
    EARS_SHARED_VERTEX = "ears-shared-vertex"
    EARS_DISJOINT = "ears-disjoint"
    CLIQUE_CAPS = "clique-caps"
    PATH = "path"
    COMPLETE = "complete"
    CYCLE = "cycle"
    STAR = "star"
    CLIQUE_CHAIN = "clique-chain"


GAP_ONE_FAMILIES = (
    Family.CLIQUE_TRIANGLE_PATH,
    Family.DIAMOND_PATH,
    Family.EARS_SHARED_VERTEX,
    Family.EARS_DISJOINT,
    Family.CLIQUE_CAPS,
)


class FamilySpec(NamedTuple):
    family: Family
    n: int | None = None
    d: int | None = None
    f: int | None = None
    kappa: int | None = None

    #: Clique sizes of a clique chain.
    r: tuple[int, ...] = ()

    #: Sizes of the overlaps between consecutive cliques.
    q: tuple[int, ...] = ()

    #: ``shared[i]``: vertices the overlaps ``i`` and ``i + 1`` have in common.
    shared: tuple[int, ...] = ()


class StatedInvariants(NamedTuple):
    n: int
    d: int
    f: int
    kappa: int


def _require(value: int | None, name: str, minimum: int, family: Family) -> int:
    if value is None or value < minimum:
        raise ValueError(f"{family.value} needs {name} >= {minimum}")
    return value


def _attach_path(graph: Graph, at: int, length: int) -> Graph:
    """Glue a path on `length` vertices to `graph` by one end at `at`."""
    if length < 2:
        return graph
    return clique_sum(graph, path_graph(length), ([at], [1]))


def _ears(middle: Graph, first: tuple[int, int], second: tuple[int, int]) -> Graph:
    triangle = complete_graph(3)
    graph = clique_sum(middle, triangle, (list(first), [1, 2]))
    return clique_sum(graph, triangle, (list(second), [1, 2]))


def _clique_chain(spec: FamilySpec) -> Graph:
    r, q = spec.r, spec.q
    shared = spec.shared or (0,) * max(len(q) - 1, 0)
    if len(r) < 2 or len(q) != len(r) - 1 or len(shared) != max(len(q) - 1, 0):
        raise ValueError("clique-chain needs m >= 2 sizes, m - 1 overlaps, m - 2 shared counts")
    for index, overlap in enumerate(q):
        if not 1 <= overlap < min(r[index], r[index + 1]):
            raise ValueError(f"overlap {overlap} must lie in 1..{min(r[index], r[index + 1]) - 1}")
    graph = complete_graph(r[0])
    facet = list(graph.vertices)
    glue: list[int] = []
    for index, size in enumerate(r[1:]):
        keep = shared[index - 1] if index else 0
        fresh = [v for v in facet if v not in glue]
        if not 0 <= keep <= min(len(glue), q[index]) or q[index] - keep > len(fresh):
            raise ValueError(f"shared count {keep} does not fit overlap {q[index]}")
        glue = glue[:keep] + fresh[len(fresh) - (q[index] - keep) :]
        old_n = graph.n
        graph = clique_sum(graph, complete_graph(size), (glue, list(range(1, len(glue) + 1))))
        facet = glue + list(range(old_n + 1, graph.n + 1))
    return graph


def construct(spec: FamilySpec) -> Graph:
    """Build the graph a :class:`FamilySpec` describes.

    >>> from beidepth.families import Family, FamilySpec, construct
    >>> construct(FamilySpec(Family.EARS_SHARED_VERTEX, f=3)).n
    6
    """
    family = spec.family
    if family is Family.CLIQUE_TRIANGLE_PATH:
        f = _require(spec.f, "f", 3, family)
        d = _require(spec.d, "d", 2, family)
        graph = clique_sum(complete_graph(f), complete_graph(3), ([f - 1, f], [1, 2]))
        return _attach_path(graph, f, d)
    if family is Family.DIAMOND_PATH:
        d = _require(spec.d, "d", 3, family)
        diamond = clique_sum(complete_graph(3), complete_graph(3), ([2, 3], [1, 2]))
        return _attach_path(diamond, 4, d - 1)
    if family is Family.EARS_SHARED_VERTEX:
        f = _require(spec.f, "f", 2, family)
        return _ears(complete_graph(f + 1), (1, 2), (2, 3))
    if family is Family.EARS_DISJOINT:
        f = _require(spec.f, "f", 2, family)
        return _ears(complete_graph(f + 2), (1, 2), (3, 4))
    if family is Family.CLIQUE_CAPS:
        f = _require(spec.f, "f", 2, family)
        kappa = _require(spec.kappa, "kappa", 3, family)
        cap = complete_graph(kappa + 1)
        graph = clique_sum(
            complete_graph(f + kappa - 1), cap, (list(range(1, kappa + 1)), list(range(1, kappa + 1)))
        )
        return clique_sum(graph, cap, (list(range(2, kappa + 2)), list(range(1, kappa + 1))))
    if family is Family.PATH:
        return path_graph(_require(spec.n, "n", 1, family))
    if family is Family.COMPLETE:
        return complete_graph(_require(spec.n, "n", 1, family))
    if family is Family.CYCLE:
        return cycle_graph(_require(spec.n, "n", 3, family))
    if family is Family.STAR:
        return star_graph(_require(spec.n, "n", 2, family))
    return _clique_chain(spec)


def stated_invariants(spec: FamilySpec) -> StatedInvariants | None:
    """``(n, d, f, kappa)`` a gap-one family is built to have."""
    f, d, kappa = spec.f, spec.d, spec.kappa
    family = spec.family
    if family is Family.CLIQUE_TRIANGLE_PATH and f is not None and d is not None:
        return StatedInvariants(f + d, d, f, 1)
    if family is Family.DIAMOND_PATH and d is not None:
        return StatedInvariants(d + 2, d, 2, 1)
    if family is Family.EARS_SHARED_VERTEX and f is not None:
        return StatedInvariants(f + 3, 2, f, 2)
    if family is Family.EARS_DISJOINT and f is not None:
        return StatedInvariants(f + 4, 3, f, 2)
    if family is Family.CLIQUE_CAPS and f is not None and kappa is not None:
        return StatedInvariants(f + kappa + 1, 2, f, kappa)
    return None


@lru_cache(maxsize=None)
def _atlas(n: int) -> tuple[str, ...]:
    return tuple(
        Graph.from_networkx(graph).to_graph6()
        for graph in nx.graph_atlas_g()
        if graph.number_of_nodes() == n and nx.is_connected(graph)
    )


def _grown(smaller: tuple[str, ...]) -> tuple[str, ...]:
    # every connected graph has a vertex whose removal keeps it connected
    classes: dict[str, list[nx.Graph]] = {}
    found = []
    n = parse_graph6(smaller[0]).n + 1
    for encoded in smaller:
        base = parse_graph6(encoded)
        for size in range(1, n):
            for neighbors in combinations(base.vertices, size):
                graph = from_edge_list(n, [*base.edges(), *((v, n) for v in neighbors)])
                view = graph.to_networkx()
                key = nx.weisfeiler_lehman_graph_hash(view)
                bucket = classes.setdefault(key, [])
                if any(nx.is_isomorphic(view, other) for other in bucket):
                    continue
                bucket.append(view)
                found.append(graph.to_graph6())
    logger.info("grew %d classes on %d vertices", len(found), n)
    return tuple(found)


@lru_cache(maxsize=None)
def connected_graph6(n: int) -> tuple[str, ...]:
    """graph6 keys of the connected graphs on `n` vertices, one per
    isomorphism class, in enumeration order."""
    if not 3 <= n <= 8:
        raise ValueError("enumeration covers 3 <= n <= 8")
    if n <= 7:
        return _atlas(n)
    return _grown(connected_graph6(n - 1))


def enumerate_connected(n: int) -> Iterator[Graph]:
    """Yield every connected graph on `n` vertices up to isomorphism.

    >>> from beidepth.families import enumerate_connected
    >>> sum(1 for _ in enumerate_connected(4))
    6
    """
    for encoded in connected_graph6(n):
        yield parse_graph6(encoded)


__all__ = [
    "GAP_ONE_FAMILIES",
    "Family",
    "FamilySpec",
    "StatedInvariants",
    "connected_graph6",
    "construct",
    "enumerate_connected",
    "stated_invariants",
]
