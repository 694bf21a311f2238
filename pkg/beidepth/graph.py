"""
Simple undirected graphs on the vertices ``1..n`` and the raw invariants
(distance, diameter, simplicial vertices, connectivity, cut sets, cliques,
induced cycles) the depth rules are stated in.
"""

from __future__ import annotations

import math
from functools import cached_property
from itertools import combinations
from typing import TYPE_CHECKING, NamedTuple

import networkx as nx

from beidepth._infra import (
    _EDGE_LIST_COMMENT,
    _GRAPH6_BIAS,
    _GRAPH6_BITS_PER_CHAR,
    _GRAPH6_HEADER,
    _GRAPH6_MAX_CHAR,
    _GRAPH6_SHORT_MAX_N,
    _MAX_VERTICES,
)
from beidepth.util import ascii_text, iter_bits, popcount, to_mask

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from beidepth._types import Edge, StrOrBytes, VertexSet


class GraphFormatError(ValueError):
    """Raised on malformed edge-list or graph6 input."""


class Graph:
    """Immutable simple graph with vertices ``1..n``.

    Adjacency is kept as one bit row per vertex: bit ``k`` of ``rows[i]`` is
    set when vertices ``i + 1`` and ``k + 1`` are adjacent.
    """

    def __init__(self, n: int, rows: Iterable[int]) -> None:
        rows = tuple(rows)
        if n < 0 or len(rows) != n:
            raise ValueError("row count does not match vertex count")
        if n > _MAX_VERTICES:
            raise ValueError(f"at most {_MAX_VERTICES} vertices are supported")
        full = (1 << n) - 1
        for i, row in enumerate(rows):
            if row & ~full:
                raise ValueError("adjacency row out of range")
            if row >> i & 1:
                raise ValueError("self-loop")
            for k in iter_bits(row):
                if not rows[k] >> i & 1:
                    raise ValueError("adjacency is not symmetric")
        self._n = n
        self._rows = rows

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    @cached_property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self._rows) // 2

    @property
    def vertices(self) -> range:
        return range(1, self._n + 1)

    def check_vertex(self, v: int) -> None:
        if not 1 <= v <= self._n:
            raise ValueError(f"vertex {v} out of range 1..{self._n}")

    def edges(self) -> list[Edge]:
        return [
            (i + 1, k + 1)
            for i, row in enumerate(self._rows)
            for k in iter_bits(row)
            if i < k
        ]

    def has_edge(self, i: int, j: int) -> bool:
        self.check_vertex(i)
        self.check_vertex(j)
        return bool(self._rows[i - 1] >> (j - 1) & 1)

    def neighbors(self, v: int) -> VertexSet:
        self.check_vertex(v)
        return frozenset(k + 1 for k in iter_bits(self._rows[v - 1]))

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return popcount(self._rows[v - 1])

    def is_clique(self, vertices: Iterable[int]) -> bool:
        mask = vertex_mask(vertices)
        return all(
            (self._rows[k] | 1 << k) & mask == mask for k in iter_bits(mask)
        )

    @cached_property
    def _nx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges())
        return nx.freeze(graph)

    def to_networkx(self) -> nx.Graph:
        """Return a frozen :mod:`networkx` view with the same labels."""
        return self._nx

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> Graph:
        """Relabel the nodes of `graph`, in sorted order, to ``1..n``."""
        relabeled = nx.convert_node_labels_to_integers(
            graph, first_label=1, ordering="sorted"
        )
        return from_edge_list(relabeled.number_of_nodes(), relabeled.edges())

    def to_graph6(self) -> str:
        data = nx.to_graph6_bytes(self._nx, header=False)
        return data.decode("ascii").strip()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edges()!r})"


def vertex_mask(vertices: Iterable[int]) -> int:
    return to_mask(v - 1 for v in vertices)


def mask_vertices(mask: int) -> VertexSet:
    return frozenset(k + 1 for k in iter_bits(mask))


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``1..n``; repeated edges are collapsed.

    >>> from beidepth.graph import from_edge_list
    >>> from_edge_list(3, [(1, 2), (2, 3), (2, 1)]).edge_count
    2
    """
    if n < 0:
        raise ValueError("vertex count must not be negative")
    rows = [0] * n
    for i, j in edges:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"edge ({i}, {j}) has a label out of range 1..{n}")
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        rows[i - 1] |= 1 << (j - 1)
        rows[j - 1] |= 1 << (i - 1)
    return Graph(n, rows)


def complete_graph(n: int) -> Graph:
    return from_edge_list(n, combinations(range(1, n + 1), 2))


def path_graph(n: int) -> Graph:
    return from_edge_list(n, ((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [*((i, i + 1) for i in range(1, n)), (n, 1)])


def star_graph(n: int) -> Graph:
    """The star with center ``1`` and ``n - 1`` leaves."""
    return from_edge_list(n, ((1, i) for i in range(2, n + 1)))


def _graph_text(text: StrOrBytes) -> str:
    try:
        return ascii_text(text)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def parse_edge_list(text: StrOrBytes) -> Graph:
    """Parse the ``n m`` header plus ``m`` lines of ``i j`` format.

    Blank lines and anything after ``#`` are ignored.

    >>> from beidepth.graph import parse_edge_list
    >>> parse_edge_list("3 2\\n1 2\\n2 3  # path\\n").edges()
    [(1, 2), (2, 3)]
    """
    lines = []
    for raw in _graph_text(text).splitlines():
        line = raw.split(_EDGE_LIST_COMMENT, 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        pairs = [tuple(int(token) for token in line.split()) for line in lines]
    except ValueError:
        raise GraphFormatError("edge list entries must be integers")
    if any(len(pair) != 2 for pair in pairs):
        raise GraphFormatError("every edge list line must hold two integers")
    (n, m), edges = pairs[0], pairs[1:]
    if m != len(edges):
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return from_edge_list(n, edges)  # type: ignore[arg-type]
    except ValueError as exc:
        raise GraphFormatError(str(exc))


def format_edge_list(graph: Graph) -> str:
    """Text that :func:`parse_edge_list` reads back into `graph`.

    >>> from beidepth.graph import format_edge_list, path_graph
    >>> print(format_edge_list(path_graph(3)))
    3 2
    1 2
    2 3
    """
    edges = graph.edges()
    return "\n".join([f"{graph.n} {len(edges)}", *(f"{i} {j}" for i, j in edges)])


def _graph6_size(data: bytes) -> tuple[int, bytes]:
    if data[0] != _GRAPH6_MAX_CHAR:
        return data[0] - _GRAPH6_BIAS, data[1:]
    if len(data) < 4 or data[1] == _GRAPH6_MAX_CHAR:
        raise GraphFormatError("malformed length header")
    n = 0
    for char in data[1:4]:
        n = (n << _GRAPH6_BITS_PER_CHAR) | (char - _GRAPH6_BIAS)
    if n <= _GRAPH6_SHORT_MAX_N:
        raise GraphFormatError("malformed length header")
    return n, data[4:]


def parse_graph6(text: StrOrBytes) -> Graph:
    """Decode a graph6 string.

    The length header and the zero padding of the final character are
    validated before the bit stream is handed to :mod:`networkx`.

    >>> from beidepth.graph import parse_graph6
    >>> parse_graph6("Bw").edges()
    [(1, 2), (1, 3), (2, 3)]
    """
    data = _graph_text(text).strip().encode("ascii")
    if data.startswith(_GRAPH6_HEADER):
        data = data[len(_GRAPH6_HEADER) :]
    if not data:
        raise GraphFormatError("empty graph6 string")
    if any(not _GRAPH6_BIAS <= char <= _GRAPH6_MAX_CHAR for char in data):
        raise GraphFormatError("graph6 characters must lie in range(63, 127)")
    n, body = _graph6_size(data)
    if n > _MAX_VERTICES:
        raise GraphFormatError(f"at most {_MAX_VERTICES} vertices are supported")
    bits = n * (n - 1) // 2
    expected = -(-bits // _GRAPH6_BITS_PER_CHAR)
    if len(body) != expected:
        raise GraphFormatError(
            f"malformed length header: n={n} needs {expected} data characters,"
            f" got {len(body)}"
        )
    padding = expected * _GRAPH6_BITS_PER_CHAR - bits
    if body and (body[-1] - _GRAPH6_BIAS) & ((1 << padding) - 1):
        raise GraphFormatError("trailing padding bits are not zero")
    return Graph.from_networkx(nx.from_graph6_bytes(data))


def parse_graph(text: StrOrBytes) -> Graph:
    """Parse either format: a single token is graph6, anything else an edge list."""
    content = _graph_text(text).strip()
    if content.startswith(_GRAPH6_HEADER.decode("ascii")) or (
        content and len(content.split()) == 1
    ):
        return parse_graph6(content)
    return parse_edge_list(content)


def to_dot(graph: Graph, name: str = "G", highlight: Iterable[int] = ()) -> str:
    """Graphviz DOT text; `highlight` vertices are drawn filled.

    >>> from beidepth.graph import path_graph, to_dot
    >>> print(to_dot(path_graph(2)))
    graph G {
      1;
      2;
      1 -- 2;
    }
    """
    marked = set(highlight)
    lines = [f"graph {name} {{"]
    for v in graph.vertices:
        style = " [style=filled]" if v in marked else ""
        lines.append(f"  {v}{style};")
    lines.extend(f"  {i} -- {j};" for i, j in graph.edges())
    lines.append("}")
    return "\n".join(lines)


def component_masks(graph: Graph, mask: int | None = None) -> Iterator[int]:
    """Yield the vertex masks of the components of the subgraph induced by `mask`."""
    rows = graph.rows
    remaining = graph.full_mask if mask is None else mask & graph.full_mask
    while remaining:
        component = frontier = remaining & -remaining
        while frontier:
            reach = 0
            for k in iter_bits(frontier):
                reach |= rows[k]
            frontier = reach & remaining & ~component
            component |= frontier
        yield component
        remaining &= ~component


def is_connected(graph: Graph) -> bool:
    return graph.n > 0 and sum(1 for _ in component_masks(graph)) == 1


def require_connected(graph: Graph) -> None:
    if not is_connected(graph):
        raise ValueError("graph is not connected")


def is_complete(graph: Graph) -> bool:
    return graph.edge_count == graph.n * (graph.n - 1) // 2


def distance(graph: Graph, i: int, j: int) -> float:
    """Number of edges on a shortest ``i``-``j`` path, ``math.inf`` if none.

    >>> from beidepth.graph import distance, path_graph
    >>> distance(path_graph(5), 1, 5)
    4
    """
    graph.check_vertex(i)
    graph.check_vertex(j)
    try:
        return nx.shortest_path_length(graph.to_networkx(), i, j)  # type: ignore[no-any-return]
    except nx.NetworkXNoPath:
        return math.inf


def distance_matrix(graph: Graph) -> dict[int, dict[int, int]]:
    return {
        source: dict(lengths)
        for source, lengths in nx.all_pairs_shortest_path_length(graph.to_networkx())
    }


def diameter(graph: Graph) -> int:
    require_connected(graph)
    if graph.n == 1:
        return 0
    return nx.diameter(graph.to_networkx())  # type: ignore[no-any-return]


class SimplicialPartition(NamedTuple):
    #: Vertices whose closed neighborhood is a clique.
    simplicial: VertexSet

    #: The remaining vertices.
    internal: VertexSet


def is_simplicial(graph: Graph, v: int) -> bool:
    graph.check_vertex(v)
    closed = graph.rows[v - 1] | 1 << (v - 1)
    return all((graph.rows[k] | 1 << k) & closed == closed for k in iter_bits(closed))


def simplicial_partition(graph: Graph) -> SimplicialPartition:
    simplicial = frozenset(v for v in graph.vertices if is_simplicial(graph, v))
    return SimplicialPartition(simplicial, frozenset(graph.vertices) - simplicial)


def vertex_connectivity(graph: Graph) -> int:
    """Vertex connectivity, with ``n - 1`` for complete graphs.

    networkx computes it as the minimum, over non-adjacent pairs, of the
    number of internally vertex-disjoint paths.
    """
    require_connected(graph)
    if graph.n == 1:
        return 0
    return nx.node_connectivity(graph.to_networkx())  # type: ignore[no-any-return]


def components_after(graph: Graph, removed: Iterable[int]) -> int:
    """Number of components of the graph minus `removed`.

    >>> from beidepth.graph import components_after, path_graph
    >>> components_after(path_graph(3), {2})
    2
    """
    mask = graph.full_mask & ~vertex_mask(removed)
    return sum(1 for _ in component_masks(graph, mask))


def is_cutset(graph: Graph, candidate: Iterable[int]) -> bool:
    """Whether removing any single vertex of `candidate` back reduces the
    component count, i.e. c(T - {v}) < c(T) for every v in T."""
    vertices = frozenset(candidate)
    if not vertices:
        raise ValueError("cut set candidate must not be empty")
    for v in vertices:
        graph.check_vertex(v)
    count = components_after(graph, vertices)
    return all(components_after(graph, vertices - {v}) < count for v in vertices)


class CutStructure(NamedTuple):
    #: Vertices whose removal disconnects the graph.
    cut_vertices: VertexSet

    #: Inclusion-minimal disconnecting sets up to the size bound, by size.
    minimal_cutsets: tuple[VertexSet, ...]

    #: ``a[i]``: number of minimal cut sets of size ``i``.
    a: dict[int, int]

    #: Total number of minimal cut sets.
    m: int


def clique_number(graph: Graph) -> int:
    return max((len(clique) for clique in maximal_cliques(graph)), default=0)


def minimal_cutsets(graph: Graph, max_size: int | None = None) -> CutStructure:
    """Enumerate the inclusion-minimal disconnecting vertex sets.

    `max_size` defaults to the clique number minus one. Every set found
    also passes :func:`is_cutset`.
    """
    require_connected(graph)
    if max_size is None:
        max_size = clique_number(graph) - 1
    if not 0 <= max_size <= graph.n:
        raise ValueError(f"max_size must lie in 0..{graph.n}")
    found: list[VertexSet] = []
    a = dict.fromkeys(range(1, max_size + 1), 0)
    for size in range(1, max_size + 1):
        for candidate in combinations(graph.vertices, size):
            vertices = frozenset(candidate)
            if components_after(graph, vertices) < 2:
                continue
            if any(smaller <= vertices for smaller in found):
                continue
            found.append(vertices)
            a[size] += 1
    cut_vertices = frozenset(
        v for v in graph.vertices if components_after(graph, {v}) > 1
    )
    return CutStructure(cut_vertices, tuple(found), a, len(found))


def maximal_cliques(graph: Graph) -> list[VertexSet]:
    """All maximal cliques, sorted by their sorted vertex tuples."""
    cliques = (frozenset(c) for c in nx.find_cliques(graph.to_networkx()))
    return sorted(cliques, key=sorted)


def is_chordal(graph: Graph) -> bool:
    return nx.is_chordal(graph.to_networkx())  # type: ignore[no-any-return]


class InducedCycleScan(NamedTuple):
    #: Number of induced 4-cycles.
    count_c4: int

    #: Whether some induced cycle has length 5 or more.
    has_long_cycle: bool

    #: A long induced cycle, in cyclic order, when one exists.
    witness: tuple[int, ...] | None


def induced_cycles(graph: Graph) -> list[tuple[int, ...]]:
    """Every chordless cycle of length 4 or more, one entry per vertex set."""
    seen: set[VertexSet] = set()
    cycles = []
    for cycle in nx.chordless_cycles(graph.to_networkx()):
        key = frozenset(cycle)
        if len(cycle) >= 4 and key not in seen:
            seen.add(key)
            cycles.append(tuple(cycle))
    return sorted(cycles, key=lambda c: (len(c), sorted(c)))


def induced_cycle_scan(graph: Graph) -> InducedCycleScan:
    cycles = induced_cycles(graph)
    long_cycles = [c for c in cycles if len(c) >= 5]
    return InducedCycleScan(
        count_c4=sum(1 for c in cycles if len(c) == 4),
        has_long_cycle=bool(long_cycles),
        witness=long_cycles[0] if long_cycles else None,
    )


class InvariantBundle(NamedTuple):
    n: int

    #: Diameter.
    d: int

    #: Number of simplicial vertices.
    f: int

    #: Vertex connectivity.
    kappa: int

    #: Number of internal (non-simplicial) vertices.
    iv: int

    #: Clique number.
    omega: int

    chordal: bool
    connected: bool
    complete: bool

    #: ``(n + 2 - kappa) - (d + f)``, the room between the two depth bounds.
    gap: int

    def as_dict(self) -> dict[str, int | bool]:
        return dict(self._asdict())


def invariants(graph: Graph) -> InvariantBundle:
    """Compute the invariant bundle of a connected graph.

    >>> from beidepth.graph import invariants, path_graph
    >>> bundle = invariants(path_graph(4))
    >>> (bundle.d, bundle.f, bundle.kappa, bundle.gap)
    (3, 2, 1, 0)
    """
    require_connected(graph)
    partition = simplicial_partition(graph)
    d = diameter(graph)
    f = len(partition.simplicial)
    kappa = vertex_connectivity(graph)
    return InvariantBundle(
        n=graph.n,
        d=d,
        f=f,
        kappa=kappa,
        iv=len(partition.internal),
        omega=clique_number(graph),
        chordal=is_chordal(graph),
        connected=True,
        complete=is_complete(graph),
        gap=(graph.n + 2 - kappa) - (d + f),
    )


__all__ = [
    "CutStructure",
    "Graph",
    "GraphFormatError",
    "InducedCycleScan",
    "InvariantBundle",
    "SimplicialPartition",
    "clique_number",
    "complete_graph",
    "component_masks",
    "components_after",
    "cycle_graph",
    "diameter",
    "distance",
    "distance_matrix",
    "format_edge_list",
    "from_edge_list",
    "induced_cycle_scan",
    "induced_cycles",
    "invariants",
    "is_chordal",
    "is_complete",
    "is_connected",
    "is_cutset",
    "is_simplicial",
    "mask_vertices",
    "maximal_cliques",
    "minimal_cutsets",
    "parse_edge_list",
    "parse_graph",
    "parse_graph6",
    "path_graph",
    "require_connected",
    "simplicial_partition",
    "star_graph",
    "to_dot",
    "vertex_connectivity",
    "vertex_mask",
]
