"""
Exact depth of ``S/J_G`` by computer algebra.

The binomial edge ideal ``J_G`` lives in ``S = K[x_1..x_n, y_1..y_n]``. Its
Gröbner basis under the lexicographic order
``x_1 > ... > x_n > y_1 > ... > y_n`` has a squarefree initial ideal. That
initial ideal has the same depth, projective dimension, regularity and
extremal Betti numbers as ``J_G``. The graded Betti numbers of the initial
ideal come from Hochster's formula on its Stanley-Reisner complex, with
exact ranks over ``QQ`` or ``GF(2)``.
"""

from __future__ import annotations

import logging
import time
from collections import defaultdict
from functools import lru_cache
from typing import TYPE_CHECKING, Any, NamedTuple

from sympy import GF, QQ, Dummy, Poly, groebner, symbols
from sympy.polys.matrices import DomainMatrix

from beidepth._infra import _FIELD_NAMES, _TERM_ORDER_NAMES
from beidepth.config import DEFAULT_SETTINGS
from beidepth.graph import Graph, is_simplicial
from beidepth.structure import complete_neighborhood, delete_vertex
from beidepth.util import iter_bits, popcount, to_mask

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from sympy import Symbol
    from sympy.polys.domains import Domain

    from beidepth._types import BettiIndex, Monomial

logger = logging.getLogger(__name__)


class OracleLimitExceeded(ValueError):
    """The polynomial ring is larger than the configured variable limit."""


class NonSquarefreeError(ValueError):
    """A leading term that should be squarefree is not."""


class TermOrder(NamedTuple):
    #: Name used by :func:`sympy.groebner`.
    sympy_name: str

    @property
    def name(self) -> str:
        return _TERM_ORDER_NAMES[self.sympy_name]


DIAGONAL_LEX = TermOrder("lex")
DEGREVLEX = TermOrder("grevlex")


def _domain(field: str) -> Domain:
    if field not in _FIELD_NAMES:
        raise ValueError(f"field must be one of {', '.join(_FIELD_NAMES)}, got {field!r}")
    return QQ if field == "Q" else GF(2)


@lru_cache(maxsize=None)
def polynomial_ring(n: int) -> tuple[Symbol, ...]:
    """The variables ``x_1..x_n, y_1..y_n`` in this order."""
    if n < 1:
        raise ValueError("the ring needs at least one vertex")
    return (*symbols(f"x1:{n + 1}"), *symbols(f"y1:{n + 1}"))


def _binomial(n: int, i: int, j: int, field: str) -> Poly:
    gens = polynomial_ring(n)
    x, y = gens[:n], gens[n:]
    expr = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
    return Poly(expr, *gens, domain=_domain(field))


def jg_generators(graph: Graph, field: str = "Q") -> list[Poly]:
    """One binomial ``x_i y_j - x_j y_i`` per edge ``i < j``."""
    return [_binomial(graph.n, i, j, field) for i, j in graph.edges()]


def _ring_domain(poly: Poly) -> Domain:
    domain = poly.get_domain()
    return domain if domain.is_Field else domain.get_field()


def buchberger(polys: Sequence[Poly], order: TermOrder = DIAGONAL_LEX) -> list[Poly]:
    """The reduced Gröbner basis of the ideal generated by `polys`.

    >>> from sympy import Poly, symbols
    >>> from beidepth.oracle import buchberger
    >>> x1, y1 = symbols("x1 y1")
    >>> [p.as_expr() for p in buchberger([Poly(x1, x1, y1), Poly(x1 + y1, x1, y1)])]
    [x1, y1]
    """
    if not polys:
        raise ValueError("at least one generator is required")
    gens = polys[0].gens
    domain = _ring_domain(polys[0])
    basis = groebner(
        [p.as_expr() for p in polys],
        *gens,
        order=order.sympy_name,
        method="buchberger",
        domain=domain,
    )
    return [Poly(expr, *gens, domain=domain) for expr in basis.exprs]


def _divides(small: Monomial, big: Monomial) -> bool:
    return all(a <= b for a, b in zip(small, big))


def initial_ideal(
    basis: Sequence[Poly], order: TermOrder = DIAGONAL_LEX, *, squarefree: bool = True
) -> list[Monomial]:
    """Minimal generators of the leading-term ideal of a Gröbner basis."""
    leads = sorted(
        {p.monoms(order=order.sympy_name)[0] for p in basis if not p.is_zero},
        reverse=True,
    )
    minimal = [m for m in leads if not any(o != m and _divides(o, m) for o in leads)]
    if squarefree:
        for monomial in minimal:
            if any(e > 1 for e in monomial):
                raise NonSquarefreeError(f"leading term {monomial} is not squarefree")
    return minimal


class BettiTable:
    """Graded Betti numbers ``beta[i, j]`` of ``S/I`` over ``nvars`` variables."""

    def __init__(self, nvars: int, entries: Mapping[BettiIndex, int]) -> None:
        self.nvars = nvars
        self._beta = {index: value for index, value in sorted(entries.items()) if value}

    def __getitem__(self, index: BettiIndex) -> int:
        return self._beta.get(index, 0)

    def items(self) -> list[tuple[BettiIndex, int]]:
        return list(self._beta.items())

    @property
    def pd(self) -> int:
        return max(i for i, _ in self._beta)

    @property
    def depth(self) -> int:
        return self.nvars - self.pd

    @property
    def reg(self) -> int:
        return max(j - i for i, j in self._beta)

    @property
    def extremal_corners(self) -> list[BettiIndex]:
        """Nonzero ``(i, j)`` with no other nonzero entry weakly to the
        right in homological degree and weakly below in ``j - i``."""
        return [
            (i, j)
            for i, j in self._beta
            if not any(
                (k, m) != (i, j) and k >= i and m - k >= j - i for k, m in self._beta
            )
        ]

    def convolve(self, other: BettiTable) -> BettiTable:
        """The table of the tensor product of the two resolutions."""
        entries: dict[BettiIndex, int] = defaultdict(int)
        for (i, j), a in self._beta.items():
            for (k, m), b in other._beta.items():
                entries[i + k, j + m] += a * b
        return BettiTable(self.nvars + other.nvars, entries)

    def to_records(self) -> list[list[int]]:
        return [[i, j, value] for (i, j), value in self._beta.items()]

    def format(self) -> str:
        """Rows ``j - i``, columns ``i``, as computer algebra systems print it."""
        width = max(len(str(v)) for v in self._beta.values()) + 1
        lines = ["".rjust(4) + "".join(str(i).rjust(width) for i in range(self.pd + 1))]
        for row in range(self.reg + 1):
            cells = [str(self[i, i + row] or "-").rjust(width) for i in range(self.pd + 1)]
            lines.append(f"{row}:".rjust(4) + "".join(cells))
        return "\n".join(lines)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.nvars == other.nvars and self._beta == other._beta

    def __repr__(self) -> str:
        return f"BettiTable(nvars={self.nvars}, entries={self._beta!r})"


def convolve_tables(first: BettiTable, second: BettiTable) -> BettiTable:
    """Betti table of ``S/(I + J)`` for ideals in disjoint sets of variables.

    >>> from beidepth.oracle import BettiTable, convolve_tables
    >>> edge = BettiTable(2, {(0, 0): 1, (1, 2): 1})
    >>> convolve_tables(edge, edge).items()
    [((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]
    """
    return first.convolve(second)


def _faces(generators: Sequence[int], nvars: int) -> list[int]:
    faces = [0]
    frontier = [0]
    while frontier:
        grown = []
        for face in frontier:
            for v in range(face.bit_length(), nvars):
                bigger = face | 1 << v
                if not any(g & ~bigger == 0 for g in generators):
                    grown.append(bigger)
        faces.extend(grown)
        frontier = grown
    return faces


def _boundary_rank(
    cells: Sequence[int], faces: Sequence[int], domain: Domain
) -> int:
    if not cells or not faces:
        return 0
    position = {face: row for row, face in enumerate(faces)}
    rows: dict[int, dict[int, Any]] = defaultdict(dict)
    for column, cell in enumerate(cells):
        for sign, v in enumerate(iter_bits(cell)):
            rows[position[cell & ~(1 << v)]][column] = domain(-1 if sign % 2 else 1)
    matrix = DomainMatrix(dict(rows), (len(faces), len(cells)), domain)
    return matrix.rank()  # type: ignore[no-any-return]


def reduced_homology(faces: Iterable[int], domain: Domain) -> dict[int, int]:
    """Dimensions of reduced homology, by degree, of a complex given by all
    of its faces as bit masks (the empty face included)."""
    by_size: dict[int, list[int]] = defaultdict(list)
    for face in faces:
        by_size[popcount(face)].append(face)
    top = max(by_size)
    ranks = {
        size: _boundary_rank(by_size[size], by_size[size - 1], domain)
        for size in range(1, top + 1)
    }
    homology = {}
    for size in range(top + 1):
        value = len(by_size[size]) - ranks.get(size, 0) - ranks.get(size + 1, 0)
        if value:
            homology[size - 1] = value
    return homology


def _lcm_lattice(generators: Sequence[int]) -> list[int]:
    lattice = {0}
    for g in generators:
        lattice |= {member | g for member in lattice}
    return sorted(lattice)


def betti_table(
    generators: Sequence[Monomial],
    nvars: int,
    field: str = "Q",
    var_limit: int | None = None,
) -> BettiTable:
    """Betti numbers of ``S/I`` for a squarefree monomial ideal ``I``.

    Hochster's formula gives
    ``beta[i, |s|] = sum over s of dim H~_{|s|-i-1}(D restricted to s)``,
    where ``D`` is the Stanley-Reisner complex. Only members of the lcm
    lattice of the generators can contribute; every other restriction is a
    cone.

    >>> from beidepth.oracle import betti_table
    >>> table = betti_table([(1, 0, 0, 1)], 4)
    >>> (table.pd, table.depth)
    (1, 3)
    """
    limit = DEFAULT_SETTINGS.oracle_var_limit if var_limit is None else var_limit
    if nvars > limit:
        raise OracleLimitExceeded(f"{nvars} variables exceed the oracle limit of {limit}")
    domain = _domain(field)
    masks = set()
    for monomial in generators:
        if len(monomial) != nvars or any(e > 1 for e in monomial):
            raise NonSquarefreeError(f"{monomial} is not a squarefree monomial in {nvars} variables")
        masks.add(to_mask(k for k, e in enumerate(monomial) if e))
    minimal = sorted(g for g in masks if not any(h != g and h & ~g == 0 for h in masks))
    if 0 in minimal:
        raise ValueError("the unit ideal has no Stanley-Reisner complex")
    if not minimal:
        return BettiTable(nvars, {(0, 0): 1})
    faces = _faces(minimal, nvars)
    lattice = _lcm_lattice(minimal)
    logger.debug("%d faces, lcm lattice of size %d", len(faces), len(lattice))
    entries: dict[BettiIndex, int] = defaultdict(int)
    entries[0, 0] = 1
    for sigma in lattice[1:]:
        size = popcount(sigma)
        restricted = [face for face in faces if face & ~sigma == 0]
        for degree, value in reduced_homology(restricted, domain).items():
            i = size - degree - 1
            if i >= 1:
                entries[i, size] += value
    return BettiTable(nvars, entries)


class OracleReport(NamedTuple):
    n: int
    depth: int
    pd: int
    reg: int
    extremal: tuple[BettiIndex, ...]

    #: Betti table of the initial ideal; bounds the table of ``J_G`` from
    #: above and matches it at extremal corners.
    betti_initial: BettiTable

    order: str
    field: str

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "depth": self.depth,
            "pd": self.pd,
            "reg": self.reg,
            "extremal": [list(corner) for corner in self.extremal],
            "betti_initial": self.betti_initial.to_records(),
            "betti_initial_exact": "upper bounds only",
            "order": self.order,
            "field": self.field,
        }


def depth_exact(
    graph: Graph, field: str = "Q", var_limit: int | None = None
) -> OracleReport:
    """Depth, projective dimension, regularity and extremal corners of
    ``S/J_G``, read off the squarefree initial ideal.

    >>> from beidepth.graph import path_graph
    >>> from beidepth.oracle import depth_exact
    >>> depth_exact(path_graph(3)).depth
    4
    """
    nvars = 2 * graph.n
    limit = DEFAULT_SETTINGS.oracle_var_limit if var_limit is None else var_limit
    if nvars > limit:
        raise OracleLimitExceeded(f"{nvars} variables exceed the oracle limit of {limit}")
    started = time.monotonic()
    generators = jg_generators(graph, field)
    initial: list[Monomial] = []
    if generators:
        basis = buchberger(generators)
        logger.debug("Gröbner basis of %d elements", len(basis))
        initial = initial_ideal(basis)
    table = betti_table(initial, nvars, field, limit)
    logger.debug("oracle finished in %.3fs", time.monotonic() - started)
    return OracleReport(
        n=graph.n,
        depth=table.depth,
        pd=table.pd,
        reg=table.reg,
        extremal=tuple(table.extremal_corners),
        betti_initial=table,
        order=DIAGONAL_LEX.name,
        field=field,
    )


def ideal_equal(
    first: Sequence[Poly], second: Sequence[Poly], order: TermOrder = DIAGONAL_LEX
) -> bool:
    """Whether both generator lists span the same ideal.

    >>> from sympy import Poly, symbols
    >>> from beidepth.oracle import ideal_equal
    >>> (x1,) = symbols("x1")
    >>> ideal_equal([Poly(x1, x1)], [Poly(2 * x1, x1)])
    True
    """
    first = [p for p in first if not p.is_zero]
    second = [p for p in second if not p.is_zero]
    if not first or not second:
        return not first and not second
    gens = first[0].gens
    domain = _ring_domain(first[0])

    def basis(polys: Sequence[Poly]) -> Any:
        return groebner(
            [p.as_expr() for p in polys], *gens, order=order.sympy_name, domain=domain
        )

    first_basis, second_basis = basis(first), basis(second)
    return all(second_basis.contains(p.as_expr()) for p in first) and all(
        first_basis.contains(p.as_expr()) for p in second
    )


def intersect_ideals(first: Sequence[Poly], second: Sequence[Poly]) -> list[Poly]:
    """Generators of the intersection, by eliminating ``t`` from
    ``t * first + (1 - t) * second``."""
    if not first or not second:
        return []
    gens = first[0].gens
    domain = _ring_domain(first[0])
    t = Dummy("t")
    combined = [t * p.as_expr() for p in first] + [(1 - t) * p.as_expr() for p in second]
    basis = groebner(combined, t, *gens, order="lex", domain=domain)
    return [
        Poly(expr, *gens, domain=domain)
        for expr in basis.exprs
        if t not in expr.free_symbols
    ]


def check_neighborhood_split(graph: Graph, v: int, field: str = "Q") -> bool:
    """Check ``J_G = J_{G_v} ∩ ((x_v, y_v) + J_{G \\ v})`` for internal `v`."""
    if is_simplicial(graph, v):
        raise ValueError(f"vertex {v} is not internal")
    n = graph.n
    gens = polynomial_ring(n)
    domain = _domain(field)
    completed = jg_generators(complete_neighborhood(graph, v), field)
    rest = delete_vertex(graph, v)
    split = [
        Poly(gens[v - 1], *gens, domain=domain),
        Poly(gens[n + v - 1], *gens, domain=domain),
        *(
            _binomial(n, rest.labels[i - 1], rest.labels[j - 1], field)
            for i, j in rest.graph.edges()
        ),
    ]
    return ideal_equal(jg_generators(graph, field), intersect_ideals(completed, split))


__all__ = [
    "DEGREVLEX",
    "DIAGONAL_LEX",
    "BettiTable",
    "NonSquarefreeError",
    "OracleLimitExceeded",
    "OracleReport",
    "TermOrder",
    "betti_table",
    "buchberger",
    "check_neighborhood_split",
    "convolve_tables",
    "depth_exact",
    "ideal_equal",
    "initial_ideal",
    "intersect_ideals",
    "jg_generators",
    "polynomial_ring",
    "reduced_homology",
]
