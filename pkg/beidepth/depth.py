"""
Depth of ``S/J_G`` from graph structure alone.

Every connected non-complete graph satisfies
``d + f <= depth(S/J_G) <= n + 2 - kappa``. :func:`predict_depth` narrows
these bounds and returns an exact value whenever a structural rule applies.
Each result names the rule that produced it.
"""

from __future__ import annotations

import enum
import logging
from typing import TYPE_CHECKING, Any, NamedTuple

from beidepth.classify import ClassTag, classify
from beidepth.graph import Graph, invariants, is_complete, require_connected
from beidepth.structure import (
    BlockKind,
    block_profile,
    chain_of_cliques,
    is_cycle,
    is_decomposable,
    is_unicyclic,
)

if TYPE_CHECKING:
    from collections.abc import Mapping

logger = logging.getLogger(__name__)


class Rule(str, enum.Enum):
    GAP_ZERO = "gap-zero"
    KAPPA1_CHORDAL = "kappa1-chordal"
    KAPPA1_CHORDAL_FAN = "kappa1-chordal-fan"
    KAPPA1_SQUARE_CUT = "kappa1-square-cut"
    KAPPA1_SQUARE_NO_CUT = "kappa1-square-no-cut"
    DIAMETER_TWO = "diameter-two"
    KAPPA2_TWIN_PATHS_BARE = "kappa2-twin-paths-bare"
    KAPPA2_CHORDAL = "kappa2-chordal"
    KAPPA2_NONCHORDAL = "kappa2-nonchordal"
    GENERALIZED_BLOCK = "generalized-block"
    DECOMPOSITION = "decomposition"
    CLIQUE_CHAIN_LOWER_BOUND = "clique-chain-lower-bound"
    UNICYCLIC_BOUNDS = "unicyclic-bounds"
    GENERIC = "generic"


EXACT_RULES = frozenset(
    {
        Rule.GAP_ZERO,
        Rule.KAPPA1_CHORDAL,
        Rule.KAPPA1_CHORDAL_FAN,
        Rule.KAPPA1_SQUARE_CUT,
        Rule.KAPPA1_SQUARE_NO_CUT,
        Rule.DIAMETER_TWO,
        Rule.KAPPA2_TWIN_PATHS_BARE,
        Rule.KAPPA2_CHORDAL,
        Rule.KAPPA2_NONCHORDAL,
        Rule.GENERALIZED_BLOCK,
        Rule.DECOMPOSITION,
    }
)


class InconsistentPredictionError(RuntimeError):
    """Two applicable depth rules produced different values."""


class DepthResult(NamedTuple):
    lower: int
    upper: int
    exact: int | None

    #: The rule that produced ``exact``, or the one that set the bounds.
    rule: Rule

    #: Class tag and rule witnesses.
    certificate: Mapping[str, Any]

    def as_dict(self) -> dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "rule": self.rule.value,
            "certificate": dict(self.certificate),
        }


def _check_input(graph: Graph) -> None:
    require_connected(graph)
    if is_complete(graph):
        raise ValueError("complete graphs are outside the depth rules")


def depth_bounds(graph: Graph) -> tuple[int, int]:
    """``(d + f, n + 2 - kappa)``; unicyclic graphs other than cycles have
    depth ``n`` or ``n + 1`` as well.

    >>> from beidepth.graph import path_graph
    >>> from beidepth.depth import depth_bounds
    >>> depth_bounds(path_graph(5))
    (6, 6)
    """
    _check_input(graph)
    bundle = invariants(graph)
    lower, upper = bundle.d + bundle.f, bundle.n + 2 - bundle.kappa
    if is_unicyclic(graph) and not is_cycle(graph):
        lower, upper = max(lower, bundle.n), min(upper, bundle.n + 1)
    return lower, upper


class GeneralizedBlockDepth(NamedTuple):
    depth: int

    #: Whether the depth equals ``d + f``, i.e. ``m + 1 == d``.
    attains_lower_bound: bool


def generalized_block_depth(graph: Graph) -> GeneralizedBlockDepth:
    """``n + 1 - sum((i - 1) * a_i)`` over the minimal cut set counts.

    >>> from beidepth.graph import star_graph
    >>> from beidepth.depth import generalized_block_depth
    >>> generalized_block_depth(star_graph(4)).depth
    5
    """
    profile = block_profile(graph)
    if profile.kind is BlockKind.NEITHER:
        raise ValueError("not a generalized block graph")
    depth = graph.n + 1 - sum((i - 1) * count for i, count in profile.a.items())
    bundle = invariants(graph)
    return GeneralizedBlockDepth(depth, profile.m + 1 == bundle.d)


def _part_depth(part: Graph) -> tuple[int, int, int | None]:
    if is_complete(part):
        return part.n + 1, part.n + 1, part.n + 1
    result = predict_depth(part)
    return result.lower, result.upper, result.exact


def clique_chain_lower_bound(graph: Graph) -> int | None:
    """``d + f + 1`` for a chain of cliques whose overlaps all have size at
    least two and where two consecutive overlaps meet.

    Chains glued at a single vertex are first split there, and the bound is
    assembled from the parts. ``None`` when no part qualifies.
    """
    chain = chain_of_cliques(graph)
    if chain is None:
        return None
    if all(q >= 2 for q in chain.q) and any(chain.overlap_nonempty):
        bundle = invariants(graph)
        return bundle.d + bundle.f + 1
    decomposition = is_decomposable(graph)
    if decomposition is None:
        return None
    bounds = []
    used = False
    for part in (p.graph for p in decomposition.parts):
        if is_complete(part):
            bounds.append(part.n + 1)
            continue
        bound = clique_chain_lower_bound(part)
        if bound is None:
            bundle = invariants(part)
            bounds.append(bundle.d + bundle.f)
        else:
            used = True
            bounds.append(bound)
    return sum(bounds) - 2 if used else None


_CLASS_RULES = {
    ClassTag.GAP_ZERO_CUT_VERTEX: Rule.GAP_ZERO,
    ClassTag.GAP_ZERO_CONNECTED: Rule.GAP_ZERO,
    ClassTag.KAPPA1_CHORDAL: Rule.KAPPA1_CHORDAL,
    ClassTag.KAPPA1_CHORDAL_FAN: Rule.KAPPA1_CHORDAL_FAN,
    ClassTag.KAPPA1_SQUARE_CUT: Rule.KAPPA1_SQUARE_CUT,
    ClassTag.KAPPA1_SQUARE_NO_CUT: Rule.KAPPA1_SQUARE_NO_CUT,
    ClassTag.DIAMETER_TWO: Rule.DIAMETER_TWO,
    ClassTag.KAPPA2_TWIN_PATHS_BARE: Rule.KAPPA2_TWIN_PATHS_BARE,
    ClassTag.KAPPA2_CHORDAL: Rule.KAPPA2_CHORDAL,
    ClassTag.KAPPA2_NONCHORDAL: Rule.KAPPA2_NONCHORDAL,
}


def _class_value(rule: Rule, n: int, d: int, f: int, kappa: int) -> int:
    if rule is Rule.GAP_ZERO:
        return d + f
    if rule in (Rule.KAPPA1_CHORDAL, Rule.KAPPA1_SQUARE_CUT):
        return n + 1
    if rule is Rule.DIAMETER_TWO:
        return n + 2 - kappa
    if rule is Rule.KAPPA2_TWIN_PATHS_BARE:
        return n - 1
    return n


def predict_depth(graph: Graph) -> DepthResult:
    """Bounds and, where a rule applies, the exact depth of ``S/J_G``.

    Every applicable exact rule is evaluated, including additivity over a
    simplicial cut vertex, and the values must agree. Precedence for the
    reported rule: class rule, generalized block formula, decomposition.

    >>> from beidepth.graph import cycle_graph
    >>> from beidepth.depth import predict_depth
    >>> result = predict_depth(cycle_graph(4))
    >>> (result.lower, result.upper, result.exact, result.rule.value)
    (2, 4, None, 'generic')
    """
    _check_input(graph)
    bundle = invariants(graph)
    n, d, f, kappa = bundle.n, bundle.d, bundle.f, bundle.kappa
    lower, upper = depth_bounds(graph)
    bounds_rule = Rule.GENERIC if (lower, upper) == (d + f, n + 2 - kappa) else Rule.UNICYCLIC_BOUNDS
    label = classify(graph)
    certificate: dict[str, Any] = {"class": label.tag.value, "detail": dict(label.detail)}
    candidates: list[tuple[Rule, int]] = []

    rule = _CLASS_RULES.get(label.tag)
    if rule is not None:
        candidates.append((rule, _class_value(rule, n, d, f, kappa)))

    profile = block_profile(graph)
    if profile.kind is not BlockKind.NEITHER:
        candidates.append((Rule.GENERALIZED_BLOCK, generalized_block_depth(graph).depth))
        certificate["a"] = {str(i): count for i, count in profile.a.items()}

    decomposition = is_decomposable(graph)
    if decomposition is not None:
        parts = [_part_depth(p.graph) for p in decomposition.parts]
        certificate["decomposition"] = {
            "vertex": decomposition.vertex,
            "parts": [sorted(p.labels) for p in decomposition.parts],
        }
        lower = max(lower, sum(p[0] for p in parts) - 2)
        upper = min(upper, sum(p[1] for p in parts) - 2)
        if all(p[2] is not None for p in parts):
            candidates.append((Rule.DECOMPOSITION, sum(p[2] for p in parts) - 2))  # type: ignore[misc]

    chain_bound = clique_chain_lower_bound(graph)
    if chain_bound is not None and chain_bound > lower:
        lower = chain_bound
        bounds_rule = Rule.CLIQUE_CHAIN_LOWER_BOUND

    values = {value for _, value in candidates}
    if (
        lower > upper
        or len(values) > 1
        or any(not lower <= value <= upper for value in values)
    ):
        logger.error(
            "depth rules disagree on %s: %r within [%d, %d]",
            graph.to_graph6(), candidates, lower, upper,
        )
        raise InconsistentPredictionError(
            f"depth rules disagree: {[(r.value, v) for r, v in candidates]}"
            f" within [{lower}, {upper}]"
        )
    if candidates:
        rule, exact = candidates[0]
        certificate["agreeing_rules"] = [r.value for r, _ in candidates]
        return DepthResult(lower, upper, exact, rule, certificate)
    return DepthResult(lower, upper, None, bounds_rule, certificate)


__all__ = [
    "EXACT_RULES",
    "DepthResult",
    "GeneralizedBlockDepth",
    "InconsistentPredictionError",
    "Rule",
    "clique_chain_lower_bound",
    "depth_bounds",
    "generalized_block_depth",
    "predict_depth",
]
