"""
Exhaustive checks over every connected graph up to a given order.

Each graph goes through the same pure pipeline (:func:`check_graph`):
invariants, class, predicted depth and, optionally, the exact depth from
:mod:`beidepth.oracle`. The records of a run form a :class:`SweepReport`,
which streams to line-delimited JSON with the summary on the last line.
"""

from __future__ import annotations

import base64
import binascii
import enum
import json
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import IO, TYPE_CHECKING, Any

from beidepth._infra import _REPORT_SCHEMA_VERSION
from beidepth.classify import (
    ClassTag,
    check_structural_theorem,
    classify,
    fan_tag_variants,
    feasibility,
)
from beidepth.config import Settings, load_settings
from beidepth.depth import (
    InconsistentPredictionError,
    generalized_block_depth,
    predict_depth,
)
from beidepth.families import connected_graph6
from beidepth.graph import Graph, induced_cycle_scan, invariants, parse_graph6
from beidepth.oracle import OracleReport, depth_exact
from beidepth.structure import BlockKind, block_profile, is_cycle, is_unicyclic

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from beidepth.graph import InvariantBundle

logger = logging.getLogger(__name__)

#: Largest order a sweep accepts.
MAX_SWEEP_N = 7

#: Oracle runs up to this order are repeated over GF(2).
CHAR2_MAX_N = 5


class SweepLimitExceeded(ValueError):
    """The requested sweep is larger than the configured guard allows."""


class Consistency(str, enum.Enum):
    OK = "ok"
    MISMATCH = "mismatch"

    #: No oracle value to compare with.
    SKIP = "skip"

    #: Two depth rules disagreed before the oracle was consulted.
    INCONSISTENT = "inconsistent"


_FAILED = (Consistency.MISMATCH.value, Consistency.INCONSISTENT.value)
_FAN_TAGS = (ClassTag.KAPPA1_CHORDAL, ClassTag.KAPPA1_CHORDAL_FAN)


def _plain(value: Any) -> Any:
    # records must compare equal to what read_jsonl returns
    return json.loads(json.dumps(value, sort_keys=True))


def _oracle_checks(
    graph: Graph, bundle: InvariantBundle, tag: ClassTag, report: OracleReport
) -> dict[str, bool]:
    n, d, f, kappa = bundle.n, bundle.d, bundle.f, bundle.kappa
    depth = report.depth
    checks = {"bounds": d + f <= depth <= n + 2 - kappa}
    if bundle.gap == 0:
        corner = (n - 2 + kappa, n - 2 + kappa + d)
        checks["corner"] = corner in report.extremal
    if tag is ClassTag.KAPPA1_CHORDAL_FAN:
        checks["fan_witness"] = report.pd == n and report.betti_initial[n, n + d] != 0
    if block_profile(graph).kind is not BlockKind.NEITHER:
        block = generalized_block_depth(graph)
        checks["block_formula"] = block.depth == depth and (
            (depth == d + f) == block.attains_lower_bound
        )
    if is_unicyclic(graph) and not is_cycle(graph) and depth == d + f:
        checks["unicyclic"] = bundle.chordal or induced_cycle_scan(graph).count_c4 >= 1
    return checks


def check_graph(
    encoded: str,
    with_oracle: bool = False,
    var_limit: int | None = None,
    *,
    position: int | None = None,
    index: int | None = None,
) -> dict[str, Any]:
    """Run the classification and depth pipeline on one graph6 string.

    ``consistency`` is ``ok`` when the oracle depth equals the predicted
    exact value, or lies within the predicted bounds when no rule is exact.

    >>> from beidepth.sweep import check_graph
    >>> record = check_graph("Ch", with_oracle=True)
    >>> (record["tag"], record["prediction"]["exact"], record["consistency"])
    ('gap-zero-cut-vertex', 5, 'ok')
    """
    graph = parse_graph6(encoded)
    bundle = invariants(graph)
    record: dict[str, Any] = {
        "position": position,
        "n": graph.n,
        "index": index,
        "graph6": encoded,
        "invariants": bundle.as_dict(),
        "tag": None,
        "prediction": None,
        "oracle": None,
        "consistency": Consistency.SKIP.value,
        "checks": {},
        "probe": False,
    }
    checks: dict[str, bool] = record["checks"]
    tag = None
    prediction = None
    if not bundle.complete:
        tag = classify(graph).tag
        record["tag"] = tag.value
        try:
            prediction = predict_depth(graph)
        except InconsistentPredictionError as exc:
            record["consistency"] = Consistency.INCONSISTENT.value
            record["error"] = str(exc)
        else:
            record["prediction"] = prediction.as_dict()
        if tag in _FAN_TAGS:
            record["fan_variants"] = sorted(t.value for t in fan_tag_variants(graph))
        if bundle.gap == 1:
            checks["structure"] = check_structural_theorem(graph)
            checks["feasible"] = bundle.n >= 5 and feasibility(
                bundle.n, bundle.kappa, bundle.f, bundle.d
            )

    if with_oracle:
        report = depth_exact(graph, var_limit=var_limit)
        record["oracle"] = report.as_dict()
        if graph.n <= CHAR2_MAX_N:
            record["char2_depth"] = depth_exact(graph, "F2", var_limit).depth
        if bundle.complete:
            ok = report.depth == graph.n + 1
        elif prediction is None:
            ok = None
        elif prediction.exact is not None:
            ok = report.depth == prediction.exact
        else:
            ok = prediction.lower <= report.depth <= prediction.upper
        if ok is not None:
            record["consistency"] = (Consistency.OK if ok else Consistency.MISMATCH).value
        if tag is not None:
            checks.update(_oracle_checks(graph, bundle, tag, report))
            record["probe"] = (
                induced_cycle_scan(graph).has_long_cycle
                and report.depth == bundle.d + bundle.f
            )
    return _plain(record)


def _check_scheduled(
    item: tuple[int, int, int, str], with_oracle: bool, var_limit: int | None
) -> dict[str, Any]:
    position, _, index, encoded = item
    return check_graph(encoded, with_oracle, var_limit, position=position, index=index)


def schedule(n_max: int) -> list[tuple[int, int, int, str]]:
    """``(position, n, index, graph6)`` for every graph a sweep visits, in order."""
    items = []
    for n in range(3, n_max + 1):
        for index, encoded in enumerate(connected_graph6(n)):
            items.append((len(items), n, index, encoded))
    return items


def encode_resume_token(n_max: int, with_oracle: bool, position: int) -> str:
    payload = json.dumps(
        {"n_max": n_max, "with_oracle": with_oracle, "position": position}, sort_keys=True
    )
    return base64.urlsafe_b64encode(payload.encode("ascii")).decode("ascii")


def decode_resume_token(token: str) -> tuple[int, bool, int]:
    """``(n_max, with_oracle, position)`` of a resume token.

    >>> from beidepth.sweep import decode_resume_token, encode_resume_token
    >>> decode_resume_token(encode_resume_token(6, True, 40))
    (6, True, 40)
    """
    try:
        payload = json.loads(base64.urlsafe_b64decode(token))
        return int(payload["n_max"]), bool(payload["with_oracle"]), int(payload["position"])
    except (binascii.Error, ValueError, KeyError, TypeError) as exc:
        raise ValueError(f"malformed resume token {token!r}") from exc


class SweepReport:
    """Records of a sweep in schedule order, plus where an interrupted run
    stopped."""

    def __init__(
        self,
        n_max: int,
        with_oracle: bool,
        records: Iterable[dict[str, Any]] = (),
        next_position: int | None = None,
    ) -> None:
        self.n_max = n_max
        self.with_oracle = with_oracle
        self.records = sorted(records, key=lambda record: record["position"])
        self.next_position = next_position

    @property
    def complete(self) -> bool:
        return self.next_position is None

    @property
    def resume_token(self) -> str | None:
        if self.next_position is None:
            return None
        return encode_resume_token(self.n_max, self.with_oracle, self.next_position)

    @property
    def counterexamples(self) -> list[str]:
        """graph6 keys of records that fail a check or disagree with the oracle."""
        return [
            record["graph6"]
            for record in self.records
            if record["consistency"] in _FAILED or not all(record["checks"].values())
        ]

    @property
    def probe(self) -> list[str]:
        """Graphs with an induced cycle of length at least five whose depth
        still equals ``d + f``."""
        return [record["graph6"] for record in self.records if record["probe"]]

    @property
    def char2_disagreements(self) -> list[str]:
        """Reported only. A differing depth over GF(2) is not a failed check."""
        return [
            record["graph6"]
            for record in self.records
            if "char2_depth" in record
            and record["char2_depth"] != record["oracle"]["depth"]
        ]

    @property
    def summary(self) -> dict[str, Any]:
        tags = Counter(record["tag"] for record in self.records if record["tag"])
        consistency = Counter(record["consistency"] for record in self.records)
        return {
            "schema": _REPORT_SCHEMA_VERSION,
            "n_max": self.n_max,
            "with_oracle": self.with_oracle,
            "graphs": len(self.records),
            "by_n": {
                str(n): count
                for n, count in sorted(Counter(r["n"] for r in self.records).items())
            },
            "tags": dict(sorted(tags.items())),
            "exact": sum(
                1
                for record in self.records
                if record["prediction"] and record["prediction"]["exact"] is not None
            ),
            "consistency": dict(sorted(consistency.items())),
            "unstable_fan": sum(
                1 for record in self.records if len(record.get("fan_variants", ())) > 1
            ),
            "counterexamples": self.counterexamples,
            "char2_disagreements": self.char2_disagreements,
            "probe": self.probe,
            "complete": self.complete,
            "resume": self.resume_token,
        }

    def merge(self, other: SweepReport) -> SweepReport:
        """Combine two partial runs of the same sweep."""
        if (self.n_max, self.with_oracle) != (other.n_max, other.with_oracle):
            raise ValueError("only reports of the same sweep can be merged")
        by_position = {record["position"]: record for record in self.records}
        by_position.update((record["position"], record) for record in other.records)
        total = len(schedule(self.n_max))
        missing = next((p for p in range(total) if p not in by_position), None)
        return SweepReport(self.n_max, self.with_oracle, by_position.values(), missing)

    def iter_lines(self) -> Iterator[str]:
        for record in self.records:
            yield json.dumps(record, sort_keys=True)
        yield json.dumps({"summary": self.summary}, sort_keys=True)

    def write_jsonl(self, stream: IO[str]) -> None:
        for line in self.iter_lines():
            stream.write(line + "\n")

    @classmethod
    def read_jsonl(cls, stream: IO[str]) -> SweepReport:
        records = []
        summary = None
        for line in stream:
            if not line.strip():
                continue
            item = json.loads(line)
            if "summary" in item:
                summary = item["summary"]
            else:
                records.append(item)
        if summary is None:
            raise ValueError("report has no summary line")
        next_position = None
        if summary["resume"] is not None:
            next_position = decode_resume_token(summary["resume"])[2]
        return cls(summary["n_max"], summary["with_oracle"], records, next_position)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SweepReport):
            return NotImplemented
        return list(self.iter_lines()) == list(other.iter_lines())

    def __repr__(self) -> str:
        return (
            f"SweepReport(n_max={self.n_max}, with_oracle={self.with_oracle}, "
            f"graphs={len(self.records)}, complete={self.complete})"
        )


def _check_limits(n_max: int, with_oracle: bool, settings: Settings) -> None:
    if n_max < 3:
        raise ValueError("sweeps start at 3 vertices")
    if n_max > MAX_SWEEP_N:
        raise SweepLimitExceeded(f"n_max={n_max} exceeds the sweep limit of {MAX_SWEEP_N}")
    if with_oracle and n_max > settings.oracle_max_n:
        raise SweepLimitExceeded(
            f"n_max={n_max} exceeds the oracle sweep limit of {settings.oracle_max_n}"
        )


def sweep(
    n_max: int,
    with_oracle: bool = False,
    *,
    settings: Settings | None = None,
    jobs: int = 1,
    resume: str | None = None,
    max_graphs: int | None = None,
) -> SweepReport:
    """Run :func:`check_graph` over every connected graph with ``3..n_max``
    vertices.

    The run stops early, with a resume token, once ``settings.sweep_budget``
    seconds have passed or `max_graphs` graphs are done. A resumed run
    returns only the remaining records; :meth:`SweepReport.merge` joins the
    parts.
    """
    settings = load_settings() if settings is None else settings
    _check_limits(n_max, with_oracle, settings)
    start = 0
    if resume is not None:
        token_n, token_oracle, start = decode_resume_token(resume)
        if (token_n, token_oracle) != (n_max, with_oracle):
            raise ValueError("resume token belongs to a different sweep")
    items = schedule(n_max)[start:]
    stop = len(items) if max_graphs is None else min(len(items), max_graphs)
    deadline = None
    if settings.sweep_budget is not None:
        deadline = time.monotonic() + settings.sweep_budget
    worker = partial(
        _check_scheduled, with_oracle=with_oracle, var_limit=settings.oracle_var_limit
    )
    chunk = max(jobs, 1) * 4
    records: list[dict[str, Any]] = []
    reported_n = None
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while len(records) < stop:
            if deadline is not None and time.monotonic() >= deadline:
                logger.warning(
                    "sweep budget of %ss used up after %d graphs",
                    settings.sweep_budget,
                    len(records),
                )
                break
            batch = items[len(records) : min(stop, len(records) + chunk)]
            done = executor.map(worker, batch) if executor else map(worker, batch)
            records.extend(done)
            if batch[-1][1] != reported_n:
                reported_n = batch[-1][1]
                logger.info("sweep at n=%d, %d graphs done", reported_n, len(records))
    finally:
        if executor is not None:
            executor.shutdown()
    next_position = None if len(records) == len(items) else start + len(records)
    return SweepReport(n_max, with_oracle, records, next_position)


__all__ = [
    "CHAR2_MAX_N",
    "MAX_SWEEP_N",
    "Consistency",
    "SweepLimitExceeded",
    "SweepReport",
    "check_graph",
    "decode_resume_token",
    "encode_resume_token",
    "schedule",
    "sweep",
]
