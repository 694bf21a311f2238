import io
import logging
import unittest

import pytest

from beidepth.config import Settings
from beidepth.graph import cycle_graph, from_edge_list
from beidepth.sweep import (
    MAX_SWEEP_N,
    SweepLimitExceeded,
    SweepReport,
    check_graph,
    decode_resume_token,
    encode_resume_token,
    schedule,
    sweep,
)

__doctests__ = ["beidepth.sweep"]  # for trial support

SETTINGS = Settings(16, None, 6, "WARNING")
FAN = from_edge_list(6, [(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (3, 6), (4, 6)])


class CheckGraphTest(unittest.TestCase):
    def test_without_oracle(self):
        record = check_graph("Ch", position=7, index=1)
        self.assertEqual(record["tag"], "gap-zero-cut-vertex")
        self.assertEqual(record["prediction"]["exact"], 5)
        self.assertEqual(record["consistency"], "skip")
        self.assertIsNone(record["oracle"])
        self.assertEqual((record["position"], record["index"], record["n"]), (7, 1, 4))
        self.assertEqual(record["checks"], {})

    def test_complete_graph(self):
        record = check_graph("Bw", with_oracle=True)
        self.assertIsNone(record["tag"])
        self.assertIsNone(record["prediction"])
        self.assertEqual(record["oracle"]["depth"], 4)
        self.assertEqual(record["char2_depth"], 4)
        self.assertEqual(record["consistency"], "ok")

    def test_gap_zero_corner(self):
        record = check_graph("Ch", with_oracle=True)
        self.assertEqual(record["checks"], {"bounds": True, "corner": True, "block_formula": True})
        self.assertFalse(record["probe"])

    def test_generic_bounds(self):
        # C4: no exact rule, the oracle only has to land inside the bounds
        record = check_graph(cycle_graph(4).to_graph6(), with_oracle=True)
        self.assertIsNone(record["prediction"]["exact"])
        self.assertEqual(record["oracle"]["depth"], 4)
        self.assertEqual(record["consistency"], "ok")

    def test_gap_one_checks(self):
        record = check_graph(FAN.to_graph6())
        self.assertEqual(record["tag"], "kappa1-chordal-fan")
        self.assertEqual(record["checks"], {"structure": True, "feasible": True})
        self.assertEqual(record["fan_variants"], ["kappa1-chordal-fan"])

    def test_records_are_plain_json(self):
        record = check_graph("Ch")
        self.assertIsInstance(record["prediction"]["certificate"]["detail"], dict)
        self.assertEqual(check_graph("Ch"), record)


class ResumeTokenTest(unittest.TestCase):
    def test_round_trip(self):
        token = encode_resume_token(5, False, 12)
        self.assertEqual(decode_resume_token(token), (5, False, 12))

    def test_malformed(self):
        with pytest.raises(ValueError, match="malformed"):
            decode_resume_token("???")
        with pytest.raises(ValueError, match="malformed"):
            decode_resume_token(encode_resume_token(5, False, 0)[:-4])


class ScheduleTest(unittest.TestCase):
    def test_positions(self):
        items = schedule(5)
        self.assertEqual(len(items), 2 + 6 + 21)
        self.assertEqual([item[0] for item in items], list(range(29)))
        self.assertEqual(items[2][1:3], (4, 0))
        self.assertEqual(items[-1][1:3], (5, 20))


class SweepTest(unittest.TestCase):
    def test_summary(self):
        report = sweep(4, settings=SETTINGS)
        summary = report.summary
        self.assertEqual(summary["graphs"], 8)
        self.assertEqual(summary["by_n"], {"3": 2, "4": 6})
        self.assertEqual(
            summary["tags"],
            {"gap-zero-connected": 1, "gap-zero-cut-vertex": 4, "unclassified": 1},
        )
        self.assertEqual(summary["exact"], 5)
        self.assertEqual(summary["consistency"], {"skip": 8})
        self.assertEqual((summary["complete"], summary["resume"]), (True, None))
        self.assertEqual(summary["counterexamples"], [])
        self.assertEqual(summary["char2_disagreements"], [])

    def test_resume_and_merge(self):
        first = sweep(5, settings=SETTINGS, max_graphs=10)
        self.assertFalse(first.complete)
        self.assertEqual(len(first.records), 10)
        self.assertEqual(first.next_position, 10)
        rest = sweep(5, settings=SETTINGS, resume=first.resume_token)
        self.assertTrue(rest.complete)
        self.assertEqual(len(rest.records), 19)
        self.assertEqual(first.merge(rest), sweep(5, settings=SETTINGS))
        self.assertEqual(rest.merge(first), first.merge(rest))

    def test_wrong_resume_token(self):
        token = encode_resume_token(6, False, 3)
        with pytest.raises(ValueError, match="different sweep"):
            sweep(5, settings=SETTINGS, resume=token)

    def test_merge_other_sweep(self):
        with pytest.raises(ValueError, match="same sweep"):
            SweepReport(4, False).merge(SweepReport(5, False))

    def test_jsonl(self):
        report = sweep(4, settings=SETTINGS, max_graphs=5)
        stream = io.StringIO()
        report.write_jsonl(stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(len(lines), 6)
        self.assertIn('"summary"', lines[-1])
        stream.seek(0)
        restored = SweepReport.read_jsonl(stream)
        self.assertEqual(restored, report)
        self.assertEqual(restored.next_position, 5)

    def test_jsonl_without_summary(self):
        with pytest.raises(ValueError, match="summary"):
            SweepReport.read_jsonl(io.StringIO('{"position": 0}\n'))

    def test_limits(self):
        with pytest.raises(SweepLimitExceeded):
            sweep(MAX_SWEEP_N + 1, settings=SETTINGS)
        with pytest.raises(SweepLimitExceeded, match="oracle"):
            sweep(7, True, settings=SETTINGS)
        with pytest.raises(ValueError, match="3 vertices"):
            sweep(2, settings=SETTINGS)

    def test_parallel_matches_serial(self):
        self.assertEqual(sweep(4, settings=SETTINGS, jobs=2), sweep(4, settings=SETTINGS))

    def test_repr(self):
        self.assertEqual(
            repr(SweepReport(4, True)),
            "SweepReport(n_max=4, with_oracle=True, graphs=0, complete=True)",
        )


def test_budget_stops_the_sweep(caplog):
    settings = SETTINGS._replace(sweep_budget=1e-9)
    with caplog.at_level(logging.WARNING, logger="beidepth.sweep"):
        report = sweep(4, settings=settings)
    assert report.records == []
    assert report.next_position == 0
    assert decode_resume_token(report.resume_token) == (4, False, 0)
    assert "budget" in caplog.text


def test_oracle_sweep_five():
    report = sweep(5, True, settings=SETTINGS)
    assert len(report.records) == 29
    assert report.counterexamples == []
    assert "mismatch" not in report.summary["consistency"]
    assert all("char2_depth" in record for record in report.records)
    assert report.summary["char2_disagreements"] == []


@pytest.mark.slow
def test_oracle_sweep_six():
    report = sweep(6, True, settings=SETTINGS, jobs=4)
    assert report.summary["by_n"]["6"] == 112
    assert report.counterexamples == []


@pytest.mark.slow
def test_combinatorial_sweep_seven():
    report = sweep(7, settings=SETTINGS, jobs=4)
    assert report.summary["graphs"] == 2 + 6 + 21 + 112 + 853
    assert report.counterexamples == []
