"""Tests for the sweep fan-out."""
import numpy as np
import pytest

from src.models import CheckResult
from src.orchestrator import SweepChunk, SweepRunner, merge_checks, split_samples
from src.utils.errors import ParameterError


def _panel(name, value, bound=1.0):
    def task(rng):
        return [CheckResult.below(name, value, bound, "value <= bound")], [{"value": value, "draw": float(rng.random())}]

    return task


def _broken(rng):
    raise ParameterError("d", -1.0, "d > 0")


@pytest.mark.asyncio
async def test_results_merge_in_chunk_order():
    """Test that results merge in chunk order."""
    runner = SweepRunner(workers=3, seed=7)
    chunks = [SweepChunk(f"c{i}", _panel("gap", 0.1 * i)) for i in range(5)]

    outcome = await runner.run(chunks)

    assert [row["chunk"] for row in outcome.rows] == ["c0", "c1", "c2", "c3", "c4"]
    assert len(outcome.checks) == 1
    assert outcome.checks[0].measured == pytest.approx(0.4)
    assert outcome.checks[0].details["chunks"] == 5
    assert outcome.passed


@pytest.mark.asyncio
async def test_failing_chunk_becomes_a_failed_check():
    """Test that a failing chunk becomes a failed check."""
    runner = SweepRunner(workers=2)
    chunks = [SweepChunk("good", _panel("gap", 0.5)), SweepChunk("bad", _broken)]

    outcome = await runner.run(chunks)

    assert outcome.failed_chunks == ["bad"]
    assert not outcome.passed
    failed = next(c for c in outcome.checks if c.name == "bad_completed")
    assert "ParameterError" in failed.details["error"]
    assert next(c for c in outcome.checks if c.name == "gap").passed


@pytest.mark.asyncio
async def test_runs_are_reproducible_for_a_seed():
    """Test that runs are reproducible for a seed."""
    chunks = [SweepChunk(f"c{i}", _panel("gap", 0.0)) for i in range(4)]

    first = await SweepRunner(workers=4, seed=11).run(chunks)
    second = await SweepRunner(workers=1, seed=11).run(chunks)
    other = await SweepRunner(workers=4, seed=12).run(chunks)

    assert [r["draw"] for r in first.rows] == [r["draw"] for r in second.rows]
    assert [r["draw"] for r in first.rows] != [r["draw"] for r in other.rows]


def test_run_sync_matches_async():
    """Test that the blocking wrapper matches the async run."""
    outcome = SweepRunner(workers=2, seed=3).run_sync([SweepChunk("only", _panel("gap", 2.0))])

    assert not outcome.passed
    assert outcome.checks[0].measured == 2.0


def test_merge_keeps_single_checks_untouched():
    """Test that single checks pass through merging untouched."""
    a = CheckResult.flag("a", True)
    b = CheckResult.below("b", 0.2, 1.0)

    assert merge_checks([a, b]) == [a, b]


def test_split_samples():
    """Test splitting a sample budget."""
    assert split_samples(10, 3) == [4, 3, 3]
    assert sum(split_samples(100_000, 7)) == 100_000
    assert split_samples(2, 5) == [1, 1]


def test_generators_are_independent():
    """Test that spawned generators are independent."""
    rngs = SweepRunner(seed=5).generators(3)
    draws = [rng.random() for rng in rngs]

    assert len(set(draws)) == 3
    assert np.all(np.array(draws) < 1.0)


def test_merge_sums_count_details():
    """Test that merged checks add up per-chunk sample counts."""
    parts = [CheckResult.below("gap", v, 1.0, samples=250, m=2) for v in (0.1, 0.3, 0.2, 0.0)]

    merged = merge_checks(parts)[0]

    assert merged.details["samples"] == 1000
    assert merged.details["m"] == 2
    assert merged.details["chunks"] == 4
    assert merged.measured == pytest.approx(0.3)


def test_merged_tally_is_judged_on_the_total():
    """Test that a tally with one empty chunk passes when the total reaches the minimum."""
    parts = [
        CheckResult.at_least("hits", 0, 2, overlaps=0),
        CheckResult.at_least("hits", 5, 2, overlaps=5),
        CheckResult.at_least("hits", 3, 2, overlaps=3),
    ]

    merged = merge_checks(parts)[0]

    assert not parts[0].passed
    assert merged.passed
    assert merged.measured == 8.0
    assert merged.bound == 6.0
    assert merged.details["overlaps"] == 8


def test_merged_tally_fails_below_the_total():
    """Test that a tally short of the summed minimum fails."""
    parts = [CheckResult.at_least("hits", 1, 2), CheckResult.at_least("hits", 2, 2)]

    assert not merge_checks(parts)[0].passed


@pytest.mark.asyncio
async def test_sweep_reports_total_samples():
    """Test that a chunked sweep reports the total sample count, not the first chunk's."""
    def task(count, rng):
        return [CheckResult.below("gap", 0.0, 1.0, samples=count)], []

    chunks = [SweepChunk(f"s{i}", lambda rng, n=n: task(n, rng)) for i, n in enumerate(split_samples(1000, 4))]

    outcome = await SweepRunner(workers=4, seed=1).run(chunks)

    assert outcome.checks[0].details["samples"] == 1000
