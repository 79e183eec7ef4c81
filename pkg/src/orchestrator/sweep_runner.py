"""Fan-out of independent sweep chunks over a bounded worker pool."""
import asyncio
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.config import settings
from src.models import CheckResult
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

PanelResult = Tuple[List[CheckResult], List[dict]]
ChunkTask = Callable[[np.random.Generator], PanelResult]


@dataclass(frozen=True)
class SweepChunk:
    """One independent unit of a sweep; ``task`` receives its own seeded generator."""

    name: str
    task: ChunkTask


@dataclass
class SweepOutcome:
    """Checks and rows merged in chunk order."""

    checks: List[CheckResult] = field(default_factory=list)
    rows: List[dict] = field(default_factory=list)
    failed_chunks: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


COUNT_DETAILS = ("samples", "overlaps", "drawn", "requested", "rays", "checked")


def _merged_details(parts: Sequence[CheckResult]) -> Dict[str, object]:
    details = {**parts[0].details, "chunks": len(parts)}
    for key in COUNT_DETAILS:
        values = [p.details.get(key) for p in parts]
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
            details[key] = sum(values)
    return details


def merge_checks(checks: Sequence[CheckResult]) -> List[CheckResult]:
    """
    Collapse checks sharing a name, keeping first-appearance order.

    Count details are summed over the parts. Tally checks compare the summed count
    with the summed minimum; any other merged check passes only if every part passed
    and reports the worst measurement.
    """
    groups: Dict[str, List[CheckResult]] = {}
    for check in checks:
        groups.setdefault(check.name, []).append(check)

    merged = []
    for name, parts in groups.items():
        if len(parts) == 1:
            merged.append(parts[0])
            continue
        first = parts[0]
        details = _merged_details(parts)
        if all(p.is_tally for p in parts):
            count = sum(p.measured or 0.0 for p in parts)
            minimum = sum(p.bound or 0.0 for p in parts)
            merged.append(CheckResult(
                name=name,
                bound_formula=first.bound_formula,
                measured=count,
                bound=minimum,
                passed=count >= minimum,
                details=details,
            ))
            continue
        measured = [p.measured for p in parts if p.measured is not None]
        merged.append(CheckResult(
            name=name,
            bound_formula=first.bound_formula,
            measured=max(measured) if measured else None,
            bound=first.bound,
            passed=all(p.passed for p in parts),
            details=details,
        ))
    return merged


class SweepRunner:
    """Runs sweep chunks concurrently; a failing chunk becomes a failed check, never an abort."""

    def __init__(self, workers: Optional[int] = None, seed: Optional[int] = None):
        self.workers = workers or settings.workers
        self.seed = settings.seed if seed is None else seed

    def generators(self, count: int) -> List[np.random.Generator]:
        """Independent generators spawned from the run seed, one per chunk index."""
        return [np.random.default_rng(s) for s in np.random.SeedSequence(self.seed).spawn(count)]

    async def run(self, chunks: Sequence[SweepChunk]) -> SweepOutcome:
        """
        Run every chunk on the pool and merge the results by chunk index.

        Args:
            chunks: Independent sweep chunks

        Returns:
            SweepOutcome with merged checks, concatenated rows and the names of failed chunks
        """
        start = time.time()
        logger.info("sweep started", chunks=len(chunks), workers=self.workers)
        rngs = self.generators(len(chunks))
        loop = asyncio.get_running_loop()

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            tasks = [
                loop.run_in_executor(executor, chunk.task, rng)
                for chunk, rng in zip(chunks, rngs)
            ]
            results = await asyncio.gather(*tasks, return_exceptions=True)

        outcome = SweepOutcome()
        collected: List[CheckResult] = []
        for chunk, result in zip(chunks, results):
            if isinstance(result, BaseException):
                logger.warning("sweep chunk failed", chunk=chunk.name, error=str(result))
                outcome.failed_chunks.append(chunk.name)
                collected.append(CheckResult.flag(
                    f"{chunk.name}_completed",
                    False,
                    "chunk ran to completion",
                    error=f"{type(result).__name__}: {result}",
                ))
                continue
            checks, rows = result
            collected.extend(checks)
            outcome.rows.extend({"chunk": chunk.name, **row} for row in rows)

        outcome.checks = merge_checks(collected)
        logger.info(
            "sweep finished",
            chunks=len(chunks),
            failed=len(outcome.failed_chunks),
            passed=outcome.passed,
            elapsed=round(time.time() - start, 3),
        )
        return outcome

    def run_sync(self, chunks: Sequence[SweepChunk]) -> SweepOutcome:
        """Blocking wrapper around ``run`` for the command line."""
        return asyncio.run(self.run(chunks))


def split_samples(total: int, parts: int) -> List[int]:
    """Split a sample budget into ``parts`` near-equal positive counts."""
    parts = max(1, min(parts, total))
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]
