"""Orchestrator package."""
from src.orchestrator.sweep_runner import SweepChunk, SweepOutcome, SweepRunner, merge_checks, split_samples

__all__ = ['SweepRunner', 'SweepChunk', 'SweepOutcome', 'merge_checks', 'split_samples']
