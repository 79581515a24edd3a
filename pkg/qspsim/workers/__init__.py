"""Concurrent sweep execution."""

from qspsim.workers.sweep_worker import SweepPoint, SweepResult, run_sweep, sweep_points

__all__ = ["SweepPoint", "SweepResult", "run_sweep", "sweep_points"]
