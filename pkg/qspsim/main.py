"""Command-line entry point for qspsim."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from qspsim.config import get_settings
from qspsim.models.domain import SWEEP_COLUMNS, CommandType, RunConfig, TargetKind
from qspsim.numerics.base import HamiltonianParseError, NCapExceededError, QSPError
from qspsim.numerics.jacobi_anger import (
    bessel_j,
    choose_truncation,
    evolution_phase,
    target_series,
    truncation_table,
)
from qspsim.numerics.models import PhaseSequence, TruncationRow
from qspsim.numerics.phasefind import synthesize
from qspsim.numerics.qsp_engine import simulate
from qspsim.numerics.trigpoly import fourier_target
from qspsim.numerics.walk import build_walk, eigenphase_check
from qspsim.services.hamiltonian_io import parse_hamiltonian_file
from qspsim.services.report_writer import ReportWriter
from qspsim.workers.sweep_worker import run_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BAD_INPUT = 2


def _float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.replace(",", " ").split()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    """Argument parser; unset flags are omitted so --config values survive."""
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=Path, help="JSON file with RunConfig fields")
    common.add_argument("--out", dest="out_path", type=Path, help="Output file (default stdout)")
    common.add_argument("--eps", type=float, help="Target accuracy in (0, 1)")
    common.add_argument("--log-level", help="Logging level (default from QSPSIM_LOG_LEVEL)")

    parser = argparse.ArgumentParser(
        prog="qspsim",
        description="Hamiltonian simulation by quantum signal processing at matrix level",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    phases = commands.add_parser(
        "phases", parents=[common], argument_default=argparse.SUPPRESS,
        help="Compile e^{-iτ sin θ} into a phase sequence",
    )
    phases.add_argument("--tau", type=float)
    phases.add_argument("--target", type=TargetKind, choices=list(TargetKind))

    sim = commands.add_parser(
        "simulate", parents=[common], argument_default=argparse.SUPPRESS,
        help="Simulate a Hamiltonian file and certify the error bounds",
    )
    sim.add_argument("--hamiltonian", dest="hamiltonian_path", type=Path)
    sim.add_argument("--time", type=float)

    sweep = commands.add_parser(
        "sweep", parents=[common], argument_default=argparse.SUPPRESS,
        help="Simulate random instances over a (τ, ε) grid and write CSV",
    )
    sweep.add_argument("--tau-list", type=_float_list)
    sweep.add_argument("--eps-list", type=_float_list)
    sweep.add_argument("--trials", type=int)
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--qubits", type=int)
    sweep.add_argument("--sparsity", type=int)
    sweep.add_argument("--jobs", type=int, help="Concurrent runs (default QSPSIM_JOBS)")

    walk = commands.add_parser(
        "walk-check", parents=[common], argument_default=argparse.SUPPRESS,
        help="Compare walk eigenphases with the Hamiltonian spectrum",
    )
    walk.add_argument("--hamiltonian", dest="hamiltonian_path", type=Path)

    bessel = commands.add_parser(
        "bessel", parents=[common], argument_default=argparse.SUPPRESS,
        help="Bessel values J_0..J_kmax by backward recurrence",
    )
    bessel.add_argument("--tau", type=float)
    bessel.add_argument("--kmax", type=int)

    table = commands.add_parser(
        "table", parents=[common], argument_default=argparse.SUPPRESS,
        help="Truncation order table N(τ, ε) as CSV",
    )
    table.add_argument("--tau-list", type=_float_list)
    table.add_argument("--eps-list", type=_float_list)
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge the --config file with explicitly given flags (flags win).

    Raises:
        ValidationError: If the merged values are not a valid RunConfig
        ValueError: If the config file is unreadable or not a JSON object
    """
    flags = vars(args).copy()
    flags.pop("log_level", None)
    config_path = flags.pop("config", None)
    values: dict[str, Any] = {}
    if config_path is not None:
        try:
            loaded = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ValueError(f"cannot read config {config_path}: {e}") from e
        if not isinstance(loaded, dict):
            raise ValueError(f"config {config_path} must hold a JSON object")
        values.update(loaded)
    values.update(flags)
    return RunConfig.model_validate(values)


def run_phases(config: RunConfig, writer: ReportWriter) -> int:
    settings = get_settings()
    plan = choose_truncation(config.tau, config.eps)
    if plan.N > settings.n_cap:
        raise NCapExceededError(plan.N, settings.n_cap)
    h = evolution_phase(plan.tau)
    if config.target == TargetKind.FOURIER:
        A, C = fourier_target(h, plan.q - 1)
    else:
        A, C = target_series(plan)

    if plan.N == 0:
        phases, diagnostics = PhaseSequence(), None
    else:
        phases, diagnostics = synthesize(
            A, C, config.eps, target=h, grid_size=settings.grid_size, n_cap=settings.n_cap
        )
    writer.write_json({"plan": plan, "phases": list(phases.phases), "diagnostics": diagnostics})
    return EXIT_OK if diagnostics is None or diagnostics.bounds_ok else EXIT_FAILURE


def run_simulate(config: RunConfig, writer: ReportWriter) -> int:
    settings = get_settings()
    H = parse_hamiltonian_file(config.hamiltonian_path)
    report = simulate(H, config.time, config.eps, n_cap=settings.n_cap)
    writer.write_json(report)
    return EXIT_OK if report.bounds_ok else EXIT_FAILURE


def run_sweep_command(config: RunConfig, writer: ReportWriter) -> int:
    jobs = config.jobs or get_settings().jobs
    result = run_sweep(config, jobs=jobs)
    writer.write_csv(result.rows, SWEEP_COLUMNS)
    for point, message in result.failures:
        logger.error(f"Sweep point tau={point.tau}, eps={point.eps}, trial={point.trial}: {message}")
    return EXIT_OK if result.bounds_ok else EXIT_FAILURE


def run_walk_check(config: RunConfig, writer: ReportWriter) -> int:
    H = parse_hamiltonian_file(config.hamiltonian_path)
    report = eigenphase_check(H, build_walk(H))
    writer.write_json(report)
    return EXIT_OK if report.bounds_ok else EXIT_FAILURE


def run_bessel(config: RunConfig, writer: ReportWriter) -> int:
    values = bessel_j(config.kmax, config.tau)
    # J_k beyond kmax still contribute to the identity, so recompute on a wide range
    full = bessel_j(config.kmax + 2 * int(config.tau) + 40, config.tau)
    writer.write_json(
        {
            "tau": config.tau,
            "kmax": config.kmax,
            "values": values.tolist(),
            "normalization": float(full[0] + 2 * full[2::2].sum()),
        }
    )
    return EXIT_OK


def run_table(config: RunConfig, writer: ReportWriter) -> int:
    rows = truncation_table(config.tau_list, config.eps_list)
    writer.write_csv(rows, list(TruncationRow.model_fields))
    ok = all(row.q_lower <= row.q and row.eps_bound <= row.eps for row in rows)
    return EXIT_OK if ok else EXIT_FAILURE


HANDLERS = {
    CommandType.PHASES: run_phases,
    CommandType.SIMULATE: run_simulate,
    CommandType.SWEEP: run_sweep_command,
    CommandType.WALK_CHECK: run_walk_check,
    CommandType.BESSEL: run_bessel,
    CommandType.TABLE: run_table,
}


def dispatch(config: RunConfig) -> int:
    """Run one command and map its outcome to an exit code.

    0 when every asserted bound holds, 1 on numerical errors or violated
    bounds, 2 on unreadable input.
    """
    writer = ReportWriter(config.out_path)
    try:
        return HANDLERS[config.command](config, writer)
    except HamiltonianParseError as e:
        logger.error(str(e))
        return EXIT_BAD_INPUT
    except (QSPError, ValueError) as e:
        logger.error(f"{config.command.value} failed: {e}", exc_info=True)
        return EXIT_FAILURE


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings()
    except ValidationError as e:
        print(f"invalid QSPSIM_* settings: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT

    level = getattr(args, "log_level", None) or settings.log_level
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        config = build_config(args)
    except (ValidationError, ValueError) as e:
        logger.error(f"invalid configuration: {e}")
        return EXIT_BAD_INPUT

    logger.info(f"Running {config.command.value}")
    return dispatch(config)


if __name__ == "__main__":
    sys.exit(main())
