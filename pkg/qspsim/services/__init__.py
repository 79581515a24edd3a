"""Input parsing and artifact output services."""

from qspsim.services.hamiltonian_io import parse_hamiltonian_file, random_hamiltonian
from qspsim.services.report_writer import ReportWriter

__all__ = [
    "ReportWriter",
    "parse_hamiltonian_file",
    "random_hamiltonian",
]
