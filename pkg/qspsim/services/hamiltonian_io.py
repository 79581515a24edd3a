"""Reading Hamiltonian files and generating random sparse instances."""

import logging
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from qspsim.models.domain import HamiltonianFile
from qspsim.numerics.base import HamiltonianParseError
from qspsim.numerics.walk import SparseHamiltonian, from_entries

logger = logging.getLogger(__name__)


def _describe(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "<root>"
    return f"{location}: {first['msg']}"


def parse_hamiltonian_file(path: Path | str) -> SparseHamiltonian:
    """Load a JSON Hamiltonian of the form {"n", "d", "entries", "hermitize"}.

    Args:
        path: JSON file with entries given as [row, column, re, im]

    Returns:
        Validated SparseHamiltonian

    Raises:
        HamiltonianParseError: If the file is unreadable, malformed or an index
            is out of range
        NotHermitianError: If mirror entries disagree
        SparsityExceededError: If a row has more than d nonzeros
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise HamiltonianParseError(f"parse error: cannot read {path}: {e}") from e

    try:
        payload = HamiltonianFile.model_validate_json(text)
    except ValidationError as e:
        raise HamiltonianParseError(f"parse error: {_describe(e)}") from e

    triples = [(j, k, complex(re, im)) for j, k, re, im in payload.entries]
    try:
        H = from_entries(payload.n, payload.d, triples, hermitize=payload.hermitize)
    except (HamiltonianParseError, ValueError) as e:
        raise HamiltonianParseError(f"parse error: {e}") from e
    logger.info(f"Loaded Hamiltonian from {path}: n={H.n}, d={H.d}, {len(H.entries)} nonzeros")
    return H


def random_hamiltonian(n: int, d: int, rng: np.random.Generator) -> SparseHamiltonian:
    """Seeded d-sparse Hermitian matrix with entries in the complex unit disk.

    Pairs (j, k) with j ≤ k are visited in random order and accepted while
    both rows stay within d nonzeros. Diagonal entries are real in [−1, 1].
    """
    dimension = 2**n
    if not 1 <= d <= dimension:
        raise ValueError(f"sparsity d={d} must lie in [1, {dimension}]")
    rows, cols = np.triu_indices(dimension)
    order = rng.permutation(rows.size)
    counts = np.zeros(dimension, dtype=int)
    triples: list[tuple[int, int, complex]] = []
    for idx in order:
        j, k = int(rows[idx]), int(cols[idx])
        if counts[j] >= d or counts[k] >= d:
            continue
        if j == k:
            value = complex(rng.uniform(-1, 1))
        else:
            radius = np.sqrt(rng.uniform())
            value = complex(radius * np.exp(2j * np.pi * rng.uniform()))
        if value == 0:
            continue
        triples.append((j, k, value))
        counts[j] += 1
        if j != k:
            counts[k] += 1
    return from_entries(n, d, triples, hermitize=True)
