"""The one-shot quantum query: H layer, oracle, H layer, measure."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .oracle import PhaseOracle, UpperRow, _check_bit, apply_oracle, as_row
from .qsim import apply_layer, basis_state, hadamard, measure_all


@dataclass(frozen=True)
class QueryTranscript:
    """States after each circuit stage plus the measured row.

    ``stages[0]`` is ``|000>``, then the state after the first Hadamard
    layer, after the oracle, and after the second Hadamard layer.
    """

    stages: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    result: UpperRow


def run_query(oracle: PhaseOracle, rng=None) -> QueryTranscript:
    h = hadamard()
    initial = basis_state((0, 0, 0))
    spread = apply_layer(initial, h)
    marked = apply_oracle(oracle, spread)
    final = apply_layer(marked, h)
    # final is a basis state, so measure_all takes its no-draw path
    result = measure_all(final, rng)
    return QueryTranscript((initial, spread, marked, final), result)  # type: ignore[arg-type]


def hu_h_matrix(r_k: int) -> np.ndarray:
    """Closed form of H diag(1, e^{i pi r_k}) H: identity for 0, bit flip for 1."""
    phase = -1.0 if _check_bit(r_k) else 1.0
    return 0.5 * np.array(
        [[1 + phase, 1 - phase], [1 - phase, 1 + phase]], dtype=complex
    )


def _kron3(a, b, c) -> np.ndarray:
    return np.kron(np.kron(a, b), c)


def expected_stage_states(row: Sequence[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factored product states after the H layer, the oracle and the second H layer."""
    row = as_row(row)
    plus = np.array([1, 1], dtype=complex) / sqrt(2)
    marked = [np.array([1, -1.0 if r else 1.0], dtype=complex) / sqrt(2) for r in row]
    bits = [np.array([1 - r, r], dtype=complex) for r in row]
    return _kron3(plus, plus, plus), _kron3(*marked), _kron3(*bits)
