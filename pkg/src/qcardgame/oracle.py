"""Single-use phase oracle built from the hidden row of upper card faces."""
from __future__ import annotations

import threading
from collections.abc import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidArity, InvalidBit, OracleAlreadyConsumed
from .qsim import apply_1q, num_qubits

UpperRow = tuple[int, int, int]

ALL_ROWS: tuple[UpperRow, ...] = tuple(
    ((i >> 2) & 1, (i >> 1) & 1, i & 1) for i in range(8)
)


def _check_bit(bit) -> int:
    if isinstance(bit, bool) or bit not in (0, 1):
        raise InvalidBit(f"expected 0 or 1, got {bit!r}")
    return int(bit)


def as_row(bits: Sequence[int]) -> UpperRow:
    bits = tuple(bits)
    if len(bits) != 3:
        raise InvalidArity(f"an upper row has three bits, got {len(bits)}")
    return tuple(_check_bit(b) for b in bits)  # type: ignore[return-value]


def parse_row(text: str) -> UpperRow:
    """Parse a 3-character string such as ``"001"`` into ``(r0, r1, r2)``."""
    if len(text) != 3 or any(c not in "01" for c in text):
        raise InvalidBit(f"cards must be three characters over {{0,1}}, got {text!r}")
    return tuple(int(c) for c in text)  # type: ignore[return-value]


def format_row(row: Sequence[int]) -> str:
    return "".join(str(b) for b in row)


def phase_factor_gate(r_k: int) -> np.ndarray:
    """diag(1, e^{i pi r_k}) with the phase written as the exact value +1 or -1."""
    r_k = _check_bit(r_k)
    return np.diag([1.0, -1.0 if r_k else 1.0]).astype(complex)


class PhaseOracle:
    """Black box applying ``U0 (x) U1 (x) U2`` exactly once.

    The hidden row is kept private; game bookkeeping and tests read it
    through :attr:`hidden_row`, query code only ever calls
    :func:`apply_oracle`.
    """

    def __init__(self, row: Sequence[int]):
        self._row = as_row(row)
        self.factors = tuple(phase_factor_gate(b) for b in self._row)
        self._budget = 1
        self._lock = threading.Lock()

    @property
    def budget(self) -> int:
        return self._budget

    @property
    def hidden_row(self) -> UpperRow:
        return self._row

    def _consume(self) -> None:
        with self._lock:
            if self._budget < 1:
                raise OracleAlreadyConsumed("the oracle allows a single query")
            self._budget -= 1

    def __repr__(self) -> str:
        return f"PhaseOracle(budget={self._budget})"


def build_oracle(row: Sequence[int]) -> PhaseOracle:
    return PhaseOracle(row)


def apply_oracle(oracle: PhaseOracle, state: np.ndarray) -> np.ndarray:
    """Apply factor k to qubit k of a 3-qubit state, spending the oracle's query."""
    state = np.asarray(state, dtype=complex)
    if num_qubits(state) != 3:
        raise DimensionMismatch("the oracle acts on exactly three qubits")
    oracle._consume()
    for k, factor in enumerate(oracle.factors):
        state = apply_1q(state, factor, k)
    return state
