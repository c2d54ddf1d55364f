"""
Dense pure-state simulator for a handful of qubits.

States are 1-D complex arrays of length 2**n. Qubit 0 is the most
significant bit of the basis index, so ``|b0 b1 b2>`` sits at index
``4*b0 + 2*b1 + b2``. Gates are 2x2 complex arrays. Every operation returns
a new array; inputs are never modified.
"""
from __future__ import annotations

from collections.abc import Sequence
from math import sqrt

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidArity,
    InvalidBit,
    NonUnitaryGate,
    QubitIndexOutOfRange,
    UnnormalizedState,
)

GATE_TOL = 1e-12
NORM_TOL = 1e-10
DETERMINISTIC_PROB = 1 - 1e-12

_SQRT2_INV = sqrt(0.5)  # correctly rounded; 1/sqrt(2) is one ulp low
_H = np.array([[_SQRT2_INV, _SQRT2_INV], [_SQRT2_INV, -_SQRT2_INV]], dtype=complex)
_I = np.eye(2, dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# gates already checked for unitarity, keyed by their raw bytes
_checked: set[bytes] = {_H.tobytes(), _I.tobytes(), _Z.tobytes()}


def hadamard() -> np.ndarray:
    return _H.copy()


def identity() -> np.ndarray:
    return _I.copy()


def pauli_z() -> np.ndarray:
    return _Z.copy()


def is_unitary(gate: np.ndarray, tol: float = GATE_TOL) -> bool:
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (2, 2) or not np.all(np.isfinite(gate)):
        return False
    return bool(np.max(np.abs(gate.conj().T @ gate - _I)) <= tol)


def check_gate(gate) -> np.ndarray:
    """Return ``gate`` as a complex 2x2 array, raising NonUnitaryGate if it isn't one."""
    gate = np.asarray(gate, dtype=complex)
    key = gate.tobytes() if gate.shape == (2, 2) else None
    if key in _checked:
        return gate
    if not is_unitary(gate):
        raise NonUnitaryGate(f"gate is not a 2x2 unitary within {GATE_TOL}: {gate!r}")
    _checked.add(key)
    return gate


def num_qubits(state: np.ndarray) -> int:
    dim = len(state)
    n = dim.bit_length() - 1
    if dim < 2 or dim != 1 << n:
        raise DimensionMismatch(f"state length {dim} is not a power of two >= 2")
    return n


def check_normalized(state: np.ndarray, tol: float = NORM_TOL) -> None:
    norm = np.linalg.norm(state)
    if not np.isfinite(norm) or abs(norm - 1) > tol:
        raise UnnormalizedState(f"state norm {norm!r} deviates from 1 by more than {tol}")


def basis_index(bits: Sequence[int]) -> int:
    index = 0
    for b in bits:
        if b not in (0, 1):
            raise InvalidBit(f"bits must be 0 or 1, got {b!r}")
        index = (index << 1) | int(b)
    return index


def basis_state(bits: Sequence[int]) -> np.ndarray:
    """Computational basis state ``|bits>`` with bits[0] as the most significant qubit."""
    bits = tuple(bits)
    if not bits:
        raise InvalidArity("basis_state needs at least one bit")
    state = np.zeros(1 << len(bits), dtype=complex)
    state[basis_index(bits)] = 1
    return state


def index_bits(index: int, n: int) -> tuple[int, ...]:
    return tuple((index >> (n - 1 - k)) & 1 for k in range(n))


def apply_1q(state: np.ndarray, gate, k: int) -> np.ndarray:
    """Apply a single-qubit ``gate`` to qubit ``k``, identity elsewhere."""
    state = np.asarray(state, dtype=complex)
    n = num_qubits(state)
    if not 0 <= k < n:
        raise QubitIndexOutOfRange(f"qubit {k} out of range for {n} qubits")
    gate = check_gate(gate)
    # split index into (high bits, qubit k, low bits) and contract the middle axis
    psi = state.reshape(1 << k, 2, 1 << (n - 1 - k))
    return (gate @ psi).reshape(-1)


def apply_layer(state: np.ndarray, gate) -> np.ndarray:
    """Apply the same single-qubit gate to every qubit."""
    state = np.asarray(state, dtype=complex)
    gate = check_gate(gate)
    for k in range(num_qubits(state)):
        state = apply_1q(state, gate, k)
    return state


def probabilities(state: np.ndarray) -> np.ndarray:
    return np.abs(np.asarray(state)) ** 2


def measure_all(state: np.ndarray, rng=None) -> tuple[int, ...]:
    """Sample every qubit in the computational basis.

    ``rng`` is anything with a ``random()`` method returning a float in
    [0, 1). When one outcome has probability at least ``1 - 1e-12`` it is
    returned without touching ``rng``; otherwise exactly one ``random()``
    call is made and the outcome is found by inverse CDF.
    """
    state = np.asarray(state, dtype=complex)
    n = num_qubits(state)
    check_normalized(state)
    probs = probabilities(state)
    top = int(np.argmax(probs))
    if probs[top] >= DETERMINISTIC_PROB:
        return index_bits(top, n)
    if rng is None:
        raise ValueError("measurement outcome is random but no rng was given")
    u = rng.random()
    cdf = np.cumsum(probs)
    index = int(np.searchsorted(cdf, u * cdf[-1], side="right"))
    # u*cdf[-1] can land on the last edge through rounding; skip zero-probability tails
    index = min(index, len(probs) - 1)
    while probs[index] == 0 and index > 0:
        index -= 1
    return index_bits(index, n)


def inner_product(a: np.ndarray, b: np.ndarray) -> complex:
    """<a|b>, conjugating ``a``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot take inner product of shapes {a.shape} and {b.shape}")
    return complex(np.vdot(a, b))
