"""
Product-state checks via single-qubit marginals.

For a globally pure state, every single-qubit reduced density matrix has
purity 1 exactly when the state factors as a tensor product of one-qubit
states, so three purities decide separability of a 3-qubit pure state.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDensityMatrix, QubitIndexOutOfRange
from .qsim import check_normalized, num_qubits
from .query import QueryTranscript

DEFAULT_TOL = 1e-10
_DM_TOL = 1e-12


def reduce_to_qubit(state: np.ndarray, k: int) -> np.ndarray:
    """Partial trace over every qubit except ``k``."""
    state = np.asarray(state, dtype=complex)
    n = num_qubits(state)
    if not 0 <= k < n:
        raise QubitIndexOutOfRange(f"qubit {k} out of range for {n} qubits")
    check_normalized(state)
    psi = np.moveaxis(state.reshape((2,) * n), k, 0).reshape(2, -1)
    return psi @ psi.conj().T


def check_density_matrix(rho: np.ndarray, tol: float = _DM_TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2) or not np.all(np.isfinite(rho)):
        raise InvalidDensityMatrix(f"expected a finite 2x2 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidDensityMatrix("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise InvalidDensityMatrix(f"density matrix trace is {np.trace(rho)}")
    if np.min(np.linalg.eigvalsh(rho)) < -tol:
        raise InvalidDensityMatrix("density matrix has a negative eigenvalue")
    return rho


def purity(rho: np.ndarray) -> float:
    """tr(rho^2)."""
    rho = check_density_matrix(rho)
    # tr(rho rho) = sum |rho_ij|^2 for Hermitian rho; real by construction
    return float(np.sum(np.abs(rho) ** 2))


def check_product(state: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[bool, tuple[float, ...]]:
    purities = tuple(purity(reduce_to_qubit(state, k)) for k in range(num_qubits(state)))
    return all(p >= 1 - tol for p in purities), purities


@dataclass(frozen=True)
class StageReport:
    purities: tuple[float, ...]
    separable: bool


@dataclass(frozen=True)
class SeparabilityReport:
    stages: tuple[StageReport, ...]
    separable: bool


def separability_report(transcript: QueryTranscript, tol: float = DEFAULT_TOL) -> SeparabilityReport:
    stages = []
    for state in transcript.stages:
        ok, purities = check_product(state, tol)
        stages.append(StageReport(purities, ok))
    return SeparabilityReport(tuple(stages), all(s.separable for s in stages))
