"""Simulation of the quantized three-card game."""

from .entanglement import check_product, purity, reduce_to_qubit, separability_report
from .game import Strategy, exact_analysis, monte_carlo, play_round
from .oracle import apply_oracle, build_oracle, phase_factor_gate
from .query import expected_stage_states, hu_h_matrix, run_query

__all__ = [
    "Strategy",
    "apply_oracle",
    "build_oracle",
    "check_product",
    "exact_analysis",
    "expected_stage_states",
    "hu_h_matrix",
    "monte_carlo",
    "phase_factor_gate",
    "play_round",
    "purity",
    "reduce_to_qubit",
    "run_query",
    "separability_report",
]
