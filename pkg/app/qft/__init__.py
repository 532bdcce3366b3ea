"""The QFT as a dense operator, a gate staircase and a compressed Mpo."""

from app.qft.bounds import (
    bound_curve,
    coefficient_spread,
    error_envelope,
    fit_envelope_constant,
    operator_entanglement_entropy,
    theorem_bound,
    truncation_tail_norm,
)
from app.qft.circuit import build_qn_dense, circuit_to_dense, gate_count, qft_layers
from app.qft.mpo import build_qft_mpo, cut_profile, intermediate_excess, intermediate_spectra_report, mpo_cache

__all__ = [
    "bound_curve",
    "build_qft_mpo",
    "build_qn_dense",
    "circuit_to_dense",
    "coefficient_spread",
    "cut_profile",
    "error_envelope",
    "fit_envelope_constant",
    "gate_count",
    "intermediate_excess",
    "intermediate_spectra_report",
    "mpo_cache",
    "operator_entanglement_entropy",
    "qft_layers",
    "theorem_bound",
    "truncation_tail_norm",
]
