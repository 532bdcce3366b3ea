"""
The QFT staircase circuit and the dense core operator Q_n.

Q_n maps |q_1..q_n> to the product over i of
(|0> + exp(2*pi*i * 0.q_i...q_n) |1>) / sqrt(2), and F_n = R_n Q_n with R_n
the bit reversal.
"""

from collections import Counter
from typing import Dict, List, Sequence

import numpy as np

from app.core.config import settings
from app.core.errors import MalformedLayerError
from app.linalg.dense import DenseUnitary, check_dense_size, phase_matrix
from app.schemas.circuit import GateLayer
from app.tn.zipup import HADAMARD


def qft_layers(n: int) -> List[GateLayer]:
    """
    Gate layers of Q_n in application order.

    For each site i: a Hadamard on i, then controlled phases CP(i, i+m, k=m+1)
    for m = 1..n-i in ascending target order. Phases with m beyond
    PHASE_FLUSH_DISTANCE are below double resolution and are not emitted.

    Args:
        n: Qubit count, n >= 1.

    Returns:
        Ordered layer list.
    """
    if n < 1:
        raise MalformedLayerError(f"n must be >= 1, got {n}")
    layers = []
    for i in range(1, n + 1):
        layers.append(GateLayer.hadamard(i))
        for m in range(1, min(n - i, settings.PHASE_FLUSH_DISTANCE) + 1):
            layers.append(GateLayer.controlled_phase(i, i + m, m + 1))
    return layers


def gate_count(layers: Sequence[GateLayer]) -> Dict[str, int]:
    """Number of layers per gate kind"""
    counts = Counter(layer.kind for layer in layers)
    return {"hadamard": counts.get("hadamard", 0), "controlled_phase": counts.get("controlled_phase", 0)}


def build_qn_dense(n: int) -> DenseUnitary:
    """
    Dense Q_n.

    Entry (p, q) is exp(2*pi*i * sum_i p_i * (q mod 2^(n-i+1)) / 2^(n-i+1)) / sqrt(N),
    evaluated from integer phase numerators over the common denominator 2^n.
    """
    check_dense_size(n)
    dim = 1 << n
    idx = np.arange(dim, dtype=np.int64)
    numerators = np.zeros((dim, dim), dtype=np.int64)
    for i in range(1, n + 1):
        p_bit = (idx >> (n - i)) & 1
        tail = (idx & ((1 << (n - i + 1)) - 1)) << (i - 1)
        numerators += np.multiply.outer(p_bit, tail)
    return DenseUnitary(n, phase_matrix(numerators, n) / np.sqrt(dim))


def circuit_to_dense(layers: Sequence[GateLayer], n: int) -> DenseUnitary:
    """
    Dense product of gate layers, the first layer acting first.

    Args:
        layers: Gate layers on sites 1..n.
        n: Qubit count.
    """
    check_dense_size(n)
    dim = 1 << n
    idx = np.arange(dim, dtype=np.int64)
    u = np.eye(dim, dtype=np.complex128).reshape((2,) * n + (dim,))
    for layer in layers:
        if any(not 1 <= site <= n for site in layer.sites):
            raise MalformedLayerError(f"layer {layer} touches a site outside 1..{n}")
        if layer.kind == "hadamard":
            axis = layer.site - 1
            u = np.moveaxis(np.tensordot(HADAMARD, u, axes=([1], [axis])), 0, axis)
        else:
            both = ((idx >> (n - layer.control)) & 1) & ((idx >> (n - layer.target)) & 1)
            phases = np.exp(1j * layer.angle * both)
            u = (phases[:, None] * u.reshape(dim, dim)).reshape(u.shape)
    return DenseUnitary(n, u.reshape(dim, dim))
