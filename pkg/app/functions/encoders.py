"""
Encoders turning benchmark functions into low-bond-dimension Mps.

Grid convention: the function argument is the binary fraction
x = 0.q_1...q_n = q / 2^n in [0, 1). Every encoded state has unit l2 norm.
"""

import math
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import yaml
from pydantic import ValidationError

from app.core.config import settings
from app.core.errors import FunctionSpecError, SizeLimitError, UnsupportedFunctionError
from app.core.logger import get_logger
from app.functions.registry import sampled_functions
from app.linalg.dense import phase_matrix
from app.schemas.function import FunctionSpec
from app.schemas.policy import EXACT, TruncationPolicy
from app.tn.canonical import compress
from app.tn.chain import Mps
from app.tn.convert import basis_mps, product_mps, vector_to_mps

logger = get_logger("functions")

# CLI kind names to FunctionSpec kinds, with the parameters each one takes
_KINDS: Dict[str, str] = {
    "constant": "constant",
    "delta": "delta",
    "plane-wave": "plane_wave",
    "plane_wave": "plane_wave",
    "gaussian": "gaussian",
    "step": "step",
    "sampled": "sampled",
}
_PARAMETERS: Dict[str, Dict[str, type]] = {
    "constant": {},
    "delta": {"p": int},
    "plane_wave": {"k": float},
    "gaussian": {"mu": float, "s": float},
    "step": {"e": float},
    "sampled": {"id": str},
}


def step_threshold(spec: FunctionSpec) -> int:
    """First grid index with x >= e, computed exactly"""
    return math.ceil(Fraction(spec.e) * (1 << spec.n))


def _plane_wave(spec: FunctionSpec) -> Mps:
    # bit i contributes exp(2 pi i k q_i / 2^i)
    factors = [np.array([1.0, np.exp(2j * np.pi * spec.k / 2.0**i)]) / np.sqrt(2.0) for i in range(1, spec.n + 1)]
    return product_mps(factors)


def _step(spec: FunctionSpec) -> Mps:
    """
    Indicator of q >= T as a bond-2 comparator, most significant bit first.

    Bond state 0 means the prefix equals T's prefix, 1 means it is already
    larger; prefixes below T's have no path.
    """
    n = spec.n
    threshold = step_threshold(spec)
    support = (1 << n) - threshold
    if support <= 0:
        raise FunctionSpecError(f"step edge e={spec.e:g} leaves no grid point at n={n}")
    # spread 1/sqrt(support) evenly over the sites
    site_scale = math.exp(-math.log(support) / (2 * n))
    tensors = []
    for site in range(n):
        t_bit = (threshold >> (n - 1 - site)) & 1
        a = np.zeros((2, 2, 2), dtype=np.complex128)
        a[0, t_bit, 0] = 1.0
        if t_bit == 0:
            a[0, 1, 1] = 1.0
        a[1, :, 1] = 1.0
        if site == 0:
            a = a[:1]
        if site == n - 1:
            a = a.sum(axis=2, keepdims=True)
        tensors.append(a * site_scale)
    return Mps(tensors)


def _grid(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.float64) / (1 << n)


def _evaluate(spec: FunctionSpec) -> np.ndarray:
    n = spec.n
    dim = 1 << n
    if spec.kind == "constant":
        return np.ones(dim, dtype=np.complex128)
    if spec.kind == "delta":
        v = np.zeros(dim, dtype=np.complex128)
        v[spec.p] = 1.0
        return v
    if spec.kind == "plane_wave":
        if float(spec.k).is_integer():
            q = np.arange(dim, dtype=np.int64)
            return phase_matrix(q * (int(spec.k) % dim), n)
        return np.exp(2j * np.pi * spec.k * _grid(n))
    if spec.kind == "gaussian":
        return np.exp(-((_grid(n) - spec.mu) ** 2) / (2 * spec.s**2)).astype(np.complex128)
    if spec.kind == "step":
        return (np.arange(dim) >= step_threshold(spec)).astype(np.complex128)
    return np.asarray(sampled_functions.get(spec.expression)(_grid(n)), dtype=np.complex128)


def reference_vector(spec: FunctionSpec) -> np.ndarray:
    """
    Direct pointwise evaluation of a function on the grid, unit-normalized.

    Raises:
        SizeLimitError: For n above DECODE_MAX_QUBITS.
        FunctionSpecError: When the function vanishes on the grid.
    """
    if spec.n > settings.DECODE_MAX_QUBITS:
        raise SizeLimitError(f"reference vectors need n <= {settings.DECODE_MAX_QUBITS}, got n={spec.n}")
    v = _evaluate(spec)
    length = np.linalg.norm(v)
    if length == 0:
        raise FunctionSpecError(f"{spec.label} vanishes on the n={spec.n} grid")
    return v / length


def encode(spec: FunctionSpec, policy: TruncationPolicy = EXACT) -> Mps:
    """
    Unit-norm Mps of a function.

    Plane waves (any real k), deltas and constants are exact bond-1 product
    states and steps are exact bond-2 comparators, all valid for every n.
    Gaussians and sampled expressions are sampled and decomposed with
    ``policy``, which needs n <= SAMPLING_MAX_QUBITS.

    Args:
        spec: Function specification.
        policy: Truncation policy for the sampled and step encoders.

    Returns:
        The encoded state; its ``max_bond`` is the achieved bond dimension.

    Raises:
        UnsupportedFunctionError: For a sampled kind above the sampling cap.
    """
    if spec.kind == "constant":
        return product_mps([np.array([1.0, 1.0]) / np.sqrt(2.0)] * spec.n)
    if spec.kind == "delta":
        return basis_mps(spec.n, spec.p)
    if spec.kind == "plane_wave":
        return _plane_wave(spec)
    if spec.kind == "step":
        return compress(_step(spec), policy)

    if spec.n > settings.SAMPLING_MAX_QUBITS:
        raise UnsupportedFunctionError(
            f"{spec.label} has no analytic encoder; sampling needs n <= {settings.SAMPLING_MAX_QUBITS}, got n={spec.n}"
        )
    m = vector_to_mps(reference_vector(spec), policy)
    logger.debug(f"sampled {spec.label} at n={spec.n}: bond dims max {m.max_bond}")
    return m


def parse_function_spec(text: str, n: int) -> FunctionSpec:
    """
    Parse ``kind[:key=value[,key=value]]``.

    Kinds: constant, delta:p=, plane-wave:k=, gaussian:mu=,s=, step:e=,
    sampled:id=.

    Raises:
        FunctionSpecError: On unknown kinds or keys, bad values, or
            parameters outside their domains.
    """
    head, _, tail = text.strip().partition(":")
    kind = _KINDS.get(head.strip().lower())
    if kind is None:
        raise FunctionSpecError(f"unknown function kind {head!r} in {text!r}")
    allowed = _PARAMETERS[kind]
    values: Dict[str, Union[int, float, str]] = {}
    for item in filter(None, (part.strip() for part in tail.split(","))):
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise FunctionSpecError(f"bad parameter {item!r} for {head!r}; expected {sorted(allowed) or 'none'}")
        try:
            values[key] = allowed[key](raw.strip())
        except ValueError as exc:
            raise FunctionSpecError(f"bad value for {key!r} in {text!r}: {exc}") from exc
    missing = set(allowed) - set(values)
    if missing:
        raise FunctionSpecError(f"{head!r} needs {', '.join(sorted(missing))}")
    if "id" in values:
        values["expression"] = values.pop("id")
        sampled_functions.get(values["expression"])
    try:
        return FunctionSpec(kind=kind, n=n, **values)
    except ValidationError as exc:
        raise FunctionSpecError(f"invalid function {text!r}: {exc.errors()[0]['msg']}") from exc


def load_benchmark_functions(path: Optional[Union[str, Path]] = None) -> List[str]:
    """
    Function spec strings from the benchmark YAML file.

    Args:
        path: YAML file; defaults to BENCHMARK_FUNCTIONS_FILE.

    Returns:
        Spec strings in file order.
    """
    path = Path(path or settings.BENCHMARK_FUNCTIONS_FILE)
    with open(path, "r", encoding="utf-8") as f:
        config = yaml.safe_load(f) or {}
    entries = config.get("functions", [])
    specs = [entry["spec"] if isinstance(entry, dict) else str(entry) for entry in entries]
    if not specs:
        raise FunctionSpecError(f"no functions listed in {path}")
    logger.info(f"Loaded {len(specs)} benchmark functions from {path}")
    return specs
