"""Benchmark functions and their Mps encoders."""

from app.functions.encoders import encode, load_benchmark_functions, parse_function_spec, reference_vector
from app.functions.registry import sampled_functions

__all__ = ["encode", "load_benchmark_functions", "parse_function_spec", "reference_vector", "sampled_functions"]
