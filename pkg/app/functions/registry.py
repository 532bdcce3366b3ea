from typing import Callable, Dict, List

import numpy as np

from app.core.errors import FunctionSpecError
from app.core.logger import get_logger

logger = get_logger("functions.registry")

Sampler = Callable[[np.ndarray], np.ndarray]


class SampledFunctionRegistry:
    """
    Named expressions for ``sampled`` function specs.

    Each expression maps grid points x in [0, 1) to complex values.
    """

    def __init__(self) -> None:
        self._samplers: Dict[str, Sampler] = {}
        self._descriptions: Dict[str, str] = {}

    def register(self, name: str, description: str = "") -> Callable[[Sampler], Sampler]:
        """
        Decorator registering an expression under ``name``.

        Args:
            name: Expression id used in ``sampled:id=<name>``.
            description: Short formula shown by the CLI.
        """

        def decorator(fn: Sampler) -> Sampler:
            if name in self._samplers:
                raise FunctionSpecError(f"expression {name!r} is already registered")
            self._samplers[name] = fn
            self._descriptions[name] = description
            logger.debug(f"Registered sampled expression: {name}")
            return fn

        return decorator

    def get(self, name: str) -> Sampler:
        """
        Look up an expression.

        Raises:
            FunctionSpecError: For an unknown id.
        """
        try:
            return self._samplers[name]
        except KeyError:
            raise FunctionSpecError(f"unknown sampled expression {name!r}; known: {', '.join(self.names())}")

    def describe(self, name: str) -> str:
        self.get(name)
        return self._descriptions[name]

    def names(self) -> List[str]:
        return sorted(self._samplers)

    def __contains__(self, name: str) -> bool:
        return name in self._samplers


# Create global registry instance
sampled_functions = SampledFunctionRegistry()


@sampled_functions.register("cosine", "cos(2 pi 3x)")
def _cosine(x: np.ndarray) -> np.ndarray:
    return np.cos(2 * np.pi * 3 * x).astype(np.complex128)


@sampled_functions.register("sine-mix", "sin(2 pi 3x) + sin(2 pi 7x) / 2")
def _sine_mix(x: np.ndarray) -> np.ndarray:
    return (np.sin(2 * np.pi * 3 * x) + 0.5 * np.sin(2 * np.pi * 7 * x)).astype(np.complex128)


@sampled_functions.register("quadratic", "(x - 1/2)^2")
def _quadratic(x: np.ndarray) -> np.ndarray:
    return ((x - 0.5) ** 2).astype(np.complex128)


@sampled_functions.register("chirp", "exp(i pi 16 x^2)")
def _chirp(x: np.ndarray) -> np.ndarray:
    return np.exp(1j * np.pi * 16 * x**2)
