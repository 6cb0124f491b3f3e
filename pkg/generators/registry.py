"""
Generator registry.

Explicit registration and lookup of the available generator programs.
"""

from typing import Dict, Type

from generators.base import GeneratorProgram
from generators.expr_generator import ExprGenerator


class GeneratorRegistry:
    """Registry for available generator programs."""

    def __init__(self):
        self._generators: Dict[str, Type[GeneratorProgram]] = {}

    def register(self, generator_class: Type[GeneratorProgram]) -> None:
        """
        Register a generator class.

        Raises:
            ValueError: If a generator with this ID is already registered
        """
        generator_id = generator_class().generator_id
        if generator_id in self._generators:
            raise ValueError(f"Generator '{generator_id}' is already registered")
        self._generators[generator_id] = generator_class

    def get(self, generator_id: str) -> GeneratorProgram:
        """
        Instantiate a generator by ID.

        Raises:
            KeyError: If the generator is not registered
        """
        if generator_id not in self._generators:
            raise KeyError(
                f"Generator '{generator_id}' not found. "
                f"Available generators: {list(self._generators)}"
            )
        return self._generators[generator_id]()

    def list_generators(self) -> list[str]:
        return list(self._generators)


registry = GeneratorRegistry()
registry.register(ExprGenerator)


def get_generator(generator_id: str = "expr") -> GeneratorProgram:
    return registry.get(generator_id)
