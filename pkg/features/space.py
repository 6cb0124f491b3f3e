"""
Feature space definitions.

Maps generated strings onto the (Length, NumDigits) feature space and
defines the tester's preference hypercube over it.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Tuple

from pydantic import BaseModel, ConfigDict, model_validator


@dataclass(frozen=True)
class FeatureVector:
    """Integer features of one generated string."""
    length: int
    num_digits: int

    @property
    def cell(self) -> Tuple[int, int]:
        return (self.length, self.num_digits)


def extract_features(s: str) -> FeatureVector:
    """Count characters and ASCII digits '0'-'9'."""
    return FeatureVector(
        length=len(s),
        num_digits=sum(1 for ch in s if "0" <= ch <= "9"),
    )


class Region(str, Enum):
    PREFERRED = "PREFERRED"
    OUTSIDE = "OUTSIDE"


class SampleStatus(str, Enum):
    """Outcome of one generation attempt as seen by the search."""
    PREFERRED = "PREFERRED"
    OUTSIDE = "OUTSIDE"
    INFEASIBLE = "INFEASIBLE"


class PreferenceHypercube(BaseModel):
    """
    Inclusive integer ranges per feature.

    Immutable and strictly validated. One cell per integer feature pair.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    length_range: Tuple[int, int]
    digits_range: Tuple[int, int]

    @model_validator(mode="after")
    def validate_ranges(self) -> "PreferenceHypercube":
        for name, (lo, hi) in (("length_range", self.length_range), ("digits_range", self.digits_range)):
            if lo < 0:
                raise ValueError(f"{name} lower bound ({lo}) cannot be negative")
            if lo > hi:
                raise ValueError(f"{name} lower bound ({lo}) cannot exceed upper bound ({hi})")
        return self

    @classmethod
    def parse(cls, text: str) -> "PreferenceHypercube":
        """
        Parse 'LEN_LO:LEN_HI,DIG_LO:DIG_HI'.

        Raises:
            ValueError: If the text is malformed
        """
        try:
            length_part, digits_part = text.split(",")
            len_lo, len_hi = (int(v) for v in length_part.split(":"))
            dig_lo, dig_hi = (int(v) for v in digits_part.split(":"))
        except ValueError as e:
            raise ValueError(
                f"Invalid cube '{text}', expected LEN_LO:LEN_HI,DIG_LO:DIG_HI"
            ) from e
        return cls(length_range=(len_lo, len_hi), digits_range=(dig_lo, dig_hi))

    @property
    def shape(self) -> Tuple[int, int]:
        return (
            self.length_range[1] - self.length_range[0] + 1,
            self.digits_range[1] - self.digits_range[0] + 1,
        )

    @property
    def cell_count(self) -> int:
        rows, cols = self.shape
        return rows * cols

    def contains(self, fv: FeatureVector) -> bool:
        return (
            self.length_range[0] <= fv.length <= self.length_range[1]
            and self.digits_range[0] <= fv.num_digits <= self.digits_range[1]
        )

    def index_of(self, fv: FeatureVector) -> Tuple[int, int]:
        """Grid index of a feature vector inside the cube."""
        return (fv.length - self.length_range[0], fv.num_digits - self.digits_range[0])

    def cells(self) -> Iterator[Tuple[int, int]]:
        for length in range(self.length_range[0], self.length_range[1] + 1):
            for digits in range(self.digits_range[0], self.digits_range[1] + 1):
                yield (length, digits)

    def label(self) -> str:
        return (
            f"{self.length_range[0]}:{self.length_range[1]},"
            f"{self.digits_range[0]}:{self.digits_range[1]}"
        )


DEFAULT_CUBE = PreferenceHypercube(length_range=(3, 50), digits_range=(2, 25))


def classify(fv: FeatureVector, cube: PreferenceHypercube) -> Region:
    """PREFERRED iff both features lie in their inclusive ranges."""
    return Region.PREFERRED if cube.contains(fv) else Region.OUTSIDE
