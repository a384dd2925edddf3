from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, Field, field_validator

from zpgabor.cyclotomic.cyclotomic import CycNum


class Backend(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


class CycNumDocument(BaseModel):
    p: int
    coeffs: List[Tuple[int, int]]

    @field_validator("coeffs")
    def validate_denominators(cls, v):
        if any(den <= 0 for _, den in v):
            raise ValueError("denominators must be positive")
        return v

    @classmethod
    def from_cyc(cls, value: CycNum) -> "CycNumDocument":
        return cls(p=value.p, coeffs=[(c.numerator, c.denominator) for c in value.coeffs])

    def to_cyc(self) -> CycNum:
        return CycNum(self.p, [Fraction(num, den) for num, den in self.coeffs])


class PointSetDocument(BaseModel):
    p: int
    d: int
    points: List[List[int]] = Field(default_factory=list)

    @field_validator("points")
    def sort_points(cls, v):
        return sorted(v)


class WindowDocument(BaseModel):
    """Window values in canonical point order.

    Exact scalars are CycNum documents; float scalars are [re, im] pairs.
    """
    p: int
    d: int
    backend: Backend = Backend.EXACT
    values: List[Any]


class ErrorDocument(BaseModel):
    code: str
    message: str
    context: Dict[str, Any] = Field(default_factory=dict)
