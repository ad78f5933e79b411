"""Probabilities that n ideals of a number ring are k-wise relatively r-prime."""

from .field import NumberField, field_from_text, parse_field_spec
from .product import ProbabilityQuery, ProbabilityResult, probability

__version__ = "0.1.0"

__all__ = [
    "NumberField",
    "ProbabilityQuery",
    "ProbabilityResult",
    "field_from_text",
    "parse_field_spec",
    "probability",
]
