"""
Scalar dissimilarity kernels for categorical, circular and special quantitative values.
"""
from typing import Optional, Sequence

from ..core.errors import DomainError, SchemaError


def simple_matching(x: Sequence[str], y: Sequence[str]) -> float:
    """
    Simple matching distance between two categorical projections.

    Args:
        x: Labels of the d categorical attributes of the first pattern
        y: Labels of the d categorical attributes of the second pattern

    Returns:
        Fraction of attributes whose labels differ, in [0, 1]
    """
    if len(x) != len(y):
        raise SchemaError(f"categorical projections differ in arity: {len(x)} vs {len(y)}")
    if len(x) == 0:
        raise SchemaError("categorical projection is empty")
    mismatches = sum(1 for a, b in zip(x, y) if a != b)
    return mismatches / len(x)


def circular_diff(x: int, y: int, a: int) -> float:
    """Wrap-around distance on {0, ..., a}: min(|x - y|, a - |x - y|)."""
    if a < 1:
        raise DomainError(f"circular period must be >= 1, got {a}")
    for value in (x, y):
        if not 0 <= value <= a:
            raise DomainError(f"circular value {value} outside [0, {a}]")
    diff = abs(x - y)
    return float(min(diff, a - diff))


def special_diff(x: Optional[float], y: Optional[float]) -> float:
    """
    Absolute difference extended with the "not applicable" symbol (None).

    Both not applicable gives 0, exactly one gives 1.
    """
    for value in (x, y):
        if value is not None and not 0.0 <= value <= 1.0:
            raise DomainError(f"special value {value} is not normalized to [0, 1]")
    if x is None and y is None:
        return 0.0
    if x is None or y is None:
        return 1.0
    return abs(x - y)
