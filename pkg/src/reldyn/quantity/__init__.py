"""Exact ordered-field arithmetic closed under square roots of nonnegatives."""

from .core import Ordering, Quantity, approx, cmp, sqrt
from .floating import FloatQuantity

ZERO = Quantity(0)
ONE = Quantity(1)


def parse_quantity(text: str) -> Quantity:
    return Quantity(text)


def backend(name: str = "exact"):
    """Constructor for the named number backend (``exact`` or ``float``)."""
    if name == "exact":
        return Quantity
    if name == "float":
        return FloatQuantity
    raise ValueError(f"unknown backend {name!r}")


__all__ = [
    "FloatQuantity",
    "ONE",
    "Ordering",
    "Quantity",
    "ZERO",
    "approx",
    "backend",
    "cmp",
    "parse_quantity",
    "sqrt",
]
