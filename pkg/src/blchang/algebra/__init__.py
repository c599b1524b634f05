"""Exact BL-chains: construction, operations and invariant checks."""

from .chains import (
    Chain,
    Chang,
    FiniteGodel,
    FiniteMV,
    OmegaSum,
    Order,
    OrdinalSum,
    Rotation,
    StandardCancellativeHoop,
    StandardGodel,
    StandardMV,
    StandardProduct,
)
from .descriptors import CATALOGUE, make_chain
from .elements import SUM_TOP, ChangElement, RotationElement, SumElement, a, b, neg, pos

__all__ = [
    "CATALOGUE",
    "Chain",
    "Chang",
    "ChangElement",
    "FiniteGodel",
    "FiniteMV",
    "OmegaSum",
    "Order",
    "OrdinalSum",
    "Rotation",
    "RotationElement",
    "SUM_TOP",
    "StandardCancellativeHoop",
    "StandardGodel",
    "StandardMV",
    "StandardProduct",
    "SumElement",
    "a",
    "b",
    "make_chain",
    "neg",
    "pos",
]
