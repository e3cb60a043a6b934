"""Named example configurations with exact integer data.

Product vectors are stored as exact local factors (Python ints, or
``complex`` values with integer parts for Gaussian integers) and are only
turned into floating point :class:`~sepface.tensor.ProductVector` objects
on request. Nothing is normalized here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import ContractViolation
from .tensor import PartyShape, ProductVector, flatten

__all__ = ["NamedExample", "EXAMPLE_NAMES", "load_example", "list_examples"]

EXAMPLE_NAMES = ("exam-a", "vec-ex", "w-family", "zt-family")


@dataclass(frozen=True)
class NamedExample:
    name: str
    shape: PartyShape
    product_vectors: tuple[tuple[tuple[Any, ...], ...], ...]
    auxiliary_vectors: tuple[tuple[Any, ...], ...] = ()
    expected: Mapping[str, Any] = field(default_factory=dict)
    description: str = ""

    def vectors(self, normalize: bool = False) -> list[ProductVector]:
        out = [flatten(locs, self.shape) for locs in self.product_vectors]
        return [z.normalized() for z in out] if normalize else out

    def auxiliary(self) -> list[np.ndarray]:
        return [np.asarray(v, dtype=complex) for v in self.auxiliary_vectors]


E1, E2 = (1, 0), (0, 1)


def _exam_a() -> NamedExample:
    z = (
        (E1, E2, (1, 1)),
        (E2, (1, 1), E1),
        ((1, 1), E1, E2),
        ((1, -1), (1, -1), (1, -1)),
        ((2, 1), (2, 1), (2, 1)),
        (E1, E1, E1),
    )
    w = (
        (0, 0, 1, -1, 0, 0, 0, -2),
        (0, 0, 0, 0, 1, 0, -1, -2),
        (0, 1, 0, 0, 0, -1, 0, -2),
        (1, 0, 0, 0, 0, 0, 0, 1),
    )
    # (subset size, contains z6, general position, GUPB)
    table = (
        (6, True, False, True),
        (5, False, True, True),
        (5, True, False, True),
        (4, False, True, True),
        (4, True, False, False),
    )
    expected = {
        "span_dim": 5,
        "upb": (0, 1, 2, 3),
        "complement_generators": (0, 1, 2),
        "complement_product_count": 6,
        "subset_table": table,
        "coefficients": (Fraction(-1, 3), Fraction(-1, 3), Fraction(-1, 3), Fraction(1, 9), Fraction(1, 9)),
        "a_abs2_normalized": (Fraction(2, 9), Fraction(2, 9), Fraction(2, 9), Fraction(8, 81), Fraction(125, 81)),
        "gamma_span_dims": (5, 5, 5),
    }
    return NamedExample(
        "exam-a", PartyShape((2, 2, 2)), z, w, MappingProxyType(expected),
        "three-qubit UPB z1..z4 completed by z5, z6 to the six product vectors of a "
        "5-dimensional space; w1..w4 span the UPB complement",
    )


def _vec_ex() -> NamedExample:
    z = (
        (E2, (1, 2), E1),
        (E2, (1, 1), (1, 1)),
        (E1, E2, (1, -1)),
        ((1, 1), E2, (1, 1)),
        ((1, 2), E1, E2),
        ((1, 1), (1, -2), E2),
    )
    expected = {
        "span_dim": 5,
        "dependency": (1, -1, 1, -1, 1, -1),
        "coefficients": (Fraction(1), Fraction(-1), Fraction(1), Fraction(-1), Fraction(1)),
        "complement_witness": (E1, E1, E1),
        "complement_product_count": 1,
        "span_product_count": 6,
        "a_abs2_normalized": (Fraction(1, 2), Fraction(2, 5), Fraction(1, 5), Fraction(2, 5), Fraction(1, 2)),
        "gamma_span_dims": (5, 5, 5),
    }
    return NamedExample(
        "vec-ex", PartyShape((2, 2, 2)), z, (), MappingProxyType(expected),
        "six product vectors spanning a 5-dimensional space whose complement "
        "contains exactly one product vector",
    )


def _w_family() -> NamedExample:
    i = 1j
    w = (
        ((1, 1), (1, 1), (1, 1)),
        ((1, i), (1, -1), (1, -i)),
        ((1, -1), (1, 1), (1, -1)),
        ((1, -i), (1, -1), (1, i)),
        (E1, E1, E1),
        (E2, E1, E2),
    )
    expected = {
        "span_dim": 5,
        "span_product_count": 6,
        "complement_product_count": 0,
        "max_gamma_span_dim_at_least": 6,
    }
    return NamedExample(
        "w-family", PartyShape((2, 2, 2)), w, (), MappingProxyType(expected),
        "six complex product vectors spanning a 5-dimensional space; some family "
        "of partial conjugates spans six dimensions",
    )


def _zt_family(ts: Sequence[Any] = (1, 2, 3, 4), n: int = 3) -> NamedExample:
    ts = tuple(ts)
    if not ts:
        raise ContractViolation("zt-family needs at least one parameter value")
    z = tuple(tuple((1, t) for _ in range(n)) for t in ts)
    expected = {
        "span_dim": min(len(ts), n + 1),
        "states_span_dim": min(len(ts), 2 * n + 1),
    }
    return NamedExample(
        "zt-family", PartyShape((2,) * n), z, (), MappingProxyType(expected),
        f"(1, t) tensored {n} times for t in {list(ts)}",
    )


def list_examples() -> tuple[str, ...]:
    return EXAMPLE_NAMES


def load_example(name: str, **params) -> NamedExample:
    """Return the named example. ``zt-family`` accepts ``ts=`` and ``n=``."""
    if name == "exam-a":
        return _exam_a()
    if name == "vec-ex":
        return _vec_ex()
    if name == "w-family":
        return _w_family()
    if name == "zt-family":
        return _zt_family(**params)
    raise ContractViolation(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
