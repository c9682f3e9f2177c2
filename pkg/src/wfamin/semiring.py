"""Weight domains for automata.

A :class:`Semiring` bundles the two operations, their neutral elements and
a static flag telling whether addition is cancellative.  Weights are plain
Python values; ``==`` and ``hash`` on them must agree with semiring
equality, which holds for the three instances defined here.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from typing import Any, Callable

Weight = Any

INF = math.inf


@dataclass(frozen=True)
class Semiring:
    name: str
    zero: Weight
    one: Weight
    add: Callable[[Weight, Weight], Weight] = field(repr=False)
    mul: Callable[[Weight, Weight], Weight] = field(repr=False)
    additively_cancellative: bool = False

    def eq(self, x: Weight, y: Weight) -> bool:
        return x == y

    def hash(self, x: Weight) -> int:
        # Linear in digit count for big integers, constant otherwise.
        return hash(x)

    def is_zero(self, x: Weight) -> bool:
        return x == self.zero

    def sum(self, xs) -> Weight:
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def __str__(self) -> str:
        return self.name


def _min_plus_mul(x, y):
    # int + inf is inf, so the annihilator needs no special case
    return x + y


BOOLEAN = Semiring("B", False, True, operator.or_, operator.and_, False)
INTEGERS = Semiring("Z", 0, 1, operator.add, operator.mul, True)
MIN_PLUS = Semiring("min-plus", INF, 0, min, _min_plus_mul, False)

SEMIRINGS = {s.name: s for s in (BOOLEAN, INTEGERS, MIN_PLUS)}


def get_semiring(tag: str) -> Semiring:
    try:
        return SEMIRINGS[tag]
    except KeyError:
        raise ValueError(f"unknown semiring {tag!r}; expected one of {sorted(SEMIRINGS)}") from None


def add(semiring: Semiring, x: Weight, y: Weight) -> Weight:
    return semiring.add(x, y)


def is_zero(semiring: Semiring, x: Weight) -> bool:
    return semiring.is_zero(x)


def cancellative(semiring: Semiring) -> bool:
    """Whether ``a + b == a + c`` always implies ``b == c``."""
    return semiring.additively_cancellative
