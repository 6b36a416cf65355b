#!/usr/bin/python3

"""Visitors collecting structural information"""

from __future__ import annotations
from collections.abc import Sequence
from functools import reduce
from math import prod
from operator import or_
from typing import final
from .. import circuits
from . import BottomUpVisitor

__all__ = (
    "VariablesVisitor",
    "CountingVisitor"
)


@final
class VariablesVisitor(BottomUpVisitor[frozenset[str]]):
    """
    Visitor collecting vars(n), the variables
    with some indicator at or under each node.
    """

    __slots__ = ()

    def visit_indicator(self, indicator: circuits.Indicator) -> frozenset[str]:
        return frozenset((indicator.variable,))

    def visit_parameter(self, parameter: circuits.Parameter) -> frozenset[str]:
        return frozenset()

    def ascend_sum(self, node: circuits.Sum, children: Sequence[frozenset[str]]) -> frozenset[str]:
        return reduce(or_, children, frozenset())

    def ascend_product(self, node: circuits.Product, children: Sequence[frozenset[str]]) -> frozenset[str]:
        return reduce(or_, children, frozenset())


@final
class CountingVisitor(BottomUpVisitor[int]):
    """
    Visitor counting the complete subcircuits rooted at each node.

    A product contributes the cross product of the subcircuits of its
    children, a sum their disjoint union.
    """

    __slots__ = ()

    def visit_indicator(self, indicator: circuits.Indicator) -> int:
        return 1

    def visit_parameter(self, parameter: circuits.Parameter) -> int:
        return 1

    def ascend_sum(self, node: circuits.Sum, children: Sequence[int]) -> int:
        return sum(children)

    def ascend_product(self, node: circuits.Product, children: Sequence[int]) -> int:
        return prod(children)
