#!/usr/bin/python3

"""Visitors evaluating circuits under an input"""

from __future__ import annotations
from collections.abc import Sequence
from fractions import Fraction
from math import prod
from typing import TypeVar, final
from .. import circuits
from ..errors import DomainError
from . import BottomUpVisitor

__all__ = (
    "EvaluatingVisitor",
    "MaximizingVisitor",
    "ConsistencyVisitor"
)


T = TypeVar("T")


class InputVisitor(BottomUpVisitor[T]):
    """
    ABC for visitors reading indicator values from a circuit input.

    :param lambdas: value of every indicator in the circuit
    """

    lambdas: circuits.CircuitInput

    __slots__ = ("lambdas",)

    def __init__(self, lambdas: circuits.CircuitInput) -> None:
        self.lambdas = lambdas

    def read(self, indicator: circuits.Indicator) -> int:
        """
        :raise errors.DomainError: If the input does not cover the indicator
        :return: value of the indicator
        """
        try:
            return self.lambdas[(indicator.variable, indicator.value)]
        except KeyError:
            raise DomainError(
                f"input does not cover value {indicator.value!r}",
                (indicator.variable,)
            ) from None


@final
class EvaluatingVisitor(InputVisitor[Fraction]):
    """
    Visitor evaluating a circuit in the standard way.

    :param lambdas: value of every indicator in the circuit
    """

    __slots__ = ()

    def visit_indicator(self, indicator: circuits.Indicator) -> Fraction:
        return Fraction(self.read(indicator))

    def visit_parameter(self, parameter: circuits.Parameter) -> Fraction:
        return parameter.value

    def ascend_sum(self, node: circuits.Sum, children: Sequence[Fraction]) -> Fraction:
        return sum(children, Fraction(0))

    def ascend_product(self, node: circuits.Product, children: Sequence[Fraction]) -> Fraction:
        return prod(children, start=Fraction(1))


@final
class MaximizingVisitor(InputVisitor[Fraction]):
    """
    Visitor evaluating a circuit with every sum node read as a max node.

    :param lambdas: value of every indicator in the circuit
    """

    __slots__ = ()

    def visit_indicator(self, indicator: circuits.Indicator) -> Fraction:
        return Fraction(self.read(indicator))

    def visit_parameter(self, parameter: circuits.Parameter) -> Fraction:
        return parameter.value

    def ascend_sum(self, node: circuits.Sum, children: Sequence[Fraction]) -> Fraction:
        return max(children)

    def ascend_product(self, node: circuits.Product, children: Sequence[Fraction]) -> Fraction:
        return prod(children, start=Fraction(1))


@final
class ConsistencyVisitor(InputVisitor[bool]):
    """
    Visitor checking whether some complete subcircuit below a node
    only contains indicators set to 1.

    :param lambdas: value of every indicator in the circuit
    """

    __slots__ = ()

    def visit_indicator(self, indicator: circuits.Indicator) -> bool:
        return self.read(indicator) == 1

    def visit_parameter(self, parameter: circuits.Parameter) -> bool:
        return True

    def ascend_sum(self, node: circuits.Sum, children: Sequence[bool]) -> bool:
        return any(children)

    def ascend_product(self, node: circuits.Product, children: Sequence[bool]) -> bool:
        return all(children)
