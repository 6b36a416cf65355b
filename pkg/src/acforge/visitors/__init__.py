#!/usr/bin/python3

"""Visitors for performing operations on circuits"""

from __future__ import annotations
from abc import ABC, abstractmethod
from collections.abc import Sequence
from typing import TypeVar, Generic
from .. import circuits

__all__ = (
    "BottomUpVisitor",
    "evaluation",
    "walking"
)

T = TypeVar("T")


class BottomUpVisitor(ABC, Generic[T]):
    """
    ABC for visitors which visit children first.

    Circuits are DAGs, so :meth:`.circuits.Circuit.accept` visits every node
    exactly once and passes the values produced for its children.

    Type Variables:

        T: represents the type of the value produced for each node
    """

    __slots__ = ()

    @abstractmethod
    def visit_indicator(self, indicator: circuits.Indicator) -> T:
        """
        Visit an Indicator node.

        :param indicator: indicator node to visit
        :return: value as required by its type variable
        """
        raise NotImplementedError()

    @abstractmethod
    def visit_parameter(self, parameter: circuits.Parameter) -> T:
        """
        Visit a Parameter node.

        :param parameter: parameter node to visit
        :return: value as required by its type variable
        """
        raise NotImplementedError()

    @abstractmethod
    def ascend_sum(self, node: circuits.Sum, children: Sequence[T]) -> T:
        """
        Visit a Sum node after visiting its children.

        :param node: sum node to visit
        :param children: values produced by visiting its children, in order
        :return: value as required by its type variable
        """
        raise NotImplementedError()

    @abstractmethod
    def ascend_product(self, node: circuits.Product, children: Sequence[T]) -> T:
        """
        Visit a Product node after visiting its children.

        :param node: product node to visit
        :param children: values produced by visiting its children, in order
        :return: value as required by its type variable
        """
        raise NotImplementedError()
