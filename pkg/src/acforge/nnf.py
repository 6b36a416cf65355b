#!/usr/bin/python3

"""Circuits in negation normal form over discrete variables"""

from __future__ import annotations
from abc import ABC
from dataclasses import dataclass
from functools import reduce
from operator import or_
from typing import final
from .circuits import Instantiation, Variable
from .errors import DomainError, FormatError

__all__ = (
    "NnfNode",
    "And",
    "Or",
    "Literal",
    "Constant",
    "NnfCircuit",
)


class NnfNode(ABC):
    """
    ABC for NNF nodes, referencing their children by id.
    """

    __slots__ = ()

    def successors(self) -> tuple[int, ...]:
        """
        :return: ids of the children of this node
        """
        return ()


@final
@dataclass(frozen=True, slots=True)
class And(NnfNode):
    """
    Conjunction of its children.
    """

    children: tuple[int, ...]

    def successors(self) -> tuple[int, ...]:
        return self.children


@final
@dataclass(frozen=True, slots=True)
class Or(NnfNode):
    """
    Disjunction of its children.
    """

    children: tuple[int, ...]

    def successors(self) -> tuple[int, ...]:
        return self.children


@final
@dataclass(frozen=True, slots=True)
class Literal(NnfNode):
    """
    Literal X=x, or X≠x if negative.

    :param variable: name of the variable
    :param value: value label
    :param positive: polarity of the literal
    """

    variable: str

    value: str

    positive: bool = True

    def holds(self, x: Instantiation) -> bool:
        """
        :param x: instantiation assigning the variable
        :return: truth value of the literal under x
        """
        return (x[self.variable] == self.value) == self.positive


@final
@dataclass(frozen=True, slots=True)
class Constant(NnfNode):
    """
    The constant true or false.
    """

    value: bool


@final
@dataclass(frozen=True, slots=True)
class NnfCircuit:
    """
    Rooted DAG of NNF nodes in topological order,
    every node reachable from the root.

    :param variables: declared variables
    :param nodes: nodes, children preceding their parents
    :param root: id of the root node
    :raise errors.FormatError: If the structure is invalid
    :raise errors.DomainError: If a literal references an undeclared variable or value
    """

    variables: tuple[Variable, ...]

    nodes: tuple[NnfNode, ...]

    root: int

    def __post_init__(self) -> None:
        domains = {variable.name: variable for variable in self.variables}
        if len(domains) != len(self.variables):
            raise DomainError("duplicate variable declarations", sorted(domains))
        if not 0 <= self.root < len(self.nodes):
            raise FormatError(f"root {self.root} is not a node")
        for identifier, node in enumerate(self.nodes):
            match node:
                case Literal(name, value, _):
                    try:
                        domains[name].index(value)
                    except KeyError:
                        raise DomainError(f"literal of undeclared variable at node {identifier}", (name,)) from None
                case And(children) | Or(children):
                    if not children:
                        raise FormatError(f"node {identifier} has no children")
                    if any(not 0 <= child < identifier for child in children):
                        raise FormatError(f"a child of node {identifier} does not precede it")
        pending = [self.root]
        seen = {self.root}
        while pending:
            for child in self.nodes[pending.pop()].successors():
                if child not in seen:
                    seen.add(child)
                    pending.append(child)
        if len(seen) != len(self.nodes):
            raise FormatError(f"node {min(set(range(len(self.nodes))) - seen)} is not reachable from the root")

    def __len__(self) -> int:
        return len(self.nodes)

    def evaluate(self, x: Instantiation) -> bool:
        """
        Evaluate under a complete instantiation.

        :param x: complete instantiation of the declared variables
        :return: truth value of the root
        """
        values: list[bool] = []
        for node in self.nodes:
            match node:
                case And(children):
                    values.append(all(values[child] for child in children))
                case Or(children):
                    values.append(any(values[child] for child in children))
                case Literal():
                    values.append(node.holds(x))
                case Constant(value):
                    values.append(value)
        return values[self.root]

    def variable_sets(self) -> list[frozenset[str]]:
        """
        :return: variables mentioned at or under each node
        """
        result: list[frozenset[str]] = []
        for node in self.nodes:
            match node:
                case Literal(variable, _, _):
                    result.append(frozenset((variable,)))
                case And(children) | Or(children):
                    result.append(reduce(or_, (result[child] for child in children), frozenset()))
                case _:
                    result.append(frozenset())
        return result

    def decomposability_witness(self) -> tuple[int, str] | None:
        """
        Search a conjunction whose children share a variable.

        :return: (node id, shared variable) or None if decomposable
        """
        variables = self.variable_sets()
        for identifier, node in enumerate(self.nodes):
            if isinstance(node, And):
                seen: set[str] = set()
                for child in node.children:
                    shared = seen & variables[child]
                    if shared:
                        return identifier, min(shared)
                    seen |= variables[child]
        return None
