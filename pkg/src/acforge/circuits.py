#!/usr/bin/python3

"""Arithmetic circuits over discrete variables"""

from __future__ import annotations
import re
from abc import ABC, abstractmethod
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Final, TypeAlias, TypeVar, final
from . import visitors
from .errors import DomainError, FormatError

__all__ = (
    "Instantiation",
    "CircuitInput",
    "Variable",
    "Node",
    "Indicator",
    "Parameter",
    "Sum",
    "Product",
    "Circuit",
    "CircuitBuilder",
    "instantiations",
    "check_instantiation",
    "input_from_instantiation",
    "compatible_instantiations",
    "input_from_indicators",
    "parse_instantiation",
    "format_instantiation",
    "parse_indicators",
    "parse_rational",
    "format_rational",
)

T = TypeVar("T")

Instantiation: TypeAlias = Mapping[str, str]
"""
Partial assignment of values to variables, keyed by variable name.
"""

CircuitInput: TypeAlias = Mapping[tuple[str, str], int]
"""
Assignment of 0 or 1 to each indicator, keyed by (variable, value).
"""

RATIONAL: Final = re.compile(r"(\d+)(?:/(\d+))?")

RESERVED: Final = frozenset("#,=/")


def check_label(label: str, kind: str) -> None:
    """
    Check that a name can be written to and read from files.

    :param label: variable name or value label
    :param kind: description used in error messages
    :raise errors.FormatError: If the label is empty or contains reserved characters
    """
    if not label:
        raise FormatError(f"empty {kind}")
    for character in label:
        if character in RESERVED or character.isspace():
            raise FormatError(f"invalid character in {kind} {label!r}: {character!r}")


@final
@dataclass(frozen=True, slots=True)
class Variable:
    """
    Discrete variable with an ordered domain.

    :param name: name of the variable
    :param values: ordered value labels, at least two and distinct
    """

    name: str

    values: tuple[str, ...]

    def __post_init__(self) -> None:
        check_label(self.name, "variable name")
        if len(self.values) < 2:
            raise FormatError(f"variable {self.name} needs at least two values")
        if len(set(self.values)) != len(self.values):
            raise FormatError(f"variable {self.name} has duplicate values")
        for value in self.values:
            check_label(value, "value label")

    def __str__(self) -> str:
        return self.name

    def index(self, value: str) -> int:
        """
        Find the position of a value in the domain.

        :param value: value label
        :raise errors.DomainError: If the value is not in the domain
        :return: 0-based position
        """
        try:
            return self.values.index(value)
        except ValueError:
            raise DomainError(f"value {value!r} not in domain", (self.name,)) from None


class Node(ABC):
    """
    ABC for circuit nodes.

    Nodes reference their children by id, which is
    the position of the child in :attr:`Circuit.nodes`.
    """

    __slots__ = ()

    @abstractmethod
    def accept(self, visitor: visitors.BottomUpVisitor[T], results: Sequence[T]) -> T:
        """
        Accept a visitor by calling its corresponding method.

        :param visitor: visitor to accept
        :param results: values already produced for all preceding nodes
        :return: value returned by the visitors corresponding method
        """
        raise NotImplementedError()

    def successors(self) -> tuple[int, ...]:
        """
        :return: ids of the children of this node
        """
        return ()


@final
@dataclass(frozen=True, slots=True)
class Indicator(Node):
    """
    Indicator λx of a value x of a variable.

    :param variable: name of the variable
    :param value: value label
    """

    variable: str

    value: str

    def __str__(self) -> str:
        return f"λ({self.variable}={self.value})"

    def accept(self, visitor: visitors.BottomUpVisitor[T], results: Sequence[T]) -> T:
        return visitor.visit_indicator(self)


@final
@dataclass(frozen=True, slots=True)
class Parameter(Node):
    """
    Non-negative rational constant θ.

    :param value: value of the parameter, converted to a Fraction
    """

    value: Fraction

    def __post_init__(self) -> None:
        value = Fraction(self.value)
        if value < 0:
            raise FormatError(f"negative parameter: {value}")
        object.__setattr__(self, "value", value)

    def __str__(self) -> str:
        return format_rational(self.value)

    def accept(self, visitor: visitors.BottomUpVisitor[T], results: Sequence[T]) -> T:
        return visitor.visit_parameter(self)


@final
@dataclass(frozen=True, slots=True)
class Sum(Node):
    """
    Node adding the values of its children.

    :param children: ids of the children
    """

    children: tuple[int, ...]

    def __str__(self) -> str:
        return "+(" + ", ".join(map(str, self.children)) + ")"

    def accept(self, visitor: visitors.BottomUpVisitor[T], results: Sequence[T]) -> T:
        return visitor.ascend_sum(self, [results[child] for child in self.children])

    def successors(self) -> tuple[int, ...]:
        return self.children


@final
@dataclass(frozen=True, slots=True)
class Product(Node):
    """
    Node multiplying the values of its children.

    :param children: ids of the children
    """

    children: tuple[int, ...]

    def __str__(self) -> str:
        return "*(" + ", ".join(map(str, self.children)) + ")"

    def accept(self, visitor: visitors.BottomUpVisitor[T], results: Sequence[T]) -> T:
        return visitor.ascend_product(self, [results[child] for child in self.children])

    def successors(self) -> tuple[int, ...]:
        return self.children


@final
@dataclass(frozen=True, slots=True)
class Circuit:
    """
    Rooted DAG of nodes in topological order.

    Every node is reachable from the root, which is therefore the last node.

    :param variables: declared variables
    :param nodes: nodes, children preceding their parents
    :param root: id of the root node
    :raise errors.FormatError: If the structure is invalid
    :raise errors.DomainError: If an indicator references an undeclared variable or value
    """

    variables: tuple[Variable, ...]

    nodes: tuple[Node, ...]

    root: int

    def __post_init__(self) -> None:
        names = [variable.name for variable in self.variables]
        if len(set(names)) != len(names):
            raise DomainError("duplicate variable declarations", sorted(names))
        domains = {variable.name: variable for variable in self.variables}
        if not 0 <= self.root < len(self.nodes):
            raise FormatError(f"root {self.root} is not a node")
        for identifier, node in enumerate(self.nodes):
            match node:
                case Indicator(name, value):
                    try:
                        domains[name].index(value)
                    except KeyError:
                        raise DomainError(f"indicator of undeclared variable at node {identifier}", (name,)) from None
                case Sum(children) | Product(children):
                    if not children:
                        raise FormatError(f"node {identifier} has no children")
                    for child in children:
                        if not 0 <= child < identifier:
                            raise FormatError(f"child {child} of node {identifier} does not precede it")
        reachable = self.reachable()
        if len(reachable) != len(self.nodes):
            unreachable = min(set(range(len(self.nodes))) - reachable)
            raise FormatError(f"node {unreachable} is not reachable from the root")

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def variable_names(self) -> tuple[str, ...]:
        """
        :return: names of the declared variables in declaration order
        """
        return tuple(variable.name for variable in self.variables)

    @property
    def edge_count(self) -> int:
        """
        :return: total number of parent-child edges
        """
        return sum(len(node.successors()) for node in self.nodes)

    def variable(self, name: str) -> Variable:
        """
        Find a declared variable.

        :param name: name of the variable
        :raise errors.DomainError: If no such variable is declared
        :return: the variable
        """
        for variable in self.variables:
            if variable.name == name:
                return variable
        raise DomainError("unknown variable", (name,))

    def reachable(self, start: int | None = None) -> set[int]:
        """
        Collect the nodes reachable from a node.

        :param start: node to start from, defaults to the root
        :return: ids of all reachable nodes including start
        """
        pending = [self.root if start is None else start]
        seen = set(pending)
        while pending:
            for child in self.nodes[pending.pop()].successors():
                if child not in seen:
                    seen.add(child)
                    pending.append(child)
        return seen

    def indicators(self) -> set[tuple[str, str]]:
        """
        :return: (variable, value) pairs of all indicators in the circuit
        """
        return {
            (node.variable, node.value)
            for node in self.nodes
            if isinstance(node, Indicator)
        }

    def accept(self, visitor: visitors.BottomUpVisitor[T]) -> list[T]:
        """
        Visit every node bottom up.

        :param visitor: visitor to accept
        :return: one value per node id
        """
        results: list[T] = []
        for node in self.nodes:
            results.append(node.accept(visitor, results))
        return results

    def instantiations(self) -> Iterator[dict[str, str]]:
        """
        :return: Iterator over the complete instantiations in row-major order
        """
        return instantiations(self.variables)


class CircuitBuilder:
    """
    Incremental construction of circuits.

    Indicators and parameters created with :meth:`indicator` and
    :meth:`parameter` are shared, nodes passed to :meth:`add` are not.

    :param variables: variables of the circuit to build
    """

    variables: tuple[Variable, ...]

    nodes: list[Node]

    leaves: dict[Node, int]

    __slots__ = ("variables", "nodes", "leaves")

    def __init__(self, variables: Iterable[Variable]) -> None:
        self.variables = tuple(variables)
        self.nodes = []
        self.leaves = {}

    def __len__(self) -> int:
        return len(self.nodes)

    def add(self, node: Node) -> int:
        """
        Append a node.

        :param node: node whose children were already added
        :raise errors.FormatError: If a child was not added yet
        :return: id of the new node
        """
        identifier = len(self.nodes)
        for child in node.successors():
            if not 0 <= child < identifier:
                raise FormatError(f"child {child} was not added yet")
        self.nodes.append(node)
        if isinstance(node, (Indicator, Parameter)):
            self.leaves.setdefault(node, identifier)
        return identifier

    def indicator(self, variable: str, value: str) -> int:
        """
        :return: id of a node for indicator λ(variable=value)
        """
        node = Indicator(variable, value)
        try:
            return self.leaves[node]
        except KeyError:
            return self.add(node)

    def parameter(self, value: Fraction | int) -> int:
        """
        :return: id of a node for the parameter value
        """
        node = Parameter(Fraction(value))
        try:
            return self.leaves[node]
        except KeyError:
            return self.add(node)

    def sum(self, children: Iterable[int]) -> int:
        """
        :return: id of a new sum node over the children
        """
        return self.add(Sum(tuple(children)))

    def product(self, children: Iterable[int]) -> int:
        """
        :return: id of a new product node over the children
        """
        return self.add(Product(tuple(children)))

    def copy(self, circuit: Circuit) -> list[int]:
        """
        Append all nodes of a circuit, node for node.

        :param circuit: circuit to copy
        :return: new id of every node of the circuit
        """
        mapping: list[int] = []
        for node in circuit.nodes:
            match node:
                case Sum(children):
                    mapping.append(self.add(Sum(tuple(mapping[child] for child in children))))
                case Product(children):
                    mapping.append(self.add(Product(tuple(mapping[child] for child in children))))
                case _:
                    mapping.append(self.add(node))
        return mapping

    def build(self, root: int) -> Circuit:
        """
        Create a circuit keeping only the nodes reachable from root.

        Remaining nodes keep their relative order.

        :param root: id of the root node
        :return: new circuit
        """
        pending = [root]
        reachable = {root}
        while pending:
            for child in self.nodes[pending.pop()].successors():
                if child not in reachable:
                    reachable.add(child)
                    pending.append(child)
        renumbered: dict[int, int] = {}
        nodes: list[Node] = []
        for identifier in sorted(reachable):
            node = self.nodes[identifier]
            match node:
                case Sum(children):
                    node = Sum(tuple(renumbered[child] for child in children))
                case Product(children):
                    node = Product(tuple(renumbered[child] for child in children))
            renumbered[identifier] = len(nodes)
            nodes.append(node)
        return Circuit(self.variables, tuple(nodes), renumbered[root])


def instantiations(variables: Iterable[Variable]) -> Iterator[dict[str, str]]:
    """
    Enumerate complete instantiations in row-major order.

    The last variable varies fastest.

    :param variables: variables to instantiate
    :return: Iterator yielding one new dict per instantiation
    """
    variables = tuple(variables)
    names = [variable.name for variable in variables]
    for values in product(*(variable.values for variable in variables)):
        yield dict(zip(names, values))


def check_instantiation(variables: Iterable[Variable], y: Instantiation) -> None:
    """
    Check that an instantiation only uses known variables and values.

    :param variables: known variables
    :param y: instantiation to check
    :raise errors.DomainError: If a variable or value is unknown
    """
    domains = {variable.name: variable for variable in variables}
    for name, value in y.items():
        try:
            domains[name].index(value)
        except KeyError:
            raise DomainError("unknown variable", (name,)) from None


def input_from_instantiation(circuit: Circuit, y: Instantiation) -> dict[tuple[str, str], int]:
    """
    Set each indicator to 1 iff its value is compatible with an instantiation.

    :param circuit: circuit whose indicators to set
    :param y: instantiation, possibly partial
    :raise errors.DomainError: If y uses unknown variables or values
    :return: circuit input covering every declared (variable, value) pair
    """
    check_instantiation(circuit.variables, y)
    return {
        (variable.name, value): int(y.get(variable.name, value) == value)
        for variable in circuit.variables
        for value in variable.values
    }


def input_from_indicators(circuit: Circuit, ones: Iterable[tuple[str, str]]) -> dict[tuple[str, str], int]:
    """
    Set the named indicators to 1 and all others to 0.

    :param circuit: circuit whose indicators to set
    :param ones: (variable, value) pairs of the indicators set to 1
    :raise errors.DomainError: If a pair uses an unknown variable or value
    :return: circuit input covering every declared (variable, value) pair
    """
    ones = set(ones)
    for name, value in ones:
        circuit.variable(name).index(value)
    return {
        (variable.name, value): int((variable.name, value) in ones)
        for variable in circuit.variables
        for value in variable.values
    }


def compatible_instantiations(lambdas: CircuitInput, variables: Iterable[Variable]) -> list[dict[str, str]]:
    """
    List the complete instantiations compatible with a circuit input.

    :param lambdas: circuit input covering every value of the variables
    :param variables: variables to instantiate
    :raise errors.DomainError: If the input misses a value of the variables
    :return: instantiations x with λx = 1 for every value of x, in row-major order
    """
    variables = tuple(variables)
    for variable in variables:
        for value in variable.values:
            if (variable.name, value) not in lambdas:
                raise DomainError(f"no input for value {value!r}", (variable.name,))
    return [
        x for x in instantiations(variables)
        if all(lambdas[item] == 1 for item in x.items())
    ]


def parse_instantiation(text: str) -> dict[str, str]:
    """
    Parse an instantiation written as ``Var=value,Var=value``.

    :param text: text to parse, empty for the empty instantiation
    :raise errors.FormatError: If the text is malformed or assigns a variable twice
    :return: new instantiation
    """
    result: dict[str, str] = {}
    for item in filter(None, map(str.strip, text.split(","))):
        name, separator, value = map(str.strip, item.partition("="))
        if not separator or not name or not value:
            raise FormatError(f"invalid assignment: {item!r}")
        if name in result:
            raise FormatError(f"variable {name} assigned twice")
        result[name] = value
    return result


def parse_indicators(text: str) -> list[tuple[str, str]]:
    """
    Parse indicators written as ``Var=value,Var=value``,
    a variable may occur more than once.

    :param text: text to parse, empty for no indicators
    :raise errors.FormatError: If the text is malformed
    :return: (variable, value) pairs in order of occurrence
    """
    result = []
    for item in filter(None, map(str.strip, text.split(","))):
        name, separator, value = map(str.strip, item.partition("="))
        if not separator or not name or not value:
            raise FormatError(f"invalid indicator: {item!r}")
        result.append((name, value))
    return result


def format_instantiation(y: Instantiation, order: Iterable[str] | None = None) -> str:
    """
    Write an instantiation as ``Var=value,Var=value``.

    :param y: instantiation to write
    :param order: variable names to write first, in this order
    :return: text accepted by :func:`parse_instantiation`
    """
    names = [name for name in order or () if name in y]
    names.extend(name for name in y if name not in names)
    return ",".join(f"{name}={y[name]}" for name in names)


def parse_rational(text: str) -> Fraction:
    """
    Parse a non-negative rational written as ``p/q`` or an integer.

    :param text: text to parse
    :raise errors.FormatError: If the text is no such rational
    :return: reduced Fraction
    """
    match = RATIONAL.fullmatch(text)
    if match is None or match[2] is not None and int(match[2]) == 0:
        raise FormatError(f"invalid rational: {text!r}")
    return Fraction(int(match[1]), int(match[2] or 1))


def format_rational(value: Fraction | int) -> str:
    """
    Write a rational in reduced form, integers without denominator.

    :param value: value to write
    :return: text accepted by :func:`parse_rational` if not negative
    """
    return str(Fraction(value))
