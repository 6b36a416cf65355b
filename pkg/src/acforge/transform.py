#!/usr/bin/python3

"""Rewrites producing new circuits"""

from __future__ import annotations
import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from typing import final
from .analysis import check_decomposable, check_smooth, find_dead_nodes, vars_of
from .circuits import (
    Circuit,
    CircuitBuilder,
    CircuitInput,
    Indicator,
    Node,
    Parameter,
    Product,
    Sum
)
from .config import DEFAULT_LIMITS
from .errors import DomainError, PreconditionError
from .factors import joint_scope
from .nnf import And, Constant, Literal, NnfCircuit, NnfNode, Or
from .visitors.evaluation import MaximizingVisitor

__all__ = (
    "MaximizerCircuit",
    "smooth",
    "project",
    "multiply",
    "to_maximizer",
    "nnf_to_ac",
    "ac_to_nnf",
    "prune_dead",
    "extract",
)

logger = logging.getLogger(__name__)


@final
@dataclass(frozen=True, slots=True)
class MaximizerCircuit:
    """
    Circuit whose sum nodes are read as max nodes.

    :param circuit: circuit providing the structure
    """

    circuit: Circuit

    @property
    def nodes(self) -> tuple[Node, ...]:
        """
        :return: nodes of the underlying circuit
        """
        return self.circuit.nodes

    @property
    def root(self) -> int:
        """
        :return: root of the underlying circuit
        """
        return self.circuit.root

    def values(self, lambdas: CircuitInput) -> list[Fraction]:
        """
        Evaluate every node.

        :param lambdas: value of every indicator in the circuit
        :raise errors.DomainError: If lambdas misses an indicator
        :return: value per node id
        """
        return self.circuit.accept(MaximizingVisitor(lambdas))

    def evaluate(self, lambdas: CircuitInput) -> Fraction:
        """
        :param lambdas: value of every indicator in the circuit
        :raise errors.DomainError: If lambdas misses an indicator
        :return: value of the root
        """
        return self.values(lambdas)[self.root]


@final
class Padding:
    """
    Shared nodes Σλ summing all indicators of a variable.

    :param builder: builder receiving the nodes
    :param circuit: circuit declaring the variables
    """

    builder: CircuitBuilder

    circuit: Circuit

    sums: dict[str, int]

    __slots__ = ("builder", "circuit", "sums")

    def __init__(self, builder: CircuitBuilder, circuit: Circuit) -> None:
        self.builder = builder
        self.circuit = circuit
        self.sums = {}

    def __call__(self, node: int, missing: Iterable[str]) -> int:
        """
        Multiply a node by Σλ of each missing variable.

        :param node: id of the node in the builder
        :param missing: names of the missing variables
        :return: id of the product, or node if nothing is missing
        """
        missing = set(missing)
        if not missing:
            return node
        factors = [node]
        for variable in self.circuit.variables:
            if variable.name in missing:
                if variable.name not in self.sums:
                    self.sums[variable.name] = self.builder.sum(
                        self.builder.indicator(variable.name, value) for value in variable.values
                    )
                factors.append(self.sums[variable.name])
        return self.builder.product(factors)


def smooth(circuit: Circuit) -> Circuit:
    """
    Make a circuit smooth while computing the same factor.

    Each child of a sum node missing some variables of the sum node is
    multiplied by Σλ of every missing variable, as is the root if it
    misses declared variables.

    :param circuit: circuit to smooth
    :return: smooth circuit
    """
    variables = vars_of(circuit)
    builder = CircuitBuilder(circuit.variables)
    pad = Padding(builder, circuit)
    mapping: list[int] = []
    for identifier, node in enumerate(circuit.nodes):
        match node:
            case Sum(children):
                mapping.append(builder.sum(
                    pad(mapping[child], variables[identifier] - variables[child])
                    for child in children
                ))
            case Product(children):
                mapping.append(builder.product(mapping[child] for child in children))
            case Indicator(variable, value):
                mapping.append(builder.indicator(variable, value))
            case _:
                mapping.append(builder.add(node))
    root = pad(mapping[circuit.root], set(circuit.variable_names) - variables[circuit.root])
    result = builder.build(root)
    logger.debug("smoothing grew circuit from %d to %d nodes", len(circuit), len(result))
    return result


def project(circuit: Circuit, sum_out: Iterable[str]) -> Circuit:
    """
    Sum out variables by setting their indicators to 1.

    The result computes the marginals of the projected factor
    if the circuit is decomposable, smooth and computes the marginals
    of a factor.

    :param circuit: circuit to project
    :param sum_out: names of the variables to remove
    :raise errors.DomainError: If a variable is not declared
    :return: circuit declared over the remaining variables
    """
    removed = set(sum_out)
    unknown = removed.difference(circuit.variable_names)
    if unknown:
        raise DomainError("variables not declared", sorted(unknown))
    if not (check_decomposable(circuit) and check_smooth(circuit)):
        logger.warning("projecting a circuit which is not decomposable and smooth")
    builder = CircuitBuilder(variable for variable in circuit.variables if variable.name not in removed)
    mapping: list[int] = []
    for node in circuit.nodes:
        match node:
            case Indicator(variable, _) if variable in removed:
                mapping.append(builder.parameter(1))
            case Sum(children):
                mapping.append(builder.sum(mapping[child] for child in children))
            case Product(children):
                mapping.append(builder.product(mapping[child] for child in children))
            case _:
                mapping.append(builder.add(node))
    result = builder.build(mapping[circuit.root])
    if not check_smooth(result):
        result = smooth(result)
    return result


def multiply(a: Circuit, b: Circuit) -> Circuit:
    """
    Combine two circuits with a product node.

    The result computes the product factor, not necessarily its marginals.

    :param a: first circuit
    :param b: second circuit
    :raise errors.DomainError: If a variable is declared with different domains
    :return: circuit over the union of the declared variables
    """
    builder = CircuitBuilder(joint_scope(a.variables + b.variables))
    first = builder.copy(a)[a.root]
    second = builder.copy(b)[b.root]
    return builder.build(builder.product((first, second)))


def to_maximizer(circuit: Circuit) -> MaximizerCircuit:
    """
    :param circuit: circuit to reinterpret
    :return: the circuit with sum nodes read as max nodes
    """
    return MaximizerCircuit(circuit)


def nnf_to_ac(nnf: NnfCircuit, smoothing: bool = False) -> Circuit:
    """
    Replace conjunctions by products and disjunctions by sums.

    Negative literals become sums over the indicators of the other values.

    :param nnf: decomposable NNF circuit
    :param smoothing: smooth the result
    :raise errors.PreconditionError: If the NNF circuit is not decomposable
    :return: circuit positive exactly where the NNF circuit is true
    """
    witness = nnf.decomposability_witness()
    if witness is not None:
        raise PreconditionError("NNF circuit is not decomposable", witness)
    domains = {variable.name: variable for variable in nnf.variables}
    builder = CircuitBuilder(nnf.variables)
    mapping: list[int] = []
    for node in nnf.nodes:
        match node:
            case Literal(variable, value, True):
                mapping.append(builder.indicator(variable, value))
            case Literal(variable, value, False):
                others = [builder.indicator(variable, other) for other in domains[variable].values if other != value]
                mapping.append(others[0] if len(others) == 1 else builder.sum(others))
            case And(children):
                mapping.append(builder.product(mapping[child] for child in children))
            case Or(children):
                mapping.append(builder.sum(mapping[child] for child in children))
            case Constant(value):
                mapping.append(builder.parameter(int(value)))
    result = builder.build(mapping[nnf.root])
    return smooth(result) if smoothing else result


def ac_to_nnf(circuit: Circuit) -> NnfCircuit:
    """
    Replace products by conjunctions, sums by disjunctions
    and parameters by constants, positive ones by true.

    :param circuit: circuit to convert
    :return: NNF circuit true where a decomposable circuit is positive
    """
    nodes: list[NnfNode] = []
    for node in circuit.nodes:
        match node:
            case Indicator(variable, value):
                nodes.append(Literal(variable, value))
            case Parameter(value):
                nodes.append(Constant(value > 0))
            case Sum(children):
                nodes.append(Or(children))
            case Product(children):
                nodes.append(And(children))
    return NnfCircuit(circuit.variables, tuple(nodes), circuit.root)


def prune_dead(circuit: Circuit, limit: int = DEFAULT_LIMITS.subcircuits) -> Circuit:
    """
    Replace dead nodes by zero and fold the constant away.

    Zero absorbs products and drops out of sums,
    sums left with a single child are replaced by it.

    :param circuit: circuit to prune
    :param limit: maximum number of enumerated subcircuits
    :raise errors.LimitExceededError: If the circuit has too many subcircuits
    :return: circuit computing the same factor, Parameter(0) if the root is dead
    """
    dead = find_dead_nodes(circuit, limit)
    if not dead:
        return circuit
    builder = CircuitBuilder(circuit.variables)
    mapping: list[int | None] = []
    for identifier, node in enumerate(circuit.nodes):
        if identifier in dead:
            mapping.append(None)
            continue
        alive = [new for child in node.successors() if (new := mapping[child]) is not None]
        match node:
            case Sum(children) if len(alive) == 1 < len(children):
                mapping.append(alive[0])
            case Sum():
                mapping.append(builder.sum(alive))
            case Product():
                mapping.append(builder.product(alive))
            case _:
                mapping.append(builder.add(node))
    root = mapping[circuit.root]
    result = builder.build(builder.parameter(0) if root is None else root)
    logger.debug("pruned %d dead nodes", len(dead))
    return result


def extract(circuit: Circuit, node: int) -> Circuit:
    """
    Create the circuit rooted at a node, declared over the variables below it.

    :param circuit: circuit containing the node
    :param node: id of the new root
    :return: new circuit
    """
    below = vars_of(circuit)[node]
    builder = CircuitBuilder(variable for variable in circuit.variables if variable.name in below)
    return builder.build(builder.copy(circuit)[node])
