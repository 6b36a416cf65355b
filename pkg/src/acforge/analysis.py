#!/usr/bin/python3

"""Structural and semantic properties of circuits"""

from __future__ import annotations
import logging
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum, unique
from fractions import Fraction
from itertools import product
from math import prod
from typing import final
from .circuits import (
    Circuit,
    CircuitInput,
    Indicator,
    Parameter,
    Product,
    Sum,
    format_instantiation,
    format_rational,
    input_from_instantiation
)
from .config import DEFAULT_LIMITS, Limits
from .errors import LimitExceededError, PreconditionError
from .factors import Factor
from .oracle import factor_of_circuit
from .visitors.evaluation import EvaluatingVisitor
from .visitors.walking import CountingVisitor, VariablesVisitor

__all__ = (
    "Verdict",
    "SharedVariable",
    "MissingVariable",
    "ConflictingBranches",
    "PropertyResult",
    "PropertyReport",
    "Subcircuit",
    "IncompletenessVerdict",
    "vars_of",
    "check_decomposable",
    "check_smooth",
    "check_deterministic",
    "check_properties",
    "count_subcircuits",
    "enumerate_subcircuits",
    "terms_are_instantiations",
    "is_strongly_deterministic",
    "find_dead_nodes",
    "check_parametric_incompleteness",
)

logger = logging.getLogger(__name__)


@unique
class Verdict(Enum):
    """
    Outcome of a property check
    """
    YES = "yes"
    NO = "no"
    SKIPPED = "skipped"


@final
@dataclass(frozen=True, slots=True)
class SharedVariable:
    """
    Witness against decomposability: two children of a product
    node mention the same variable.
    """

    node: int

    children: tuple[int, int]

    variable: str

    def __str__(self) -> str:
        return f"node={self.node};children={self.children[0]},{self.children[1]};variable={self.variable}"


@final
@dataclass(frozen=True, slots=True)
class MissingVariable:
    """
    Witness against smoothness: a child of a sum node misses a variable
    of the sum node, or a declared variable has no indicator at all
    (node and child are None).
    """

    variable: str

    node: int | None = None

    child: int | None = None

    def __str__(self) -> str:
        if self.node is None:
            return f"variable={self.variable};node=none"
        return f"variable={self.variable};node={self.node};child={self.child}"


@final
@dataclass(frozen=True, slots=True)
class ConflictingBranches:
    """
    Witness against determinism: under a complete instantiation
    two children of a sum node are non-zero.
    """

    instantiation: tuple[tuple[str, str], ...]

    node: int

    children: tuple[int, int]

    values: tuple[Fraction, Fraction]

    def __str__(self) -> str:
        return (
            f"instantiation={format_instantiation(dict(self.instantiation))};node={self.node};"
            f"children={self.children[0]},{self.children[1]};"
            f"values={format_rational(self.values[0])},{format_rational(self.values[1])}"
        )


Witness = SharedVariable | MissingVariable | ConflictingBranches


@final
@dataclass(frozen=True, slots=True)
class PropertyResult:
    """
    Result of checking a single property.

    :param name: name of the property
    :param verdict: outcome of the check
    :param witness: concrete violation if the verdict is NO
    """

    name: str

    verdict: Verdict

    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.verdict is Verdict.YES

    def __str__(self) -> str:
        return f"property={self.name} result={self.verdict.value} witness={self.witness or 'none'}"


@final
@dataclass(frozen=True, slots=True)
class PropertyReport:
    """
    Results of checking decomposability, smoothness and determinism.

    :param decomposable: result of :func:`check_decomposable`
    :param smooth: result of :func:`check_smooth`
    :param deterministic: result of :func:`check_deterministic`
    :param max_vars: variable limit used for the determinism check
    """

    decomposable: PropertyResult

    smooth: PropertyResult

    deterministic: PropertyResult

    max_vars: int

    @property
    def method(self) -> str:
        """
        :return: ``exact`` or ``skipped(<limit>)``
        """
        if self.deterministic.verdict is Verdict.SKIPPED:
            return f"skipped({self.max_vars})"
        return "exact"

    def results(self) -> tuple[PropertyResult, PropertyResult, PropertyResult]:
        """
        :return: all results in a fixed order
        """
        return self.decomposable, self.smooth, self.deterministic

    def summary(self) -> str:
        """
        :return: ``decomposable=<v> smooth=<v> deterministic=<v>``
        """
        return " ".join(f"{result.name}={result.verdict.value}" for result in self.results())

    def render_lines(self) -> list[str]:
        """
        :return: one machine readable line per property
        """
        return [str(result) for result in self.results()]

    def render_text(self) -> str:
        """
        :return: human readable description
        """
        lines = []
        for result in self.results():
            line = f"{result.name}: {result.verdict.value}"
            if result.witness is not None:
                line += f" (witness: {result.witness})"
            lines.append(line)
        lines.append(f"method: {self.method}")
        return "\n".join(lines)


@final
@dataclass(frozen=True, slots=True)
class Subcircuit:
    """
    Complete subcircuit, obtained by choosing one child of every visited sum
    node and all children of every visited product node.

    A shared sum node visited more than once may be chosen differently.

    :param chosen: (sum node, chosen child) pairs in visiting order
    :param term: (variable, value) pairs of the visited indicators
    :param coefficient: product of the visited parameters
    :param nodes: ids of the visited nodes
    """

    chosen: tuple[tuple[int, int], ...]

    term: frozenset[tuple[str, str]]

    coefficient: Fraction

    nodes: frozenset[int]

    def is_compatible(self, lambdas: CircuitInput) -> bool:
        """
        :return: if every indicator of the term is set to 1
        """
        return all(lambdas[item] == 1 for item in self.term)

    def choice(self, node: int) -> int | None:
        """
        :return: first child chosen at a sum node or None if not visited
        """
        for visited, child in self.chosen:
            if visited == node:
                return child
        return None

    def instantiation(self) -> dict[str, str] | None:
        """
        :return: the term as instantiation or None if it assigns a variable twice
        """
        result: dict[str, str] = {}
        for variable, value in self.term:
            if result.setdefault(variable, value) != value:
                return None
        return result


@final
@dataclass(frozen=True, slots=True)
class IncompletenessVerdict:
    """
    Evidence gathered for the parametric incompleteness property.

    :param factor: factor computed by the circuit
    :param deterministic: result of the determinism check
    """

    factor: Factor

    deterministic: PropertyResult

    @property
    def boolean(self) -> bool:
        """
        :return: if the computed factor is Boolean
        """
        return self.factor.is_boolean()

    @property
    def holds(self) -> bool:
        """
        :return: if a circuit computing a Boolean factor is deterministic
        """
        return not self.boolean or self.deterministic.verdict is Verdict.YES


def vars_of(circuit: Circuit) -> list[frozenset[str]]:
    """
    Collect the variables with some indicator at or under each node.

    :param circuit: circuit to inspect
    :return: variable names per node id
    """
    return circuit.accept(VariablesVisitor())


def check_decomposable(circuit: Circuit) -> PropertyResult:
    """
    Check that the children of every product node mention disjoint variables.

    :param circuit: circuit to check
    :return: result with a :class:`SharedVariable` witness if not decomposable
    """
    variables = vars_of(circuit)
    for identifier, node in enumerate(circuit.nodes):
        if isinstance(node, Product):
            owners: dict[str, int] = {}
            for child in node.children:
                for variable in sorted(variables[child]):
                    owner = owners.setdefault(variable, child)
                    if owner != child:
                        return PropertyResult(
                            "decomposable",
                            Verdict.NO,
                            SharedVariable(identifier, (owner, child), variable)
                        )
    return PropertyResult("decomposable", Verdict.YES)


def check_smooth(circuit: Circuit) -> PropertyResult:
    """
    Check that every declared variable has an indicator
    and all children of a sum node mention the same variables.

    :param circuit: circuit to check
    :return: result with a :class:`MissingVariable` witness if not smooth
    """
    variables = vars_of(circuit)
    for name in circuit.variable_names:
        if name not in variables[circuit.root]:
            return PropertyResult("smooth", Verdict.NO, MissingVariable(name))
    for identifier, node in enumerate(circuit.nodes):
        if isinstance(node, Sum):
            for child in node.children:
                missing = variables[identifier] - variables[child]
                if missing:
                    return PropertyResult(
                        "smooth",
                        Verdict.NO,
                        MissingVariable(min(missing), identifier, child)
                    )
    return PropertyResult("smooth", Verdict.YES)


def check_deterministic(circuit: Circuit, max_vars: int = DEFAULT_LIMITS.max_vars) -> PropertyResult:
    """
    Check that under every complete instantiation
    each sum node has at most one non-zero child.

    :param circuit: circuit to check
    :param max_vars: skip the check above this number of variables
    :return: result with a :class:`ConflictingBranches` witness if not deterministic
    """
    if len(circuit.variables) > max_vars:
        logger.info("determinism check skipped for %d variables", len(circuit.variables))
        return PropertyResult("deterministic", Verdict.SKIPPED)
    sums = [(i, node) for i, node in enumerate(circuit.nodes) if isinstance(node, Sum)]
    if not sums:
        return PropertyResult("deterministic", Verdict.YES)
    for x in circuit.instantiations():
        values = circuit.accept(EvaluatingVisitor(input_from_instantiation(circuit, x)))
        for identifier, node in sums:
            nonzero = [child for child in node.children if values[child] != 0]
            if len(nonzero) > 1:
                first, second = nonzero[:2]
                return PropertyResult(
                    "deterministic",
                    Verdict.NO,
                    ConflictingBranches(
                        tuple(x.items()),
                        identifier,
                        (first, second),
                        (values[first], values[second])
                    )
                )
    return PropertyResult("deterministic", Verdict.YES)


def check_properties(circuit: Circuit, max_vars: int = DEFAULT_LIMITS.max_vars) -> PropertyReport:
    """
    Check decomposability, smoothness and determinism.

    :param circuit: circuit to check
    :param max_vars: variable limit for the determinism check
    :return: combined report
    """
    return PropertyReport(
        check_decomposable(circuit),
        check_smooth(circuit),
        check_deterministic(circuit, max_vars),
        max_vars
    )


def count_subcircuits(circuit: Circuit) -> int:
    """
    Count the complete subcircuits without enumerating them.

    :param circuit: circuit to inspect
    :return: exact number of complete subcircuits of the root
    """
    return circuit.accept(CountingVisitor())[circuit.root]


def enumerate_subcircuits(circuit: Circuit, limit: int = DEFAULT_LIMITS.subcircuits) -> list[Subcircuit]:
    """
    Enumerate all complete subcircuits of the root.

    :param circuit: circuit to inspect
    :param limit: maximum number of subcircuits
    :raise errors.LimitExceededError: If the circuit has more than limit subcircuits
    :return: subcircuits with their terms and coefficients
    """
    count = count_subcircuits(circuit)
    if count > limit:
        raise LimitExceededError("too many complete subcircuits", limit, count)
    found: list[list[Subcircuit]] = []
    for identifier, node in enumerate(circuit.nodes):
        match node:
            case Indicator(variable, value):
                found.append([Subcircuit(
                    (),
                    frozenset(((variable, value),)),
                    Fraction(1),
                    frozenset((identifier,))
                )])
            case Parameter(value):
                found.append([Subcircuit((), frozenset(), value, frozenset((identifier,)))])
            case Sum(children):
                found.append([
                    Subcircuit(
                        ((identifier, child),) + below.chosen,
                        below.term,
                        below.coefficient,
                        below.nodes | {identifier}
                    )
                    for child in children
                    for below in found[child]
                ])
            case Product(children):
                found.append([
                    Subcircuit(
                        tuple(pair for part in parts for pair in part.chosen),
                        frozenset().union(*(part.term for part in parts)),
                        prod((part.coefficient for part in parts), start=Fraction(1)),
                        frozenset((identifier,)).union(*(part.nodes for part in parts))
                    )
                    for parts in product(*(found[child] for child in children))
                ])
    return found[circuit.root]


def require(condition: bool, message: str, witness: object = None) -> None:
    """
    :raise errors.PreconditionError: If the condition is false
    """
    if not condition:
        raise PreconditionError(message, witness)


def require_decomposable_smooth(circuit: Circuit) -> None:
    """
    :raise errors.PreconditionError: If the circuit is not decomposable and smooth
    """
    for result in (check_decomposable(circuit), check_smooth(circuit)):
        require(bool(result), f"circuit is not {result.name}", result.witness)


def terms_are_instantiations(circuit: Circuit, limit: int = DEFAULT_LIMITS.subcircuits) -> bool:
    """
    Check that the term of every complete subcircuit
    instantiates every declared variable exactly once.

    :param circuit: decomposable and smooth circuit
    :param limit: maximum number of subcircuits
    :raise errors.PreconditionError: If the circuit is not decomposable and smooth
    :raise errors.LimitExceededError: If the circuit has too many subcircuits
    :return: if all terms are instantiations
    """
    require_decomposable_smooth(circuit)
    names = set(circuit.variable_names)
    for subcircuit in enumerate_subcircuits(circuit, limit):
        x = subcircuit.instantiation()
        if x is None or x.keys() != names:
            return False
    return True


def is_strongly_deterministic(circuit: Circuit, limit: int = DEFAULT_LIMITS.subcircuits) -> bool:
    """
    Check determinism in its structural form: no two complete subcircuits
    with non-zero coefficients which choose different children
    at a sum node have compatible terms.

    This implies the semantic determinism of :func:`check_deterministic`.

    :param circuit: circuit to check
    :param limit: maximum number of subcircuits
    :raise errors.LimitExceededError: If the circuit has too many subcircuits
    :return: if the circuit is strongly deterministic
    """
    subcircuits = [
        subcircuit for subcircuit in enumerate_subcircuits(circuit, limit)
        if subcircuit.coefficient != 0 and subcircuit.instantiation() is not None
    ]
    for identifier, node in enumerate(circuit.nodes):
        if not isinstance(node, Sum):
            continue
        branches: dict[int, list[Subcircuit]] = {}
        for subcircuit in subcircuits:
            child = subcircuit.choice(identifier)
            if child is not None:
                branches.setdefault(child, []).append(subcircuit)
        groups = list(branches.values())
        for index, group in enumerate(groups):
            for other in groups[index + 1:]:
                for a, b in product(group, other):
                    if Subcircuit((), a.term | b.term, Fraction(1), frozenset()).instantiation() is not None:
                        return False
    return True


def find_dead_nodes(circuit: Circuit, limit: int = DEFAULT_LIMITS.subcircuits) -> set[int]:
    """
    Find the nodes appearing only in complete subcircuits with zero coefficients.

    :param circuit: circuit to inspect
    :param limit: maximum number of subcircuits
    :raise errors.LimitExceededError: If the circuit has too many subcircuits
    :return: ids of the dead nodes
    """
    alive: set[int] = set()
    for subcircuit in enumerate_subcircuits(circuit, limit):
        if subcircuit.coefficient != 0:
            alive |= subcircuit.nodes
    return set(range(len(circuit.nodes))) - alive


def non_boolean_parameters(circuit: Circuit) -> Iterable[int]:
    """
    :return: ids of parameter nodes with values other than 0 and 1
    """
    return (
        identifier for identifier, node in enumerate(circuit.nodes)
        if isinstance(node, Parameter) and node.value not in (0, 1)
    )


def check_parametric_incompleteness(circuit: Circuit, limits: Limits = DEFAULT_LIMITS) -> IncompletenessVerdict:
    """
    Check that a decomposable, smooth circuit free of dead nodes whose
    parameters are 0 or 1 is deterministic if it computes a Boolean factor.

    :param circuit: circuit satisfying the preconditions
    :param limits: limits for tabulation and enumeration
    :raise errors.PreconditionError: If a precondition is not satisfied
    :raise errors.LimitExceededError: If the circuit is too large
    :return: computed factor and determinism result
    """
    offending = next(iter(non_boolean_parameters(circuit)), None)
    require(offending is None, "circuit has parameters other than 0 and 1", offending)
    require_decomposable_smooth(circuit)
    dead = find_dead_nodes(circuit, limits.subcircuits)
    require(not dead, "circuit has dead nodes", sorted(dead))
    factor = factor_of_circuit(circuit, limits.max_vars)
    verdict = IncompletenessVerdict(factor, check_deterministic(circuit, limits.max_vars))
    logger.debug("boolean factor: %s, deterministic: %s", verdict.boolean, verdict.deterministic.verdict.value)
    return verdict
