#!/usr/bin/python3

"""Evaluation and optimization queries on circuits"""

from __future__ import annotations
import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import final
from .analysis import Verdict, check_deterministic, require_decomposable_smooth
from .circuits import (
    Circuit,
    CircuitInput,
    Indicator,
    Instantiation,
    Product,
    Sum,
    format_instantiation,
    format_rational,
    input_from_instantiation,
    instantiations
)
from .config import DEFAULT_LIMITS
from .errors import DomainError, LimitExceededError, PreconditionError
from .transform import to_maximizer
from .visitors.evaluation import ConsistencyVisitor, EvaluatingVisitor

__all__ = (
    "MpeResult",
    "evaluate",
    "marginal",
    "mpe",
    "map_bruteforce",
    "decide_mpe",
)

logger = logging.getLogger(__name__)


@final
@dataclass(frozen=True, slots=True)
class MpeResult:
    """
    Answer of an MPE query.

    :param value: maximum value compatible with the evidence
    :param witness: complete instantiation attaining it
    :param trace: (max node, chosen child) pairs of the traceback
    """

    value: Fraction

    witness: dict[str, str]

    trace: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        return f"{format_rational(self.value)}\n{format_instantiation(self.witness)}"


def evaluate(circuit: Circuit, lambdas: CircuitInput) -> Fraction:
    """
    Evaluate a circuit bottom up.

    :param circuit: circuit to evaluate
    :param lambdas: value of every indicator in the circuit
    :raise errors.DomainError: If lambdas misses an indicator
    :return: value of the root
    """
    return circuit.accept(EvaluatingVisitor(lambdas))[circuit.root]


def marginal(circuit: Circuit, y: Instantiation, strict: bool = False) -> Fraction:
    """
    Evaluate a circuit under the input of an instantiation.

    The result is the marginal f(y) if the circuit
    is decomposable, smooth and computes f.

    :param circuit: circuit to evaluate
    :param y: instantiation, possibly partial
    :param strict: refuse circuits which are not decomposable and smooth
    :raise errors.DomainError: If y uses unknown variables or values
    :raise errors.PreconditionError: If strict and the circuit is not decomposable and smooth
    :return: value of the root
    """
    if strict:
        require_decomposable_smooth(circuit)
    return evaluate(circuit, input_from_instantiation(circuit, y))


def mpe(
    circuit: Circuit,
    evidence: Instantiation,
    verify: bool = True,
    max_vars: int = DEFAULT_LIMITS.max_vars
) -> MpeResult:
    """
    Maximize over the complete instantiations compatible with the evidence
    using the maximizer circuit.

    The witness is found by a top down traceback choosing, at each max node,
    the child with lowest id attaining its value and compatible with the evidence.
    Without any compatible subcircuit, the evidence is completed
    with the first value of each variable.

    :param circuit: deterministic, decomposable and smooth circuit
    :param evidence: instantiation, possibly partial
    :param verify: check the preconditions, skipping determinism above max_vars
    :param max_vars: variable limit for the determinism check
    :raise errors.DomainError: If evidence uses unknown variables or values
    :raise errors.PreconditionError: If verify and a precondition does not hold
    :return: value, witness and trace
    """
    if verify:
        require_decomposable_smooth(circuit)
        deterministic = check_deterministic(circuit, max_vars)
        if deterministic.verdict is Verdict.NO:
            raise PreconditionError("circuit is not deterministic", deterministic.witness)
        if deterministic.verdict is Verdict.SKIPPED:
            logger.warning("determinism not checked for %d variables, correctness rests on the caller", len(circuit.variables))
    lambdas = input_from_instantiation(circuit, evidence)
    values = to_maximizer(circuit).values(lambdas)
    consistent = circuit.accept(ConsistencyVisitor(lambdas))
    witness: dict[str, str] = {}
    trace: list[tuple[int, int]] = []
    pending = [circuit.root] if consistent[circuit.root] else []
    visited: set[int] = set()
    while pending:
        identifier = pending.pop()
        if identifier in visited:
            continue
        visited.add(identifier)
        match circuit.nodes[identifier]:
            case Indicator(variable, value):
                witness.setdefault(variable, value)
            case Sum(children):
                child = min(
                    child for child in children
                    if values[child] == values[identifier] and consistent[child]
                )
                trace.append((identifier, child))
                pending.append(child)
            case Product(children):
                pending.extend(reversed(children))
    for variable in circuit.variables:
        witness.setdefault(variable.name, evidence.get(variable.name, variable.values[0]))
    return MpeResult(
        values[circuit.root],
        {name: witness[name] for name in circuit.variable_names},
        tuple(trace)
    )


def map_bruteforce(
    circuit: Circuit,
    over: Iterable[str],
    limit: int = DEFAULT_LIMITS.subcircuits
) -> tuple[Fraction, dict[str, str]]:
    """
    Maximize the marginal over the instantiations of some variables.

    :param circuit: decomposable and smooth circuit
    :param over: names of the variables to maximize over
    :param limit: maximum number of candidate instantiations
    :raise errors.DomainError: If a variable is not declared
    :raise errors.PreconditionError: If the circuit is not decomposable and smooth
    :raise errors.LimitExceededError: If there are more than limit candidates
    :return: maximum marginal and the first instantiation attaining it in row-major order
    """
    kept = set(over)
    unknown = kept.difference(circuit.variable_names)
    if unknown:
        raise DomainError("variables not declared", sorted(unknown))
    require_decomposable_smooth(circuit)
    variables = [variable for variable in circuit.variables if variable.name in kept]
    count = prod(len(variable.values) for variable in variables)
    if count > limit:
        raise LimitExceededError("too many MAP candidates", limit, count)
    best: tuple[Fraction, dict[str, str]] | None = None
    for y in instantiations(variables):
        value = marginal(circuit, y)
        if best is None or value > best[0]:
            best = value, y
    assert best is not None
    return best


def decide_mpe(circuit: Circuit, k: Fraction | int, max_vars: int = DEFAULT_LIMITS.max_vars) -> bool:
    """
    Decide whether the circuit exceeds a threshold at some complete instantiation.

    :param circuit: circuit to search
    :param k: threshold
    :param max_vars: maximum number of declared variables
    :raise errors.LimitExceededError: If the circuit declares more than max_vars variables
    :return: if some complete instantiation x has a value strictly greater than k
    """
    if len(circuit.variables) > max_vars:
        raise LimitExceededError("too many variables to search", max_vars, len(circuit.variables))
    return any(marginal(circuit, x) > k for x in circuit.instantiations())
