#!/usr/bin/python3

"""Brute force answers computed from tables"""

from __future__ import annotations
from collections.abc import Iterable
from fractions import Fraction
from .circuits import Circuit, Instantiation, check_instantiation, input_from_instantiation
from .config import DEFAULT_LIMITS
from .errors import DomainError, LimitExceededError
from .factors import Factor
from .visitors.evaluation import EvaluatingVisitor

__all__ = (
    "factor_of_circuit",
    "oracle_marginal",
    "oracle_mpe",
    "oracle_map",
)


def factor_of_circuit(circuit: Circuit, max_vars: int = DEFAULT_LIMITS.max_vars) -> Factor:
    """
    Tabulate the values of a circuit at every complete instantiation.

    :param circuit: circuit to tabulate
    :param max_vars: maximum number of declared variables
    :raise errors.LimitExceededError: If the circuit declares more than max_vars variables
    :return: factor over the declared variables
    """
    if len(circuit.variables) > max_vars:
        raise LimitExceededError("too many variables to tabulate", max_vars, len(circuit.variables))
    table = []
    for x in circuit.instantiations():
        values = circuit.accept(EvaluatingVisitor(input_from_instantiation(circuit, x)))
        table.append(values[circuit.root])
    return Factor(circuit.variables, tuple(table))


def compatible(x: Instantiation, y: Instantiation) -> bool:
    """
    :return: if x and y agree on their common variables
    """
    return all(x[name] == value for name, value in y.items() if name in x)


def oracle_marginal(f: Factor, y: Instantiation) -> Fraction:
    """
    Sum the entries of all rows compatible with y.

    :param f: factor to sum
    :param y: instantiation of some scope variables
    :raise errors.DomainError: If y uses variables outside the scope or unknown values
    :return: the marginal f(y)
    """
    check_instantiation(f.scope, y)
    return sum((entry for x, entry in f.rows() if compatible(x, y)), Fraction(0))


def oracle_mpe(f: Factor, evidence: Instantiation) -> tuple[Fraction, dict[str, str]]:
    """
    Find a row compatible with the evidence with maximum entry.

    :param f: factor to maximize
    :param evidence: instantiation of some scope variables
    :raise errors.DomainError: If evidence uses variables outside the scope or unknown values
    :return: maximum entry and the first row in row-major order attaining it
    """
    check_instantiation(f.scope, evidence)
    best: tuple[Fraction, dict[str, str]] | None = None
    for x, entry in f.rows():
        if compatible(x, evidence) and (best is None or entry > best[0]):
            best = entry, x
    assert best is not None
    return best


def oracle_map(f: Factor, over: Iterable[str]) -> tuple[Fraction, dict[str, str]]:
    """
    Maximize the projection of a factor onto some of its variables.

    :param f: factor to project
    :param over: names of the scope variables to keep
    :raise errors.DomainError: If a name is not in the scope
    :return: maximum projected sum and the first instantiation attaining it,
             variables in scope order
    """
    kept = set(over)
    unknown = kept.difference(f.names)
    if unknown:
        raise DomainError("variables not in scope", sorted(unknown))
    return oracle_mpe(f.sum_out(name for name in f.names if name not in kept), {})
