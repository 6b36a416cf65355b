#!/usr/bin/python3

"""Encoding of gate level circuits as Boolean factors"""

from __future__ import annotations
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Final, final
from ..circuits import Variable, instantiations
from ..factors import Factor, FactorSet
from .gates import BoolCircuit, Gate, GateKind

__all__ = (
    "Literal",
    "Clause",
    "CnfFactorSet",
    "tseitin",
)

BIT_VALUES: Final = ("0", "1")

Literal = tuple[str, bool]
"""
Bit variable with polarity, True if positive.
"""

Clause = tuple[Literal, ...]
"""
Disjunction of literals.
"""


@final
@dataclass(frozen=True, slots=True)
class CnfFactorSet:
    """
    Boolean factors encoding a gate level circuit.

    :param variables: one bit per gate, named s<id> for input gates
                      and g<id> for the others
    :param clauses: clauses in order of emission
    :param factors: exactly-one factors over the selector bits
                    of each variable, then one factor per clause
    :param selectors: bit variable of each (variable, value)
    :param gates: description of the gate behind each auxiliary bit
    """

    variables: tuple[Variable, ...]

    clauses: tuple[Clause, ...]

    factors: tuple[Factor, ...]

    selectors: Mapping[tuple[str, str], str]

    gates: Mapping[str, str]

    def factor_set(self) -> FactorSet:
        """
        :return: the factors with their declared variables
        """
        return FactorSet(self.variables, self.factors)

    def comments(self) -> list[str]:
        """
        :return: lines describing the selector and auxiliary bits
        """
        lines = [f"{bit}: selects {variable}={value}" for (variable, value), bit in self.selectors.items()]
        lines.extend(f"{bit}: {description}" for bit, description in self.gates.items())
        return lines

    def satisfies(self, assignment: Mapping[str, str]) -> bool:
        """
        :param assignment: value "0" or "1" of every bit
        :return: if every factor is 1 under the assignment
        """
        return all(f.value(assignment) == 1 for f in self.factors)


def bit_variable(name: str) -> Variable:
    """
    :return: binary variable with values "0" and "1"
    """
    return Variable(name, BIT_VALUES)


def clause_factor(clause: Clause, position: Mapping[str, int], name: str) -> Factor:
    """
    :return: factor which is 0 exactly where every literal is false
    """
    scope = tuple(bit_variable(bit) for bit in sorted({bit for bit, _ in clause}, key=position.__getitem__))
    table = tuple(
        Fraction(any((x[bit] == "1") == positive for bit, positive in clause))
        for x in instantiations(scope)
    )
    return Factor(scope, table, name)


def exactly_one_factor(bits: tuple[str, ...], name: str) -> Factor:
    """
    :return: factor which is 1 exactly where one bit is set
    """
    scope = tuple(map(bit_variable, bits))
    table = tuple(
        Fraction(sum(value == "1" for value in x.values()) == 1)
        for x in instantiations(scope)
    )
    return Factor(scope, table, name)


def tseitin(bc: BoolCircuit) -> CnfFactorSet:
    """
    Introduce one bit per gate and clauses equating it with the output of its gate.

    A unit clause asserts the output, exactly-one factors restrict
    the selector bits to one hot encodings.
    Models restricted to the selector bits correspond to the encodings
    of the instantiations with a true output, each extending in exactly one way.

    :param bc: circuit to encode
    :return: factors with entries 0 and 1
    """
    names: list[str] = []
    selectors: dict[tuple[str, str], str] = {}
    gates: dict[str, str] = {}
    for identifier, gate in enumerate(bc.gates):
        if gate.selector is not None:
            names.append(f"s{identifier}")
            selectors[gate.selector] = names[-1]
        else:
            names.append(f"g{identifier}")
            gates[names[-1]] = " ".join((gate.kind.value, *(names[wire] for wire in gate.inputs)))
    position = {name: index for index, name in enumerate(names)}
    clauses: list[Clause] = []
    seen: set[frozenset[Literal]] = set()

    def emit(*literals: Literal) -> None:
        key = frozenset(literals)
        if key in seen or any((bit, not positive) in key for bit, positive in key):
            return
        seen.add(key)
        clauses.append(tuple(sorted(key, key=lambda literal: position[literal[0]])))

    for identifier, gate in enumerate(bc.gates):
        g = names[identifier]
        match gate:
            case Gate(GateKind.TRUE):
                emit((g, True))
            case Gate(GateKind.FALSE):
                emit((g, False))
            case Gate(GateKind.NOT, (a,)):
                emit((g, False), (names[a], False))
                emit((g, True), (names[a], True))
            case Gate(GateKind.AND, (a, b)):
                emit((g, False), (names[a], True))
                emit((g, False), (names[b], True))
                emit((g, True), (names[a], False), (names[b], False))
            case Gate(GateKind.OR, (a, b)):
                emit((g, True), (names[a], False))
                emit((g, True), (names[b], False))
                emit((g, False), (names[a], True), (names[b], True))
            case Gate(GateKind.XOR, (a, b)):
                emit((g, False), (names[a], True), (names[b], True))
                emit((g, False), (names[a], False), (names[b], False))
                emit((g, True), (names[a], False), (names[b], True))
                emit((g, True), (names[a], True), (names[b], False))
    emit((names[bc.output], True))
    factors = [
        exactly_one_factor(tuple(selectors[(variable.name, value)] for value in variable.values), f"one.{variable.name}")
        for variable in bc.variables
    ]
    factors.extend(clause_factor(clause, position, f"c{index}") for index, clause in enumerate(clauses))
    return CnfFactorSet(
        tuple(map(bit_variable, names)),
        tuple(clauses),
        tuple(factors),
        selectors,
        gates
    )
