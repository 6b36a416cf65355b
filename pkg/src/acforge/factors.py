#!/usr/bin/python3

"""Tabular factors over discrete variables"""

from __future__ import annotations
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import final
from .circuits import Instantiation, Variable, instantiations
from .errors import DomainError, FormatError

__all__ = (
    "Factor",
    "FactorSet",
    "joint_scope",
    "factor_value",
    "factor_product",
)


@final
@dataclass(frozen=True, slots=True)
class Factor:
    """
    Mapping from the complete instantiations of a scope to non-negative rationals.

    The table is stored in row-major order, the last scope variable varying fastest.

    :param scope: variables of the factor, may be empty
    :param table: one entry per complete instantiation of the scope
    :param name: optional name, ignored by comparisons
    """

    scope: tuple[Variable, ...]

    table: tuple[Fraction, ...]

    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        names = [variable.name for variable in self.scope]
        if len(set(names)) != len(names):
            raise DomainError("duplicate variables in scope", names)
        size = prod(len(variable.values) for variable in self.scope)
        if len(self.table) != size:
            raise FormatError(f"factor needs {size} entries, got {len(self.table)}")
        if not all(type(entry) is Fraction for entry in self.table):
            object.__setattr__(self, "table", tuple(map(Fraction, self.table)))
        if any(entry < 0 for entry in self.table):
            raise FormatError("negative factor entry")

    @classmethod
    def constant(cls, value: Fraction | int, name: str = "") -> Factor:
        """
        Create a factor over the empty scope.

        :param value: its only entry
        :param name: optional name
        :return: new factor
        """
        return cls((), (Fraction(value),), name)

    @property
    def names(self) -> tuple[str, ...]:
        """
        :return: names of the scope variables
        """
        return tuple(variable.name for variable in self.scope)

    @property
    def maximum(self) -> Fraction:
        """
        :return: largest entry
        """
        return max(self.table)

    def is_boolean(self) -> bool:
        """
        :return: if every entry is 0 or 1
        """
        return all(entry in (0, 1) for entry in self.table)

    def is_one(self) -> bool:
        """
        :return: if every entry is 1
        """
        return all(entry == 1 for entry in self.table)

    def index(self, x: Instantiation) -> int:
        """
        Compute the table position of an instantiation.

        :param x: instantiation assigning every scope variable, may assign more
        :raise errors.DomainError: If a scope variable is unassigned or out of domain
        :return: row-major position
        """
        position = 0
        for variable in self.scope:
            try:
                value = x[variable.name]
            except KeyError:
                raise DomainError("incomplete instantiation", (variable.name,)) from None
            position = position * len(variable.values) + variable.index(value)
        return position

    def value(self, x: Instantiation) -> Fraction:
        """
        :raise errors.DomainError: If x is incomplete or out of domain
        :return: entry of the instantiation x
        """
        return self.table[self.index(x)]

    def rows(self) -> Iterator[tuple[dict[str, str], Fraction]]:
        """
        :return: Iterator over (instantiation, entry) pairs in row-major order
        """
        return zip(instantiations(self.scope), self.table)

    def restrict(self, name: str, value: str) -> Factor:
        """
        Fix the value of a scope variable.

        :param name: name of the scope variable
        :param value: value to fix it to
        :raise errors.DomainError: If name is not in the scope or value not in its domain
        :return: new factor over the remaining scope
        """
        for position, variable in enumerate(self.scope):
            if variable.name == name:
                break
        else:
            raise DomainError("variable not in scope", (name,))
        size = len(variable.values)
        stride = prod(len(other.values) for other in self.scope[position + 1:])
        offset = variable.index(value) * stride
        block = size * stride
        table = tuple(
            entry
            for start in range(offset, len(self.table), block)
            for entry in self.table[start:start + stride]
        )
        return Factor(self.scope[:position] + self.scope[position + 1:], table, self.name)

    def sum_out(self, names: Iterable[str]) -> Factor:
        """
        Project this factor onto the remaining scope by summation.

        :param names: names of the variables to remove, must be in the scope
        :raise errors.DomainError: If a name is not in the scope
        :return: new factor mapping y to the sum of all compatible entries
        """
        removed = set(names)
        unknown = removed.difference(self.names)
        if unknown:
            raise DomainError("variables not in scope", sorted(unknown))
        scope = tuple(variable for variable in self.scope if variable.name not in removed)
        result = Factor(scope, (Fraction(0),) * prod(len(v.values) for v in scope), self.name)
        table = list(result.table)
        for x, entry in self.rows():
            table[result.index(x)] += entry
        return Factor(scope, tuple(table), self.name)


@final
@dataclass(frozen=True, slots=True)
class FactorSet:
    """
    Declared variables together with factors over them,
    as stored in a factor file.

    :param variables: declared variables
    :param factors: factors whose scopes use declared variables only
    """

    variables: tuple[Variable, ...]

    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        declared = {variable.name: variable for variable in self.variables}
        if len(declared) != len(self.variables):
            raise DomainError("duplicate variable declarations", sorted(declared))
        for factor in self.factors:
            for variable in factor.scope:
                if declared.get(variable.name) != variable:
                    raise DomainError("variable not declared consistently", (variable.name,))

    @classmethod
    def from_factors(cls, factors: Iterable[Factor]) -> FactorSet:
        """
        Declare exactly the variables used by some factors.

        :param factors: factors to collect
        :raise errors.DomainError: If a variable is used with different domains
        :return: new instance declaring variables in order of first use
        """
        factors = tuple(factors)
        return cls(joint_scope(variable for factor in factors for variable in factor.scope), factors)

    def joint(self) -> Factor:
        """
        :return: product of all factors
        """
        return factor_product(self.factors)


def joint_scope(variables: Iterable[Variable]) -> tuple[Variable, ...]:
    """
    Merge variable occurrences.

    :param variables: variables, possibly repeated
    :raise errors.DomainError: If a name is used with different domains
    :return: distinct variables in order of first occurrence
    """
    seen: dict[str, Variable] = {}
    for variable in variables:
        known = seen.setdefault(variable.name, variable)
        if known != variable:
            raise DomainError("inconsistent variable declarations", (variable.name,))
    return tuple(seen.values())


def factor_value(f: Factor, x: Instantiation) -> Fraction:
    """
    Look up the entry of a complete instantiation.

    :param f: factor to read
    :param x: instantiation of the scope of f
    :raise errors.DomainError: If x is incomplete
    :return: table entry of x
    """
    return f.value(x)


def factor_product(fs: Sequence[Factor]) -> Factor:
    """
    Multiply factors.

    :param fs: factors to multiply
    :raise ValueError: If no factors are passed
    :raise errors.DomainError: If a variable is declared with different domains
    :return: factor over the union of the scopes
    """
    if not fs:
        raise ValueError("no factors to multiply")
    scope = joint_scope(variable for f in fs for variable in f.scope)
    table = tuple(
        prod((f.value(x) for f in fs), start=Fraction(1))
        for x in instantiations(scope)
    )
    return Factor(scope, table)
