#!/usr/bin/python3

"""Errors raised by circuit and factor operations"""

from __future__ import annotations
from collections.abc import Collection

__all__ = (
    "FormatError",
    "DomainError",
    "LimitExceededError",
    "PreconditionError",
)


class FormatError(ValueError):
    """
    Exception thrown when a file, a text fragment
    or a constructed value is malformed.

    :param message: message to be displayed
    :param line: number of the offending line, if known
    """

    message: str

    line: int | None

    __match_args__ = __slots__ = ("message", "line")

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(message, line)
        self.message = message
        self.line = line

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__module__}.{self.__class__.__qualname__}"
            f"({self.message!r}, {self.line!r})"
        )

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"[line {self.line}] {self.message}"


class DomainError(ValueError):
    """
    Exception thrown when a variable or value is unknown
    or variables are declared inconsistently.

    :param message: message to be displayed
    :param variables: names of the offending variables
    """

    message: str

    variables: Collection[str]

    __match_args__ = __slots__ = ("message", "variables")

    def __init__(self, message: str, variables: Collection[str]) -> None:
        super().__init__(message, variables)
        self.message = message
        self.variables = variables

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__module__}.{self.__class__.__qualname__}"
            f"({self.message!r}, {self.variables!r})"
        )

    def __str__(self) -> str:
        variables = ", ".join(map(str, self.variables))
        return f"[variables: {variables or 'none'}] {self.message}"


class LimitExceededError(RuntimeError):
    """
    Exception thrown when an exponential procedure
    would exceed its configured limit.

    :param message: message to be displayed
    :param limit: the configured limit
    :param count: lower bound of the required count
    """

    message: str

    limit: int

    count: int

    __match_args__ = __slots__ = ("message", "limit", "count")

    def __init__(self, message: str, limit: int, count: int) -> None:
        super().__init__(message, limit, count)
        self.message = message
        self.limit = limit
        self.count = count

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__module__}.{self.__class__.__qualname__}"
            f"({self.message!r}, {self.limit!r}, {self.count!r})"
        )

    def __str__(self) -> str:
        return f"[limit: {self.limit}, required: >= {self.count}] {self.message}"


class PreconditionError(ValueError):
    """
    Exception thrown when the precondition of an operation does not hold.

    :param message: message to be displayed
    :param witness: object demonstrating the violation, if any
    """

    message: str

    witness: object

    __match_args__ = __slots__ = ("message", "witness")

    def __init__(self, message: str, witness: object = None) -> None:
        super().__init__(message, witness)
        self.message = message
        self.witness = witness

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__module__}.{self.__class__.__qualname__}"
            f"({self.message!r}, {self.witness!r})"
        )

    def __str__(self) -> str:
        if self.witness is None:
            return self.message
        return f"[witness: {self.witness}] {self.message}"
