#!/usr/bin/python3

"""Limits for the exponential procedures"""

from __future__ import annotations
import os
from collections.abc import Mapping
from dataclasses import dataclass, fields, replace
from typing import Final, final
from .errors import FormatError

__all__ = (
    "ENVIRONMENT_VARIABLE",
    "Limits",
    "DEFAULT_LIMITS",
)

ENVIRONMENT_VARIABLE: Final = "ACFORGE_LIMITS"


@final
@dataclass(frozen=True, slots=True)
class Limits:
    """
    Limits guarding brute force enumeration.

    :param max_vars: maximum number of variables for tabulation
                     and the semantic determinism check
    :param subcircuits: maximum number of enumerated complete subcircuits
    :param memo: maximum number of memo table entries while compiling
    """

    max_vars: int = 20

    subcircuits: int = 1_000_000

    memo: int = 1_000_000

    def __post_init__(self) -> None:
        for field in fields(self):
            if getattr(self, field.name) < 0:
                raise FormatError(f"limit {field.name} must not be negative")

    @classmethod
    def parse(cls, text: str, base: Limits | None = None) -> Limits:
        """
        Parse limits written as ``max_vars=<n>,subcircuits=<n>``.

        :param text: comma separated assignments, may be empty
        :param base: limits providing values not mentioned in text
        :raise errors.FormatError: If the text is malformed
        :return: new instance
        """
        known = {field.name for field in fields(cls)}
        changes: dict[str, int] = {}
        for item in filter(None, map(str.strip, text.split(","))):
            key, separator, value = item.partition("=")
            key = key.strip()
            if not separator or key not in known:
                raise FormatError(f"invalid limit: {item!r}")
            try:
                changes[key] = int(value)
            except ValueError:
                raise FormatError(f"invalid limit value: {item!r}") from None
        return replace(base or cls(), **changes)

    @classmethod
    def from_environment(cls, environment: Mapping[str, str] = os.environ) -> Limits:
        """
        Create an instance from the ``ACFORGE_LIMITS`` environment variable.

        :param environment: mapping to read the variable from
        :raise errors.FormatError: If the variable is malformed
        :return: defaults overridden by the variable, if present
        """
        return cls.parse(environment.get(ENVIRONMENT_VARIABLE, ""))


DEFAULT_LIMITS: Final = Limits()
"""
Limits used when none are passed explicitly.
"""
