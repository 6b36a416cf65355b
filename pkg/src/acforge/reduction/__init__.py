#!/usr/bin/python3

"""Deciding and computing the MPE of factors with a circuit compiler"""

from __future__ import annotations
import logging
from collections.abc import Callable, Sequence
from fractions import Fraction
from functools import partial
from math import floor, lcm, prod
from typing import Final
from ..circuits import Circuit
from ..compilation import compile_ordered
from ..factors import Factor
from ..query import marginal
from .gates import BitVector, BoolCircuit, Gate, GateBuilder, GateKind, build_comparator_circuit
from .tseitin import CnfFactorSet, tseitin

__all__ = (
    "Compiler",
    "DEFAULT_COMPILER",
    "BitVector",
    "BoolCircuit",
    "Gate",
    "GateBuilder",
    "GateKind",
    "CnfFactorSet",
    "build_comparator_circuit",
    "tseitin",
    "scale_to_integers",
    "reduce_to_cnf",
    "decide_mpe_via_pr",
    "mpe_via_compiler",
)

logger = logging.getLogger(__name__)

Compiler = Callable[[Sequence[Factor]], Circuit]
"""
Function compiling factors into a decomposable and smooth
circuit computing the marginals of their product.
"""

DEFAULT_COMPILER: Final[Compiler] = partial(compile_ordered, drop_zeros=True)


def multiplier(f: Factor) -> int:
    """
    :return: least common multiple of the denominators of the entries
    """
    return lcm(*(entry.denominator for entry in f.table))


def scale_to_integers(fs: Sequence[Factor], k: Fraction | int) -> tuple[tuple[Factor, ...], int]:
    """
    Multiply each factor by the least common multiple of its denominators.

    For the integer products F(x) of the scaled factors,
    F(x) > threshold iff the product of the factors at x exceeds k.

    :param fs: factors to scale
    :param k: threshold to scale
    :return: scaled factors and floor of k times the product of the multipliers
    """
    multipliers = [multiplier(f) for f in fs]
    scaled = tuple(
        Factor(f.scope, tuple(entry * m for entry in f.table), f.name)
        for f, m in zip(fs, multipliers)
    )
    return scaled, floor(Fraction(k) * prod(multipliers))


def reduce_to_cnf(fs: Sequence[Factor], k: Fraction | int) -> CnfFactorSet:
    """
    Encode "the product of the factors exceeds k" as Boolean factors.

    :param fs: factors to encode
    :param k: non-negative threshold
    :raise ValueError: If no factors are passed
    :raise errors.PreconditionError: If k is negative
    :return: Boolean factors whose product has a model for every
             instantiation exceeding k
    """
    scaled, threshold = scale_to_integers(fs, k)
    comparator = build_comparator_circuit(scaled, threshold)
    cnf = tseitin(comparator)
    logger.debug("comparator with %d gates, %d clauses", comparator.gate_count, len(cnf.clauses))
    return cnf


def decide_mpe_via_pr(fs: Sequence[Factor], k: Fraction | int, compiler: Compiler = DEFAULT_COMPILER) -> bool:
    """
    Decide whether the product of some factors exceeds k somewhere
    by compiling the Boolean factors of :func:`reduce_to_cnf`
    and checking that their sum is positive.

    :param fs: factors to search
    :param k: threshold
    :param compiler: compiler to use
    :raise ValueError: If no factors are passed
    :raise errors.LimitExceededError: If the compiler exceeds a limit
    :return: if some complete instantiation x has a product strictly greater than k
    """
    if not fs:
        raise ValueError("no factors to decide")
    if k < 0:
        return True
    circuit = compiler(reduce_to_cnf(fs, k).factors)
    return marginal(circuit, {}) > 0


def mpe_via_compiler(fs: Sequence[Factor], compiler: Compiler = DEFAULT_COMPILER) -> Fraction:
    """
    Compute the maximum of the product of some factors
    by binary search over integer thresholds.

    :param fs: factors to maximize
    :param compiler: compiler to use
    :raise ValueError: If no factors are passed
    :raise errors.LimitExceededError: If the compiler exceeds a limit
    :return: maximum value of the product
    """
    if not fs:
        raise ValueError("no factors to maximize")
    scaled, _ = scale_to_integers(fs, 0)
    low = 0
    high = int(prod(f.maximum for f in scaled))
    while low < high:
        middle = (low + high) // 2
        if decide_mpe_via_pr(scaled, middle, compiler):
            low = middle + 1
        else:
            high = middle
    logger.debug("maximum %d found", low)
    return Fraction(low, prod(map(multiplier, fs)))
