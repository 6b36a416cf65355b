#!/usr/bin/python3

"""Compilation of factors into circuits"""

from __future__ import annotations
import logging
from collections.abc import Mapping, Sequence
from fractions import Fraction
from math import prod
from typing import final
from .circuits import Circuit, CircuitBuilder, Variable
from .config import DEFAULT_LIMITS, Limits
from .errors import DomainError, LimitExceededError, PreconditionError
from .factors import Factor, joint_scope

__all__ = (
    "compile_polynomial",
    "compile_product",
    "compile_ordered",
)

logger = logging.getLogger(__name__)

ParameterDecomposition = Mapping[Fraction, Sequence[Fraction]]
"""
Mapping from factor values to parameters whose product is the value.
"""


def decompose(value: Fraction, parameters: ParameterDecomposition | None) -> Sequence[Fraction]:
    """
    :raise errors.PreconditionError: If the decomposition misses value or is wrong
    :return: parameters multiplying to value
    """
    if parameters is None:
        return (value,)
    try:
        factors = parameters[value]
    except KeyError:
        raise PreconditionError("no parameters for factor value", value) from None
    if prod(factors, start=Fraction(1)) != value:
        raise PreconditionError("parameters do not multiply to the factor value", value)
    return factors


def emit_polynomial(
    builder: CircuitBuilder,
    f: Factor,
    drop_zeros: bool = False,
    parameters: ParameterDecomposition | None = None
) -> int:
    """
    Add the polynomial of a factor to a builder.

    :return: id of the root sum, or of a zero parameter if every row was dropped
    """
    rows = []
    for x, entry in f.rows():
        if drop_zeros and entry == 0:
            continue
        children = [builder.parameter(value) for value in decompose(entry, parameters)]
        children.extend(builder.indicator(name, value) for name, value in x.items())
        rows.append(builder.product(children))
    if not rows:
        return builder.parameter(0)
    return builder.sum(rows)


def compile_polynomial(
    f: Factor,
    drop_zeros: bool = False,
    parameters: ParameterDecomposition | None = None,
    max_vars: int = DEFAULT_LIMITS.max_vars
) -> Circuit:
    """
    Compile a factor into its polynomial, a sum over one product
    θx·Πλx per complete instantiation x of its scope.

    :param f: factor to compile
    :param drop_zeros: omit rows with value 0
    :param parameters: decomposition of each factor value into parameters
                       used instead of the value itself
    :param max_vars: maximum size of the scope
    :raise errors.LimitExceededError: If the scope is larger than max_vars
    :raise errors.PreconditionError: If parameters does not decompose some value
    :return: deterministic, decomposable and smooth circuit computing the marginals of f
    """
    if len(f.scope) > max_vars:
        raise LimitExceededError("too many variables for the polynomial", max_vars, len(f.scope))
    builder = CircuitBuilder(f.scope)
    return builder.build(emit_polynomial(builder, f, drop_zeros, parameters))


def compile_product(fs: Sequence[Factor], max_vars: int = DEFAULT_LIMITS.max_vars) -> Circuit:
    """
    Multiply the polynomials of some factors.

    The result computes the product factor but not necessarily its marginals.

    :param fs: factors to compile
    :param max_vars: maximum size of each scope
    :raise ValueError: If no factors are passed
    :raise errors.DomainError: If a variable is declared with different domains
    :return: new circuit
    """
    if not fs:
        raise ValueError("no factors to compile")
    builder = CircuitBuilder(joint_scope(variable for f in fs for variable in f.scope))
    roots = []
    for f in fs:
        if len(f.scope) > max_vars:
            raise LimitExceededError("too many variables for the polynomial", max_vars, len(f.scope))
        roots.append(emit_polynomial(builder, f))
    return builder.build(builder.product(roots))


@final
class OrderedCompiler:
    """
    Decision compiler branching on the variables in a fixed order.

    Restricted factors are interned, so equal factors are the same object and
    a branch state is identified by the ids of its active factors.
    Sub-circuits are shared between branches reaching the same state.

    :param builder: builder receiving the nodes
    :param order: variables in branching order
    :param drop_zeros: omit zero branches instead of padding them
    :param memoize: share sub-circuits
    :param limit: maximum number of memo table entries
    """

    builder: CircuitBuilder

    order: tuple[Variable, ...]

    starts: list[tuple[Factor, ...]]

    drop_zeros: bool

    memoize: bool

    limit: int

    memo: dict[tuple[int, tuple[int, ...]], int | None]

    interned: dict[Factor, Factor]

    restrictions: dict[tuple[int, str, str], Factor]

    padding: dict[int, int]

    hits: int

    __slots__ = (
        "builder",
        "order",
        "starts",
        "drop_zeros",
        "memoize",
        "limit",
        "memo",
        "interned",
        "restrictions",
        "padding",
        "hits"
    )

    def __init__(
        self,
        builder: CircuitBuilder,
        order: tuple[Variable, ...],
        drop_zeros: bool,
        memoize: bool,
        limit: int
    ) -> None:
        self.builder = builder
        self.order = order
        self.starts = [() for _ in order]
        self.drop_zeros = drop_zeros
        self.memoize = memoize
        self.limit = limit
        self.memo = {}
        self.interned = {}
        self.restrictions = {}
        self.padding = {}
        self.hits = 0

    def intern(self, f: Factor) -> Factor:
        """
        :return: the first factor passed equal to f
        """
        return self.interned.setdefault(f, f)

    def start(self, f: Factor) -> None:
        """
        Activate a factor at the first of its variables in the order.

        :param f: factor with non-empty scope over variables of the order
        """
        depth = min(index for index, variable in enumerate(self.order) if variable in f.scope)
        self.starts[depth] += (self.intern(f),)

    def restrict(self, f: Factor, name: str, value: str) -> Factor:
        """
        :return: interned restriction of the interned factor f to name=value
        """
        key = (id(f), name, value)
        try:
            return self.restrictions[key]
        except KeyError:
            restricted = self.restrictions[key] = self.intern(f.restrict(name, value))
            return restricted

    def pad(self, depth: int) -> int | None:
        """
        :return: id of Π Σλ over the variables from depth on, None if there are none
        """
        if depth == len(self.order):
            return None
        if depth not in self.padding:
            variable = self.order[depth]
            node = self.builder.sum(self.builder.indicator(variable.name, value) for value in variable.values)
            rest = self.pad(depth + 1)
            self.padding[depth] = node if rest is None else self.builder.product((node, rest))
        return self.padding[depth]

    def zero(self, name: str, value: str, depth: int) -> int | None:
        """
        :return: id of a branch with value 0 over the variables from depth on, None if dropped
        """
        if self.drop_zeros:
            return None
        children = [self.builder.parameter(0), self.builder.indicator(name, value)]
        rest = self.pad(depth + 1)
        if rest is not None:
            children.append(rest)
        return self.builder.product(children)

    def compile(self, depth: int, active: tuple[Factor, ...]) -> int | None:
        """
        Compile the product of the active factors and the factors
        starting at or after depth.

        :param depth: position of the variable to branch on
        :param active: interned restricted factors started before depth, in order of activation
        :raise errors.LimitExceededError: If the memo table grows too large
        :return: id of the sum node or None if the product is zero and zeros are dropped
        """
        key = (depth, tuple(map(id, active)))
        if self.memoize and key in self.memo:
            self.hits += 1
            return self.memo[key]
        variable = self.order[depth]
        started = active + self.starts[depth]
        branches = []
        for value in variable.values:
            scalar = Fraction(1)
            rest = []
            zero = False
            for f in started:
                restricted = self.restrict(f, variable.name, value) if variable in f.scope else f
                if not restricted.scope:
                    scalar *= restricted.table[0]
                elif restricted.maximum == 0:
                    zero = True
                elif not restricted.is_one():
                    rest.append(restricted)
            if zero or scalar == 0:
                branch = self.zero(variable.name, value, depth)
            elif depth + 1 == len(self.order):
                parameter = self.builder.parameter(scalar)
                branch = self.builder.product((parameter, self.builder.indicator(variable.name, value)))
            else:
                below = self.compile(depth + 1, tuple(rest))
                if below is None:
                    branch = None
                elif scalar == 1:
                    branch = self.builder.product((self.builder.indicator(variable.name, value), below))
                else:
                    parameter = self.builder.parameter(scalar)
                    branch = self.builder.product((parameter, self.builder.indicator(variable.name, value), below))
            if branch is not None:
                branches.append(branch)
        result = self.builder.sum(branches) if branches else None
        if self.memoize:
            self.memo[key] = result
            if len(self.memo) > self.limit:
                raise LimitExceededError("memo table too large", self.limit, len(self.memo))
        return result


def compile_ordered(
    fs: Sequence[Factor],
    order: Sequence[str] | None = None,
    drop_zeros: bool = False,
    memoize: bool = True,
    limits: Limits = DEFAULT_LIMITS
) -> Circuit:
    """
    Compile the product of some factors by branching on one variable after another.

    Each sum node branches on the values of a variable, each branch multiplies
    its indicator, the entries fixed by the branch and the compiled rest.
    Branches leading to equal restricted factors share their sub-circuit.
    Zero branches are multiplied by Σλ of the remaining variables.

    :param fs: factors to compile
    :param order: names of all variables in branching order, defaults to order of first use
    :param drop_zeros: omit zero branches, leaving Parameter(0) if everything is zero
    :param memoize: share sub-circuits of equal restricted factors
    :param limits: limit on the memo table size
    :raise ValueError: If no factors are passed
    :raise errors.DomainError: If order is no permutation of the variables
                               or a variable is declared with different domains
    :raise errors.LimitExceededError: If the memo table grows too large
    :return: deterministic, decomposable and smooth circuit computing the marginals of the product
    """
    if not fs:
        raise ValueError("no factors to compile")
    variables = joint_scope(variable for f in fs for variable in f.scope)
    domains = {variable.name: variable for variable in variables}
    names = list(domains) if order is None else list(order)
    if len(set(names)) != len(names) or set(names) != domains.keys():
        raise DomainError("order is not a permutation of the variables", sorted(set(names) ^ domains.keys()))
    builder = CircuitBuilder(variables)
    compiler = OrderedCompiler(builder, tuple(domains[name] for name in names), drop_zeros, memoize, limits.memo)
    scalar = Fraction(1)
    for f in fs:
        if f.scope:
            compiler.start(f)
        else:
            scalar *= f.table[0]
    root = compiler.compile(0, ()) if names else None
    if root is None or scalar == 0 and drop_zeros:
        root = builder.parameter(scalar if not names else 0)
    elif scalar != 1:
        root = builder.product((builder.parameter(scalar), root))
    circuit = builder.build(root)
    logger.debug("compiled %d nodes, %d memo entries, %d memo hits", len(circuit), len(compiler.memo), compiler.hits)
    return circuit
