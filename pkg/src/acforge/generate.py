#!/usr/bin/python3

"""Random circuits and factors for testing and experiments"""

from __future__ import annotations
import logging
from collections.abc import Sequence
from fractions import Fraction
from math import prod
from random import Random
from typing import final
from .circuits import Circuit, CircuitBuilder, Variable
from .config import DEFAULT_LIMITS
from .factors import Factor, FactorSet
from .transform import prune_dead

__all__ = (
    "random_variables",
    "random_factor",
    "random_factor_set",
    "random_smooth_circuit",
    "random_nonsmooth_circuit",
    "random_boolean_circuit",
    "random_decision_circuit",
)

logger = logging.getLogger(__name__)


def random_variables(count: int, size: int = 2) -> tuple[Variable, ...]:
    """
    Create variables ``X0``, ``X1``, ... with values ``0``, ``1``, ...

    :param count: number of variables
    :param size: number of values of each variable
    :return: new variables
    """
    values = tuple(map(str, range(size)))
    return tuple(Variable(f"X{index}", values) for index in range(count))


def random_factor(
    rng: Random,
    scope: Sequence[Variable],
    max_entry: int = 7,
    denominators: Sequence[int] = (1,),
    name: str = ""
) -> Factor:
    """
    Create a factor with random entries.

    :param rng: source of randomness
    :param scope: variables of the factor
    :param max_entry: largest numerator
    :param denominators: denominators to choose from
    :param name: name of the factor
    :return: new factor
    """
    size = prod(len(variable.values) for variable in scope)
    return Factor(
        tuple(scope),
        tuple(Fraction(rng.randint(0, max_entry), rng.choice(denominators)) for _ in range(size)),
        name
    )


def random_factor_set(
    rng: Random,
    variables: Sequence[Variable],
    count: int,
    max_scope: int = 2,
    max_entry: int = 7,
    denominators: Sequence[int] = (1,)
) -> FactorSet:
    """
    Create factors over random non-empty subsets of some variables.

    :param rng: source of randomness
    :param variables: variables to choose scopes from
    :param count: number of factors
    :param max_scope: maximum size of a scope
    :param max_entry: largest numerator
    :param denominators: denominators to choose from
    :return: factors named ``f0``, ``f1``, ... declaring only the variables they use
    """
    factors = []
    for index in range(count):
        size = rng.randint(1, min(max_scope, len(variables)))
        scope = sorted(rng.sample(range(len(variables)), size))
        factors.append(random_factor(
            rng,
            [variables[position] for position in scope],
            max_entry,
            denominators,
            f"f{index}"
        ))
    used = {variable for factor in factors for variable in factor.scope}
    return FactorSet(tuple(variable for variable in variables if variable in used), tuple(factors))


@final
class CircuitGenerator:
    """
    Generator of random decomposable circuits.

    Every generated node mentions exactly the variables it was requested for.
    Nodes are reused across requests for the same variables,
    making the circuits DAGs rather than trees.

    :param rng: source of randomness
    :param variables: variables of the circuit
    :param boolean: draw parameters from 0 and 1 only
    :param complete: leaves mention every value of their variable
    :param max_arity: maximum number of children of a sum node
    :param share: probability of reusing a node
    """

    rng: Random

    builder: CircuitBuilder

    boolean: bool

    complete: bool

    max_arity: int

    share: float

    pools: dict[frozenset[str], list[int]]

    __slots__ = ("rng", "builder", "boolean", "complete", "max_arity", "share", "pools")

    def __init__(
        self,
        rng: Random,
        variables: Sequence[Variable],
        boolean: bool = False,
        complete: bool = False,
        max_arity: int = 2,
        share: float = 0.3
    ) -> None:
        self.rng = rng
        self.builder = CircuitBuilder(variables)
        self.boolean = boolean
        self.complete = complete
        self.max_arity = max_arity
        self.share = share
        self.pools = {}

    def parameter(self) -> int:
        """
        :return: id of a random parameter
        """
        if self.boolean:
            return self.builder.parameter(int(self.rng.random() >= 0.25))
        return self.builder.parameter(Fraction(self.rng.randint(0, 6), self.rng.randint(1, 3)))

    def leaf(self, variable: Variable) -> int:
        """
        :return: id of a node mentioning only the variable
        """
        builder = self.builder
        choice = self.rng.randrange(2 if self.complete else 4)
        if choice == 0:
            return builder.sum(
                builder.product((self.parameter(), builder.indicator(variable.name, value)))
                for value in variable.values
            )
        if choice == 1:
            return builder.sum(builder.indicator(variable.name, value) for value in variable.values)
        indicator = builder.indicator(variable.name, self.rng.choice(variable.values))
        if choice == 2:
            return indicator
        return builder.product((self.parameter(), indicator))

    def partition(self, scope: Sequence[Variable]) -> list[list[Variable]]:
        """
        :return: random partition of scope into at least two blocks
        """
        shuffled = list(scope)
        self.rng.shuffle(shuffled)
        cuts = sorted(self.rng.sample(range(1, len(shuffled)), self.rng.randint(1, len(shuffled) - 1)))
        return [shuffled[start:end] for start, end in zip([0] + cuts, cuts + [len(shuffled)])]

    def node(self, scope: Sequence[Variable], depth: int, smooth: bool = True) -> int:
        """
        Create or reuse a node mentioning exactly the variables of scope.

        :param scope: non-empty variables to mention
        :param depth: remaining number of nested internal nodes
        :param smooth: let every child of a sum node mention all of scope
        :return: id of the node
        """
        key = frozenset(variable.name for variable in scope)
        pool = self.pools.setdefault(key, [])
        if pool and self.rng.random() < self.share:
            return self.rng.choice(pool)
        if depth > 0 and self.rng.random() < 0.5:
            children = [self.node(scope, depth - 1, smooth)]
            for _ in range(self.rng.randint(1, self.max_arity) - 1):
                if smooth or len(scope) == 1:
                    children.append(self.node(scope, depth - 1, smooth))
                else:
                    size = self.rng.randint(1, len(scope) - 1)
                    children.append(self.node(self.rng.sample(list(scope), size), depth - 1, smooth))
            identifier = self.builder.sum(children)
        elif len(scope) == 1:
            identifier = self.leaf(scope[0])
        else:
            children = [self.node(block, max(depth - 1, 0), smooth) for block in self.partition(scope)]
            if self.rng.random() < 0.3:
                children.append(self.parameter())
            identifier = self.builder.product(children)
        pool.append(identifier)
        return identifier

    def build(self, root: int) -> Circuit:
        """
        :return: circuit of the nodes reachable from root
        """
        return self.builder.build(root)


def random_smooth_circuit(
    rng: Random,
    variables: Sequence[Variable],
    depth: int = 3,
    max_arity: int = 2,
    boolean: bool = False
) -> Circuit:
    """
    Create a random decomposable and smooth circuit.

    :param rng: source of randomness
    :param variables: declared variables, at least one
    :param depth: maximum nesting depth of internal nodes
    :param max_arity: maximum number of children of a sum node
    :param boolean: draw parameters from 0 and 1 only
    :raise ValueError: If no variables are passed
    :return: new circuit mentioning every declared variable
    """
    if not variables:
        raise ValueError("no variables to generate a circuit for")
    generator = CircuitGenerator(rng, variables, boolean=boolean, max_arity=max_arity)
    return generator.build(generator.node(variables, depth))


def random_nonsmooth_circuit(
    rng: Random,
    variables: Sequence[Variable],
    depth: int = 3,
    max_arity: int = 2
) -> Circuit:
    """
    Create a random decomposable circuit which is not smooth.

    The root sums a node over all variables and a node over a strict subset.
    Every value of every variable has an indicator.

    :param rng: source of randomness
    :param variables: declared variables, at least two
    :param depth: maximum nesting depth of internal nodes
    :param max_arity: maximum number of children of a sum node
    :raise ValueError: If less than two variables are passed
    :return: new circuit
    """
    if len(variables) < 2:
        raise ValueError("at least two variables are needed to violate smoothness")
    generator = CircuitGenerator(rng, variables, complete=True, max_arity=max_arity)
    full = generator.node(variables, depth, smooth=False)
    partial = generator.node(rng.sample(list(variables), rng.randint(1, len(variables) - 1)), depth, smooth=False)
    return generator.build(generator.builder.sum((full, partial)))


def random_boolean_circuit(
    rng: Random,
    variables: Sequence[Variable],
    depth: int = 3,
    limit: int = DEFAULT_LIMITS.subcircuits
) -> Circuit:
    """
    Create a random decomposable circuit with parameters 0 and 1
    free of dead nodes.

    Pruning may leave a circuit which is no longer smooth,
    namely the constant zero.

    :param rng: source of randomness
    :param variables: declared variables, at least one
    :param depth: maximum nesting depth of internal nodes
    :param limit: maximum number of subcircuits enumerated while pruning
    :raise errors.LimitExceededError: If the circuit has too many subcircuits
    :return: new circuit
    """
    circuit = random_smooth_circuit(rng, variables, depth, boolean=True)
    pruned = prune_dead(circuit, limit)
    logger.debug("generated %d nodes, %d left after pruning", len(circuit), len(pruned))
    return pruned


def random_decision_circuit(rng: Random, variables: Sequence[Variable]) -> Circuit:
    """
    Create a random deterministic and decomposable circuit which is not smooth.

    Every sum node branches on the values of one variable, the variables
    taken in a random order. Each branch either ends in a parameter
    or continues with the next variable.
    The first branch of the root always ends, the others always continue.

    :param rng: source of randomness
    :param variables: declared variables, at least two
    :raise ValueError: If less than two variables are passed
    :return: new circuit
    """
    if len(variables) < 2:
        raise ValueError("at least two variables are needed to violate smoothness")
    order = list(variables)
    rng.shuffle(order)
    builder = CircuitBuilder(variables)

    def parameter() -> int:
        return builder.parameter(Fraction(rng.randint(0, 6), rng.randint(1, 3)))

    def branch(position: int, first_ends: bool = False) -> int:
        variable = order[position]
        children = []
        for index, value in enumerate(variable.values):
            if position + 1 == len(order):
                below = parameter()
            elif first_ends:
                below = parameter() if index == 0 else branch(position + 1)
            else:
                below = parameter() if rng.random() < 0.5 else branch(position + 1)
            children.append(builder.product((builder.indicator(variable.name, value), below)))
        return builder.sum(children)

    return builder.build(branch(0, first_ends=True))
