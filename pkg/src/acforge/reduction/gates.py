#!/usr/bin/python3

"""Gate level circuits comparing a product of factors with a threshold"""

from __future__ import annotations
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum, unique
from functools import reduce
from typing import Final, final
from ..circuits import Instantiation, Variable
from ..errors import PreconditionError
from ..factors import Factor, joint_scope

__all__ = (
    "GateKind",
    "Gate",
    "BitVector",
    "BoolCircuit",
    "GateBuilder",
    "build_comparator_circuit",
)


@unique
class GateKind(Enum):
    """
    Kinds of gates.
    """
    INPUT = "input"
    TRUE = "true"
    FALSE = "false"
    NOT = "not"
    AND = "and"
    OR = "or"
    XOR = "xor"


ARITY: Final = {
    GateKind.INPUT: 0,
    GateKind.TRUE: 0,
    GateKind.FALSE: 0,
    GateKind.NOT: 1,
    GateKind.AND: 2,
    GateKind.OR: 2,
    GateKind.XOR: 2,
}


@final
@dataclass(frozen=True, slots=True)
class Gate:
    """
    Gate reading the wires of preceding gates.

    :param kind: kind of the gate
    :param inputs: ids of the input gates
    :param selector: (variable, value) selected by an input gate
    """

    kind: GateKind

    inputs: tuple[int, ...] = ()

    selector: tuple[str, str] | None = None

    def __post_init__(self) -> None:
        if len(self.inputs) != ARITY[self.kind]:
            raise ValueError(f"{self.kind.value} gate needs {ARITY[self.kind]} inputs")
        if (self.selector is None) != (self.kind is not GateKind.INPUT):
            raise ValueError("exactly the input gates have selectors")

    def __str__(self) -> str:
        if self.selector is not None:
            return f"input {self.selector[0]}={self.selector[1]}"
        return " ".join((self.kind.value, *map(str, self.inputs)))

    def compute(self, inputs: Sequence[bool]) -> bool:
        """
        :param inputs: values of the input wires, in order
        :return: value of the output wire of a non-input gate
        """
        match self.kind:
            case GateKind.TRUE:
                return True
            case GateKind.FALSE:
                return False
            case GateKind.NOT:
                return not inputs[0]
            case GateKind.AND:
                return inputs[0] and inputs[1]
            case GateKind.OR:
                return inputs[0] or inputs[1]
            case GateKind.XOR:
                return inputs[0] != inputs[1]
        raise ValueError("input gates are not computed")


@final
@dataclass(frozen=True, slots=True)
class BitVector:
    """
    Wires carrying an unsigned integer, least significant bit first.

    :param wires: ids of the gates carrying the bits
    """

    wires: tuple[int, ...]

    @property
    def width(self) -> int:
        """
        :return: number of bits
        """
        return len(self.wires)


@final
@dataclass(frozen=True, slots=True)
class BoolCircuit:
    """
    Gates in topological order with a designated output.

    The inputs select values of variables, one hot per variable.

    :param variables: variables selected by the inputs
    :param gates: gates, inputs of a gate preceding it
    :param output: id of the output gate
    """

    variables: tuple[Variable, ...]

    gates: tuple[Gate, ...]

    output: int

    def __post_init__(self) -> None:
        for identifier, gate in enumerate(self.gates):
            if any(not 0 <= wire < identifier for wire in gate.inputs):
                raise ValueError(f"an input of gate {identifier} does not precede it")
        if not 0 <= self.output < len(self.gates):
            raise ValueError(f"output {self.output} is not a gate")

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def gate_count(self) -> int:
        """
        :return: number of gates which are no inputs
        """
        return sum(gate.kind is not GateKind.INPUT for gate in self.gates)

    def inputs(self) -> dict[tuple[str, str], int]:
        """
        :return: id of the input gate of each (variable, value)
        """
        return {
            gate.selector: identifier
            for identifier, gate in enumerate(self.gates)
            if gate.selector is not None
        }

    def simulate(self, assignment: Mapping[tuple[str, str], bool]) -> list[bool]:
        """
        Compute the value of every wire.

        :param assignment: value of every input
        :return: value per gate id
        """
        values: list[bool] = []
        for gate in self.gates:
            if gate.selector is not None:
                values.append(assignment[gate.selector])
            else:
                values.append(gate.compute([values[wire] for wire in gate.inputs]))
        return values

    def evaluate(self, x: Instantiation) -> bool:
        """
        Simulate the one hot encoding of an instantiation.

        :param x: complete instantiation of the variables
        :return: value of the output
        """
        assignment = {
            (variable.name, value): x[variable.name] == value
            for variable in self.variables
            for value in variable.values
        }
        return self.simulate(assignment)[self.output]


@final
class GateBuilder:
    """
    Incremental construction of Boolean circuits.

    Constants are folded and structurally equal gates are shared.

    :param variables: variables to create input gates for
    """

    variables: tuple[Variable, ...]

    gates: list[Gate]

    shared: dict[Gate, int]

    __slots__ = ("variables", "gates", "shared")

    def __init__(self, variables: Iterable[Variable]) -> None:
        self.variables = tuple(variables)
        self.gates = []
        self.shared = {}
        for variable in self.variables:
            for value in variable.values:
                self.add(Gate(GateKind.INPUT, selector=(variable.name, value)))

    def add(self, gate: Gate) -> int:
        """
        :return: id of a gate equal to gate, added if missing
        """
        try:
            return self.shared[gate]
        except KeyError:
            self.gates.append(gate)
            identifier = self.shared[gate] = len(self.gates) - 1
            return identifier

    def input(self, variable: str, value: str) -> int:
        """
        :return: id of the input gate selecting variable=value
        """
        return self.shared[Gate(GateKind.INPUT, selector=(variable, value))]

    def constant(self, value: bool) -> int:
        """
        :return: id of a constant gate
        """
        return self.add(Gate(GateKind.TRUE if value else GateKind.FALSE))

    def value_of(self, wire: int) -> bool | None:
        """
        :return: value of a constant gate, None for other gates
        """
        match self.gates[wire].kind:
            case GateKind.TRUE:
                return True
            case GateKind.FALSE:
                return False
        return None

    def not_(self, a: int) -> int:
        """
        :return: id of a wire carrying ¬a
        """
        constant = self.value_of(a)
        if constant is not None:
            return self.constant(not constant)
        gate = self.gates[a]
        if gate.kind is GateKind.NOT:
            return gate.inputs[0]
        return self.add(Gate(GateKind.NOT, (a,)))

    def and_(self, a: int, b: int) -> int:
        """
        :return: id of a wire carrying a ∧ b
        """
        for first, second in ((a, b), (b, a)):
            match self.value_of(first):
                case False:
                    return first
                case True:
                    return second
        if a == b:
            return a
        return self.add(Gate(GateKind.AND, (min(a, b), max(a, b))))

    def or_(self, a: int, b: int) -> int:
        """
        :return: id of a wire carrying a ∨ b
        """
        for first, second in ((a, b), (b, a)):
            match self.value_of(first):
                case True:
                    return first
                case False:
                    return second
        if a == b:
            return a
        return self.add(Gate(GateKind.OR, (min(a, b), max(a, b))))

    def xor(self, a: int, b: int) -> int:
        """
        :return: id of a wire carrying a ⊕ b
        """
        for first, second in ((a, b), (b, a)):
            match self.value_of(first):
                case False:
                    return second
                case True:
                    return self.not_(second)
        if a == b:
            return self.constant(False)
        return self.add(Gate(GateKind.XOR, (min(a, b), max(a, b))))

    def all_of(self, wires: Iterable[int]) -> int:
        """
        :return: id of a wire carrying the conjunction of the wires
        """
        return reduce(self.and_, wires, self.constant(True))

    def any_of(self, wires: Iterable[int]) -> int:
        """
        :return: id of a wire carrying the disjunction of the wires
        """
        return reduce(self.or_, wires, self.constant(False))

    def multiplexer(self, f: Factor) -> BitVector:
        """
        Select the binary encoding of the entry of the instantiation selected by the inputs.

        :param f: factor with integer entries
        :return: bits of the selected entry, at least one
        """
        width = max(1, max(int(entry) for entry in f.table).bit_length())
        rows = [
            (self.all_of(self.input(name, value) for name, value in x.items()), int(entry))
            for x, entry in f.rows()
        ]
        return BitVector(tuple(
            self.any_of(select for select, entry in rows if entry >> bit & 1)
            for bit in range(width)
        ))

    def add_vectors(self, a: BitVector, b: BitVector, width: int) -> BitVector:
        """
        Ripple carry addition truncated to width bits.

        :return: bits of a + b modulo 2^width
        """
        false = self.constant(False)
        carry = false
        bits = []
        for position in range(width):
            x = a.wires[position] if position < a.width else false
            y = b.wires[position] if position < b.width else false
            half = self.xor(x, y)
            bits.append(self.xor(half, carry))
            carry = self.or_(self.and_(x, y), self.and_(carry, half))
        return BitVector(tuple(bits))

    def multiply(self, a: BitVector, b: BitVector) -> BitVector:
        """
        Schoolbook shift and add multiplication.

        :return: bits of a·b, width a.width + b.width
        """
        width = a.width + b.width
        false = self.constant(False)
        result = BitVector((false,) * width)
        for shift, bit in enumerate(b.wires):
            partial = BitVector((false,) * shift + tuple(self.and_(wire, bit) for wire in a.wires))
            result = self.add_vectors(result, partial, width)
        return result

    def greater(self, a: BitVector, k: int) -> int:
        """
        Compare with a constant, scanning from the least significant bit.

        :return: id of a wire carrying a > k
        """
        if k >= 1 << a.width:
            return self.constant(False)
        result = self.constant(False)
        for position, wire in enumerate(a.wires):
            if k >> position & 1:
                result = self.and_(wire, result)
            else:
                result = self.or_(wire, result)
        return result

    def build(self, output: int) -> BoolCircuit:
        """
        Create a circuit keeping the inputs and the gates the output depends on.

        :param output: id of the output gate
        :return: new circuit
        """
        needed = {output}
        for identifier in range(output, -1, -1):
            if identifier in needed:
                needed.update(self.gates[identifier].inputs)
        renumbered: dict[int, int] = {}
        gates: list[Gate] = []
        for identifier, gate in enumerate(self.gates):
            if identifier in needed or gate.kind is GateKind.INPUT:
                renumbered[identifier] = len(gates)
                gates.append(Gate(gate.kind, tuple(renumbered[wire] for wire in gate.inputs), gate.selector))
        return BoolCircuit(self.variables, tuple(gates), renumbered[output])


def build_comparator_circuit(fs: Sequence[Factor], k: int) -> BoolCircuit:
    """
    Build a circuit whose output is true on the one hot encoding
    of an instantiation x iff the product of the factors at x exceeds k.

    :param fs: factors with integer entries
    :param k: non-negative integer threshold
    :raise ValueError: If no factors are passed
    :raise errors.PreconditionError: If k is negative or an entry is no integer
    :return: new circuit
    """
    if not fs:
        raise ValueError("no factors to compare")
    if k < 0:
        raise PreconditionError("negative threshold", k)
    for f in fs:
        for entry in f.table:
            if entry.denominator != 1:
                raise PreconditionError("factor entry is no integer", entry)
    builder = GateBuilder(joint_scope(variable for f in fs for variable in f.scope))
    vectors = [builder.multiplexer(f) for f in fs]
    product = reduce(builder.multiply, vectors)
    return builder.build(builder.greater(product, k))
