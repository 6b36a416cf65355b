#!/usr/bin/python3

"""Line oriented text formats for factors, circuits and NNF circuits"""

from __future__ import annotations
from collections.abc import Iterable, Iterator
from typing import Final
from .circuits import (
    Circuit,
    Indicator,
    Node,
    Parameter,
    Product,
    Sum,
    Variable,
    format_rational,
    parse_rational
)
from .errors import FormatError
from .factors import Factor, FactorSet
from .nnf import And, Constant, Literal, NnfCircuit, NnfNode, Or

__all__ = (
    "loads_factors",
    "dumps_factors",
    "loads_circuit",
    "dumps_circuit",
    "loads_nnf",
    "dumps_nnf",
)

CIRCUIT_HEADER: Final = "ac"

NNF_HEADER: Final = "nnf"

Line = tuple[int, list[str]]


def tokenize(text: str) -> Iterator[Line]:
    """
    Split text into significant lines.

    Blank lines and lines starting with ``#`` are skipped.

    :param text: text to split
    :return: Iterator yielding (line number, tokens) pairs
    """
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if tokens and not tokens[0].startswith("#"):
            yield number, tokens


def parse_count(token: str, line: int) -> int:
    """
    :raise errors.FormatError: If the token is no non-negative integer
    :return: integer written by the token
    """
    if not token.isdigit():
        raise FormatError(f"expected a count, got {token!r}", line)
    return int(token)


def parse_counted(tokens: list[str], line: int) -> list[str]:
    """
    Parse ``<c> <item_1> ... <item_c>``.

    :raise errors.FormatError: If the count does not match
    :return: the items
    """
    if not tokens:
        raise FormatError("missing count", line)
    count = parse_count(tokens[0], line)
    if len(tokens) != count + 1:
        raise FormatError(f"expected {count} items, got {len(tokens) - 1}", line)
    return tokens[1:]


def parse_variable(tokens: list[str], line: int) -> Variable:
    """
    Parse the arguments of a ``var`` line.

    :raise errors.FormatError: If the declaration is malformed
    :return: declared variable
    """
    if not tokens:
        raise FormatError("missing variable name", line)
    try:
        return Variable(tokens[0], tuple(parse_counted(tokens[1:], line)))
    except FormatError as error:
        raise FormatError(error.message, line) from None


def dump_variable(variable: Variable) -> str:
    """
    :return: ``var`` line declaring the variable
    """
    return " ".join(("var", variable.name, str(len(variable.values))) + variable.values)


def declare(variables: dict[str, Variable], tokens: list[str], line: int) -> None:
    """
    Add a declaration to variables, rejecting redeclarations.
    """
    variable = parse_variable(tokens, line)
    if variable.name in variables:
        raise FormatError(f"variable {variable.name} declared twice", line)
    variables[variable.name] = variable


def lookup(variables: dict[str, Variable], name: str, line: int) -> Variable:
    """
    :raise errors.FormatError: If the variable was not declared before
    :return: declared variable
    """
    try:
        return variables[name]
    except KeyError:
        raise FormatError(f"undeclared variable {name}", line) from None


def loads_factors(text: str) -> FactorSet:
    """
    Parse a factor file.

    :param text: content of the file
    :raise errors.FormatError: If the content is malformed
    :return: declared variables and factors
    """
    variables: dict[str, Variable] = {}
    factors: list[Factor] = []
    lines = tokenize(text)
    for number, tokens in lines:
        match tokens:
            case ["var", *arguments]:
                declare(variables, arguments, number)
            case ["factor", name, *arguments]:
                scope = tuple(lookup(variables, v, number) for v in parse_counted(arguments, number))
                try:
                    number, entries = next(lines)
                except StopIteration:
                    raise FormatError(f"missing table of factor {name}", number) from None
                try:
                    factors.append(Factor(scope, tuple(map(parse_rational, entries)), name))
                except FormatError as error:
                    raise FormatError(error.message, number) from None
            case _:
                raise FormatError(f"unexpected line starting with {tokens[0]!r}", number)
    return FactorSet(tuple(variables.values()), tuple(factors))


def dumps_factors(factor_set: FactorSet, comments: Iterable[str] = ()) -> str:
    """
    Write a factor file.

    :param factor_set: variables and factors to write
    :param comments: lines written as comments before the declarations
    :return: content of the file
    """
    lines = [f"# {comment}" for comment in comments]
    lines.extend(map(dump_variable, factor_set.variables))
    for index, factor in enumerate(factor_set.factors):
        lines.append(" ".join(
            ("factor", factor.name or f"f{index}", str(len(factor.scope))) + factor.names
        ))
        lines.append(" ".join(map(format_rational, factor.table)))
    return "\n".join(lines) + "\n"


def parse_children(tokens: list[str], line: int) -> tuple[int, ...]:
    """
    :return: ids of a counted child list
    """
    return tuple(parse_count(token, line) for token in parse_counted(tokens, line))


def parse_graph(text: str, header: str) -> tuple[list[Variable], list[tuple[int, list[str]]], int]:
    """
    Split a circuit file into declarations, node lines and root.

    :raise errors.FormatError: If the header, declarations or root are malformed
    :return: variables, node lines and root id
    """
    lines = list(tokenize(text))
    if not lines or lines[0][1] != [header]:
        raise FormatError(f"missing header {header!r}", lines[0][0] if lines else None)
    match lines[-1]:
        case (number, ["root", root]):
            root_id = parse_count(root, number)
        case (number, _):
            raise FormatError("missing root line", number)
    variables: dict[str, Variable] = {}
    position = 1
    while position < len(lines) - 1 and lines[position][1][0] == "var":
        number, tokens = lines[position]
        declare(variables, tokens[1:], number)
        position += 1
    return list(variables.values()), lines[position:-1], root_id


def loads_circuit(text: str) -> Circuit:
    """
    Parse a circuit file.

    :param text: content of the file
    :raise errors.FormatError: If the content is malformed or a node is unreachable
    :raise errors.DomainError: If an indicator uses an undeclared value
    :return: parsed circuit
    """
    variables, lines, root = parse_graph(text, CIRCUIT_HEADER)
    nodes: list[Node] = []
    for number, tokens in lines:
        try:
            match tokens:
                case ["I", variable, value]:
                    nodes.append(Indicator(variable, value))
                case ["P", value]:
                    nodes.append(Parameter(parse_rational(value)))
                case ["+", *children]:
                    nodes.append(Sum(parse_children(children, number)))
                case ["*", *children]:
                    nodes.append(Product(parse_children(children, number)))
                case _:
                    raise FormatError(f"invalid node line starting with {tokens[0]!r}", number)
        except FormatError as error:
            raise FormatError(error.message, number) from None
    return Circuit(tuple(variables), tuple(nodes), root)


def dump_children(symbol: str, children: tuple[int, ...]) -> str:
    """
    :return: node line of an internal node
    """
    return " ".join((symbol, str(len(children)), *map(str, children)))


def dumps_circuit(circuit: Circuit) -> str:
    """
    Write a circuit file.

    :param circuit: circuit to write
    :return: content of the file
    """
    lines = [CIRCUIT_HEADER]
    lines.extend(map(dump_variable, circuit.variables))
    for node in circuit.nodes:
        match node:
            case Indicator(variable, value):
                lines.append(f"I {variable} {value}")
            case Parameter(value):
                lines.append(f"P {format_rational(value)}")
            case Sum(children):
                lines.append(dump_children("+", children))
            case Product(children):
                lines.append(dump_children("*", children))
    lines.append(f"root {circuit.root}")
    return "\n".join(lines) + "\n"


def loads_nnf(text: str) -> NnfCircuit:
    """
    Parse an NNF file.

    :param text: content of the file
    :raise errors.FormatError: If the content is malformed or a node is unreachable
    :raise errors.DomainError: If a literal uses an undeclared value
    :return: parsed NNF circuit
    """
    variables, lines, root = parse_graph(text, NNF_HEADER)
    nodes: list[NnfNode] = []
    for number, tokens in lines:
        match tokens:
            case ["L", variable, value]:
                nodes.append(Literal(variable, value, True))
            case ["N", variable, value]:
                nodes.append(Literal(variable, value, False))
            case ["A", *children]:
                nodes.append(And(parse_children(children, number)))
            case ["O", *children]:
                nodes.append(Or(parse_children(children, number)))
            case ["T"]:
                nodes.append(Constant(True))
            case ["F"]:
                nodes.append(Constant(False))
            case _:
                raise FormatError(f"invalid node line starting with {tokens[0]!r}", number)
    return NnfCircuit(tuple(variables), tuple(nodes), root)


def dumps_nnf(nnf: NnfCircuit) -> str:
    """
    Write an NNF file.

    :param nnf: NNF circuit to write
    :return: content of the file
    """
    lines = [NNF_HEADER]
    lines.extend(map(dump_variable, nnf.variables))
    for node in nnf.nodes:
        match node:
            case Literal(variable, value, positive):
                lines.append(f"{'L' if positive else 'N'} {variable} {value}")
            case And(children):
                lines.append(dump_children("A", children))
            case Or(children):
                lines.append(dump_children("O", children))
            case Constant(value):
                lines.append("T" if value else "F")
    lines.append(f"root {nnf.root}")
    return "\n".join(lines) + "\n"
