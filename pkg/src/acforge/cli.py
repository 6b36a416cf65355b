#!/usr/bin/python3

"""Command line interface binding the library to files and exit codes"""

from __future__ import annotations
import json
import logging
import sys
from argparse import ArgumentParser, Namespace
from collections.abc import Callable, Sequence
from dataclasses import replace
from functools import partial
from pathlib import Path
from random import Random
from typing import Final
from . import __version__, analysis, compilation, generate, oracle, query, reduction, transform
from .circuits import (
    Circuit,
    format_instantiation,
    format_rational,
    input_from_indicators,
    input_from_instantiation,
    parse_indicators,
    parse_instantiation,
    parse_rational
)
from .config import Limits
from .errors import DomainError, LimitExceededError, PreconditionError
from .factors import Factor, FactorSet
from .formats import dumps_circuit, dumps_factors, dumps_nnf, loads_circuit, loads_factors, loads_nnf
from .nnf import NnfCircuit

__all__ = (
    "EXIT_OK",
    "EXIT_INPUT",
    "EXIT_LIMIT",
    "EXIT_PRECONDITION",
    "build_parser",
    "main",
)

logger = logging.getLogger(__name__)

EXIT_OK: Final = 0

EXIT_INPUT: Final = 2

EXIT_LIMIT: Final = 3

EXIT_PRECONDITION: Final = 4

LOG_LEVELS: Final = (logging.WARNING, logging.INFO, logging.DEBUG)

Handler = Callable[[Namespace, Limits], str]


def read_text(path: str) -> str:
    """
    :param path: path of the file, ``-`` for standard input
    :raise OSError: If the file can not be read
    :return: content of the file
    """
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def write_text(path: str | None, text: str) -> None:
    """
    :param path: path of the file, None for standard output
    :param text: content to write
    :raise OSError: If the file can not be written
    """
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def read_circuit(path: str) -> Circuit:
    """
    :return: circuit stored in a file
    """
    return loads_circuit(read_text(path))


def read_factors(path: str) -> FactorSet:
    """
    :return: variables and factors stored in a file
    """
    return loads_factors(read_text(path))


def read_nnf(path: str) -> NnfCircuit:
    """
    :return: NNF circuit stored in a file
    """
    return loads_nnf(read_text(path))


def split_names(text: str) -> list[str]:
    """
    :return: comma separated names, empty for blank text
    """
    return [name for name in map(str.strip, text.split(",")) if name]


def lines(*items: str) -> str:
    """
    :return: items terminated by newlines
    """
    return "".join(f"{item}\n" for item in items)


def run_check(arguments: Namespace, limits: Limits) -> str:
    """check decomposability, smoothness and determinism"""
    report = analysis.check_properties(read_circuit(arguments.circuit), limits.max_vars)
    if arguments.text:
        return lines(report.render_text())
    return lines(report.summary(), *report.render_lines(), f"method={report.method}")


def run_eval(arguments: Namespace, limits: Limits) -> str:
    """evaluate under an input"""
    circuit = read_circuit(arguments.circuit)
    if arguments.ones is not None:
        lambdas = input_from_indicators(circuit, parse_indicators(arguments.ones))
    else:
        lambdas = input_from_instantiation(circuit, parse_instantiation(arguments.evidence))
    return lines(format_rational(query.evaluate(circuit, lambdas)))


def run_marginal(arguments: Namespace, limits: Limits) -> str:
    """compute a marginal"""
    circuit = read_circuit(arguments.circuit)
    value = query.marginal(circuit, parse_instantiation(arguments.evidence), arguments.strict)
    return lines(format_rational(value))


def run_mpe(arguments: Namespace, limits: Limits) -> str:
    """compute an MPE with witness"""
    circuit = read_circuit(arguments.circuit)
    result = query.mpe(circuit, parse_instantiation(arguments.evidence), not arguments.no_verify, limits.max_vars)
    return lines(str(result))


def run_map(arguments: Namespace, limits: Limits) -> str:
    """compute a MAP by enumeration"""
    circuit = read_circuit(arguments.circuit)
    value, witness = query.map_bruteforce(circuit, split_names(arguments.over), limits.subcircuits)
    return lines(format_rational(value), format_instantiation(witness, circuit.variable_names))


def run_smooth(arguments: Namespace, limits: Limits) -> str:
    """smooth a circuit"""
    return dumps_circuit(transform.smooth(read_circuit(arguments.circuit)))


def run_project(arguments: Namespace, limits: Limits) -> str:
    """sum out variables"""
    return dumps_circuit(transform.project(read_circuit(arguments.circuit), split_names(arguments.sum_out)))


def run_multiply(arguments: Namespace, limits: Limits) -> str:
    """multiply two circuits"""
    return dumps_circuit(transform.multiply(read_circuit(arguments.circuit), read_circuit(arguments.other)))


def run_maximize(arguments: Namespace, limits: Limits) -> str:
    """evaluate the maximizer circuit"""
    circuit = read_circuit(arguments.circuit)
    lambdas = input_from_instantiation(circuit, parse_instantiation(arguments.evidence))
    return lines(format_rational(transform.to_maximizer(circuit).evaluate(lambdas)))


def run_subcircuits(arguments: Namespace, limits: Limits) -> str:
    """count or list the complete subcircuits"""
    circuit = read_circuit(arguments.circuit)
    if arguments.count:
        return lines(str(analysis.count_subcircuits(circuit)))
    rows = []
    for subcircuit in analysis.enumerate_subcircuits(circuit, limits.subcircuits):
        term = ",".join(f"{variable}={value}" for variable, value in sorted(subcircuit.term))
        rows.append(f"coefficient={format_rational(subcircuit.coefficient)} term={term or 'none'}")
    return lines(*rows)


def run_dead(arguments: Namespace, limits: Limits) -> str:
    """list or prune dead nodes"""
    circuit = read_circuit(arguments.circuit)
    if arguments.prune:
        return dumps_circuit(transform.prune_dead(circuit, limits.subcircuits))
    dead = sorted(analysis.find_dead_nodes(circuit, limits.subcircuits))
    return lines(" ".join(map(str, dead)) or "none")


def run_compile(arguments: Namespace, limits: Limits) -> str:
    """compile factors into a circuit"""
    factor_set = read_factors(arguments.factors)
    match arguments.method:
        case "polynomial":
            circuit = compilation.compile_polynomial(
                factor_set.joint(),
                arguments.drop_zeros,
                max_vars=limits.max_vars
            )
        case "product":
            circuit = compilation.compile_product(factor_set.factors, limits.max_vars)
        case _:
            used = {variable.name for f in factor_set.factors for variable in f.scope}
            if arguments.order is None:
                order = [variable.name for variable in factor_set.variables if variable.name in used]
            else:
                order = split_names(arguments.order)
            circuit = compilation.compile_ordered(factor_set.factors, order, arguments.drop_zeros, limits=limits)
    logger.info("compiled %d nodes and %d edges", len(circuit), circuit.edge_count)
    return dumps_circuit(circuit)


def oracle_factor(arguments: Namespace, limits: Limits) -> Factor:
    """
    :return: joint factor of a factor file or the factor computed by a circuit file
    """
    if arguments.factors is not None:
        return read_factors(arguments.factors).joint()
    return oracle.factor_of_circuit(read_circuit(arguments.circuit), limits.max_vars)


def run_oracle(arguments: Namespace, limits: Limits) -> str:
    """answer queries from the table"""
    f = oracle_factor(arguments, limits)
    evidence = parse_instantiation(arguments.evidence)
    match arguments.query:
        case "table":
            return lines(*(
                " ".join(filter(None, (format_instantiation(x), format_rational(entry))))
                for x, entry in f.rows()
            ))
        case "marginal":
            return lines(format_rational(oracle.oracle_marginal(f, evidence)))
        case "mpe":
            value, witness = oracle.oracle_mpe(f, evidence)
        case _:
            value, witness = oracle.oracle_map(f, split_names(arguments.over))
    return lines(format_rational(value), format_instantiation(witness))


def run_reduce(arguments: Namespace, limits: Limits) -> str:
    """encode an MPE decision as Boolean factors"""
    factor_set = read_factors(arguments.factors)
    cnf = reduction.reduce_to_cnf(factor_set.factors, parse_rational(arguments.threshold))
    return dumps_factors(cnf.factor_set(), cnf.comments())


def run_mpe_via_pr(arguments: Namespace, limits: Limits) -> str:
    """decide or compute an MPE through compiled marginals"""
    factors = read_factors(arguments.factors).factors
    compiler = partial(compilation.compile_ordered, drop_zeros=True, limits=limits)
    if arguments.threshold is not None:
        answer = reduction.decide_mpe_via_pr(factors, parse_rational(arguments.threshold), compiler)
        return lines("yes" if answer else "no")
    return lines(format_rational(reduction.mpe_via_compiler(factors, compiler)))


def run_nnf2ac(arguments: Namespace, limits: Limits) -> str:
    """convert an NNF circuit"""
    return dumps_circuit(transform.nnf_to_ac(read_nnf(arguments.nnf), arguments.smooth))


def run_ac2nnf(arguments: Namespace, limits: Limits) -> str:
    """convert into an NNF circuit"""
    return dumps_nnf(transform.ac_to_nnf(read_circuit(arguments.circuit)))


def run_gen(arguments: Namespace, limits: Limits) -> str:
    """generate random test data"""
    rng = Random(arguments.seed)
    variables = generate.random_variables(arguments.vars, arguments.values)
    match arguments.kind:
        case "factors":
            return dumps_factors(generate.random_factor_set(rng, variables, arguments.factors))
        case "smooth":
            circuit = generate.random_smooth_circuit(rng, variables, arguments.depth)
        case "nonsmooth":
            circuit = generate.random_nonsmooth_circuit(rng, variables, arguments.depth)
        case "decision":
            circuit = generate.random_decision_circuit(rng, variables)
        case _:
            circuit = generate.random_boolean_circuit(rng, variables, arguments.depth, limits.subcircuits)
    return dumps_circuit(circuit)


def common_options() -> ArgumentParser:
    """
    :return: parser of the options shared by all subcommands
    """
    parser = ArgumentParser(add_help=False)
    parser.add_argument("--max-vars", type=int, help="maximum number of variables for tabulation")
    parser.add_argument("--subcircuit-limit", type=int, help="maximum number of enumerated subcircuits")
    parser.add_argument("-o", "--output", help="write the result to this file instead of standard output")
    parser.add_argument(
        "-v", "--verbose",
        action="count",
        default=0,
        help="log more details to standard error, may be repeated"
    )
    return parser


def build_parser() -> ArgumentParser:
    """
    Create the argument parser.

    Every subcommand stores its handler as ``handler``.

    :return: new parser
    """
    parser = ArgumentParser(prog="acforge", description="Arithmetic circuits over discrete factors")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = common_options()

    def command(name: str, handler: Handler) -> ArgumentParser:
        subparser = subparsers.add_parser(name, parents=[common], help=handler.__doc__)
        subparser.set_defaults(handler=handler)
        return subparser

    def circuit_command(name: str, handler: Handler) -> ArgumentParser:
        subparser = command(name, handler)
        subparser.add_argument("--circuit", required=True, help="circuit file")
        return subparser

    check = circuit_command("check", run_check)
    check.add_argument("--text", action="store_true", help="human readable report")
    evaluation = circuit_command("eval", run_eval)
    inputs = evaluation.add_mutually_exclusive_group()
    inputs.add_argument("--evidence", default="", help="instantiation Var=value,...")
    inputs.add_argument("--ones", help="indicators set to 1, as Var=value,...")
    marginal = circuit_command("marginal", run_marginal)
    marginal.add_argument("--evidence", default="", help="instantiation Var=value,...")
    marginal.add_argument("--strict", action="store_true", help="refuse circuits not decomposable and smooth")
    mpe = circuit_command("mpe", run_mpe)
    mpe.add_argument("--evidence", default="", help="instantiation Var=value,...")
    mpe.add_argument("--no-verify", action="store_true", help="skip the precondition checks")
    circuit_command("map", run_map).add_argument("--over", required=True, help="variables Var,...")
    circuit_command("smooth", run_smooth)
    circuit_command("project", run_project).add_argument("--sum-out", required=True, help="variables Var,...")
    circuit_command("multiply", run_multiply).add_argument("--other", required=True, help="second circuit file")
    circuit_command("maximize", run_maximize).add_argument("--evidence", default="", help="instantiation Var=value,...")
    circuit_command("subcircuits", run_subcircuits).add_argument("--count", action="store_true", help="only count")
    circuit_command("dead", run_dead).add_argument("--prune", action="store_true", help="write the pruned circuit")
    compile_ = command("compile", run_compile)
    compile_.add_argument("--factors", required=True, help="factor file")
    compile_.add_argument("--method", choices=("polynomial", "product", "ordered"), default="ordered")
    compile_.add_argument("--order", help="branching order Var,..., defaults to declaration order")
    compile_.add_argument("--drop-zeros", action="store_true", help="omit zero rows and branches")
    oracle_ = command("oracle", run_oracle)
    sources = oracle_.add_mutually_exclusive_group(required=True)
    sources.add_argument("--factors", help="factor file, the product of its factors is queried")
    sources.add_argument("--circuit", help="circuit file, the factor it computes is queried")
    oracle_.add_argument("--query", choices=("table", "marginal", "mpe", "map"), default="table")
    oracle_.add_argument("--evidence", default="", help="instantiation Var=value,...")
    oracle_.add_argument("--over", default="", help="MAP variables Var,...")
    reduce_ = command("reduce", run_reduce)
    reduce_.add_argument("--factors", required=True, help="factor file")
    reduce_.add_argument("--threshold", required=True, help="threshold p/q")
    via_pr = command("mpe-via-pr", run_mpe_via_pr)
    via_pr.add_argument("--factors", required=True, help="factor file")
    via_pr.add_argument("--threshold", help="only decide whether the MPE exceeds p/q")
    nnf2ac = command("nnf2ac", run_nnf2ac)
    nnf2ac.add_argument("--nnf", required=True, help="NNF file")
    nnf2ac.add_argument("--smooth", action="store_true", help="smooth the result")
    circuit_command("ac2nnf", run_ac2nnf)
    gen = command("gen", run_gen)
    gen.add_argument("--kind", choices=("smooth", "nonsmooth", "decision", "boolean", "factors"), default="smooth")
    gen.add_argument("--vars", type=int, default=3, help="number of variables")
    gen.add_argument("--values", type=int, default=2, help="number of values per variable")
    gen.add_argument("--factors", type=int, default=2, help="number of factors")
    gen.add_argument("--depth", type=int, default=3, help="maximum nesting depth")
    gen.add_argument("--seed", type=int, default=0, help="seed of the generator")
    return parser


def limits_from(arguments: Namespace) -> Limits:
    """
    Combine the defaults, the environment and the command line.

    :raise errors.FormatError: If the environment variable is malformed
    :return: limits to use
    """
    limits = Limits.from_environment()
    if arguments.max_vars is not None:
        limits = replace(limits, max_vars=arguments.max_vars)
    if arguments.subcircuit_limit is not None:
        limits = replace(limits, subcircuits=arguments.subcircuit_limit)
    return limits


def classify(error: Exception) -> tuple[str, int]:
    """
    :return: kind and exit code of an error
    """
    match error:
        case LimitExceededError():
            return "limit", EXIT_LIMIT
        case PreconditionError():
            return "precondition", EXIT_PRECONDITION
        case DomainError():
            return "domain", EXIT_INPUT
        case OSError():
            return "io", EXIT_INPUT
    return "format", EXIT_INPUT


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run a subcommand.

    Failures are reported as ``error=<kind> reason="<text>"`` on standard error.

    :param argv: arguments without the program name, defaults to sys.argv
    :return: exit code
    """
    arguments = build_parser().parse_args(argv)
    logging.basicConfig(
        level=LOG_LEVELS[min(arguments.verbose, len(LOG_LEVELS) - 1)],
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr
    )
    try:
        limits = limits_from(arguments)
        write_text(arguments.output, arguments.handler(arguments, limits))
    except (ValueError, LimitExceededError, OSError) as error:
        kind, code = classify(error)
        logger.debug("%s failed", arguments.command, exc_info=True)
        print(f"error={kind} reason={json.dumps(str(error), ensure_ascii=False)}", file=sys.stderr)
        return code
    return EXIT_OK
