#!/usr/bin/python3

"""Tests for the command line interface"""

import os
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase, mock
from acforge.cli import EXIT_INPUT, EXIT_LIMIT, EXIT_OK, EXIT_PRECONDITION, main
from acforge.formats import dumps_circuit, loads_circuit, loads_factors
from acforge.query import marginal
from .samples import AC1_FILE, FACTOR_FILE, ac2, polynomial


class CliTest(TestCase):
    """Tests for running subcommands"""

    directory: TemporaryDirectory[str]

    def setUp(self) -> None:
        """create input files"""
        self.directory = TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.factors = self.write("factors.txt", FACTOR_FILE)
        self.ac1 = self.write("ac1.txt", AC1_FILE)
        self.polynomial = self.write("polynomial.txt", dumps_circuit(polynomial()))

    def write(self, name: str, text: str) -> str:
        """write a file into the temporary directory"""
        path = Path(self.directory.name, name)
        path.write_text(text, encoding="utf-8")
        return str(path)

    def run_main(self, *arguments: str) -> tuple[int, str, str]:
        """run the interface and capture its output"""
        stdout = StringIO()
        stderr = StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            code = main(arguments)
        return code, stdout.getvalue(), stderr.getvalue()

    def assertOutput(self, expected: str, *arguments: str) -> None:
        """assert success with some output"""
        code, stdout, stderr = self.run_main(*arguments)
        self.assertEqual(code, EXIT_OK, stderr)
        self.assertEqual(stdout, expected)

    def assertFailure(self, code: int, kind: str, *arguments: str) -> str:
        """assert failure with some exit code and error kind"""
        actual, stdout, stderr = self.run_main(*arguments)
        self.assertEqual(actual, code)
        self.assertEqual(stdout, "")
        errors = [line for line in stderr.splitlines() if line.startswith("error=")]
        self.assertEqual(len(errors), 1)
        self.assertTrue(errors[0].startswith(f"error={kind} reason=\""), errors[0])
        return errors[0]

    def test_queries(self) -> None:
        """test queries on the sample polynomial"""
        self.assertOutput("29\n", "marginal", "--circuit", self.polynomial)
        self.assertOutput("7\n", "marginal", "--circuit", self.polynomial, "--evidence", "A=1")
        self.assertOutput("12\nA=0,B=0\n", "mpe", "--circuit", self.polynomial)
        self.assertOutput("4\nA=1,B=0\n", "mpe", "--circuit", self.polynomial, "--evidence", "A=1")
        self.assertOutput("22\nA=0\n", "map", "--circuit", self.polynomial, "--over", "A")
        self.assertOutput("16\n", "eval", "--circuit", self.polynomial, "--ones", "A=1,A=0,B=0")
        self.assertOutput("12\n", "maximize", "--circuit", self.polynomial)
        self.assertOutput("4\n", "subcircuits", "--circuit", self.polynomial, "--count")
        self.assertOutput("none\n", "dead", "--circuit", self.polynomial)

    def test_check(self) -> None:
        """test property reports"""
        code, stdout, _ = self.run_main("check", "--circuit", self.ac1)
        self.assertEqual(code, EXIT_OK)
        rows = stdout.splitlines()
        self.assertEqual(rows[0], "decomposable=yes smooth=no deterministic=yes")
        self.assertTrue(rows[2].startswith("property=smooth result=no witness="))
        self.assertEqual(rows[-1], "method=exact")
        code, stdout, _ = self.run_main("check", "--circuit", self.ac1, "--text")
        self.assertIn("smooth: no (witness: ", stdout)

    def test_transform(self) -> None:
        """test commands writing circuits"""
        code, stdout, _ = self.run_main("smooth", "--circuit", self.ac1)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(loads_circuit(stdout), ac2())
        output = str(Path(self.directory.name, "projected.txt"))
        self.assertOutput("", "project", "--circuit", self.polynomial, "--sum-out", "B", "-o", output)
        projected = loads_circuit(Path(output).read_text(encoding="utf-8"))
        self.assertEqual(marginal(projected, {"A": "0"}), 22)

    def test_compile(self) -> None:
        """test compilation of the sample factors"""
        for method, total in (("ordered", 29), ("polynomial", 29), ("product", 54)):
            code, stdout, stderr = self.run_main("compile", "--factors", self.factors, "--method", method)
            self.assertEqual(code, EXIT_OK, stderr)
            circuit = loads_circuit(stdout)
            self.assertEqual(marginal(circuit, {}), total)
            self.assertEqual(marginal(circuit, {"A": "1", "B": "0"}), 4)
        code, stdout, _ = self.run_main("compile", "--factors", self.factors, "--order", "B,A", "--drop-zeros")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(marginal(loads_circuit(stdout), {"B": "1"}), 13)

    def test_oracle(self) -> None:
        """test brute force answers"""
        self.assertOutput(
            "A=1,B=1 3\nA=1,B=0 4\nA=0,B=1 10\nA=0,B=0 12\n",
            "oracle", "--factors", self.factors
        )
        self.assertOutput("12\nA=0,B=0\n", "oracle", "--factors", self.factors, "--query", "mpe")
        self.assertOutput("16\nB=0\n", "oracle", "--circuit", self.polynomial, "--query", "map", "--over", "B")
        self.assertOutput("2\n", "oracle", "--circuit", self.ac1, "--query", "marginal", "--evidence", "A=0")

    def test_reduction(self) -> None:
        """test the MPE decision through compiled marginals"""
        self.assertOutput("yes\n", "mpe-via-pr", "--factors", self.factors, "--threshold", "11")
        self.assertOutput("no\n", "mpe-via-pr", "--factors", self.factors, "--threshold", "12")
        self.assertOutput("12\n", "mpe-via-pr", "--factors", self.factors)
        code, stdout, _ = self.run_main("reduce", "--factors", self.factors, "--threshold", "23/2")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(loads_factors(stdout).factors)

    def test_generate(self) -> None:
        """test reproducible generation"""
        for kind in ("smooth", "nonsmooth", "decision", "boolean"):
            first = self.run_main("gen", "--kind", kind, "--seed", "3")
            self.assertEqual(first[0], EXIT_OK)
            self.assertEqual(first, self.run_main("gen", "--kind", kind, "--seed", "3"))
            loads_circuit(first[1])
        code, stdout, _ = self.run_main("gen", "--kind", "factors", "--vars", "4", "--factors", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(loads_factors(stdout).factors), 3)

    def test_stdin(self) -> None:
        """test reading from standard input"""
        with mock.patch("sys.stdin", StringIO(AC1_FILE)):
            self.assertOutput("1\n", "eval", "--circuit", "-", "--evidence", "A=0")

    def test_input_errors(self) -> None:
        """test exit codes of invalid inputs"""
        self.assertFailure(EXIT_INPUT, "io", "marginal", "--circuit", str(Path(self.directory.name, "missing")))
        self.assertFailure(EXIT_INPUT, "domain", "marginal", "--circuit", self.polynomial, "--evidence", "C=1")
        broken = self.write("broken.txt", AC1_FILE.replace("* 2 0 1", "* 2 0 7"))
        self.assertFailure(EXIT_INPUT, "format", "marginal", "--circuit", broken)
        self.assertFailure(EXIT_INPUT, "format", "marginal", "--circuit", self.polynomial, "--evidence", "A")

    def test_precondition(self) -> None:
        """test exit codes of violated preconditions"""
        self.assertFailure(EXIT_PRECONDITION, "precondition", "mpe", "--circuit", self.ac1)
        self.assertFailure(EXIT_PRECONDITION, "precondition", "marginal", "--circuit", self.ac1, "--strict")

    def test_limits(self) -> None:
        """test limits from the command line and the environment"""
        line = self.assertFailure(
            EXIT_LIMIT, "limit",
            "map", "--circuit", self.polynomial, "--over", "A,B", "--subcircuit-limit", "3"
        )
        self.assertIn("[limit: 3, required: >= 4]", line)
        with mock.patch.dict(os.environ, {"ACFORGE_LIMITS": "subcircuits=3"}):
            self.assertFailure(EXIT_LIMIT, "limit", "map", "--circuit", self.polynomial, "--over", "A,B")
            self.assertOutput(
                "12\nA=0,B=0\n",
                "map", "--circuit", self.polynomial, "--over", "A,B", "--subcircuit-limit", "4"
            )
        with mock.patch.dict(os.environ, {"ACFORGE_LIMITS": "oops"}):
            self.assertFailure(EXIT_INPUT, "format", "marginal", "--circuit", self.polynomial)
        self.assertFailure(EXIT_LIMIT, "limit", "oracle", "--circuit", self.polynomial, "--max-vars", "1")

    def test_usage(self) -> None:
        """test argument errors and the version"""
        with redirect_stderr(StringIO()), self.assertRaises(SystemExit) as context:
            main(("marginal",))
        self.assertEqual(context.exception.code, 2)
        with redirect_stdout(StringIO()) as stdout, self.assertRaises(SystemExit) as context:
            main(("--version",))
        self.assertEqual(context.exception.code, 0)
        self.assertIn("acforge 1.0.0", stdout.getvalue())
