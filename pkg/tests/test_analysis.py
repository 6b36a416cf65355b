#!/usr/bin/python3

"""Tests for structural and semantic properties"""

from fractions import Fraction
from random import Random
from unittest import TestCase
from hypothesis import given, settings, strategies as st
from acforge.analysis import (
    ConflictingBranches,
    MissingVariable,
    SharedVariable,
    Verdict,
    check_decomposable,
    check_deterministic,
    check_parametric_incompleteness,
    check_properties,
    check_smooth,
    count_subcircuits,
    enumerate_subcircuits,
    find_dead_nodes,
    is_strongly_deterministic,
    terms_are_instantiations,
    vars_of
)
from acforge.circuits import CircuitBuilder, input_from_instantiation
from acforge.compilation import compile_ordered, compile_product
from acforge.config import Limits
from acforge.errors import LimitExceededError, PreconditionError
from acforge.generate import (
    random_boolean_circuit,
    random_factor_set,
    random_smooth_circuit,
    random_variables
)
from acforge.oracle import factor_of_circuit, oracle_marginal
from acforge.query import evaluate, marginal
from acforge.transform import extract
from .samples import F1, F2, X, ac1, ac2, constant, dead, nondeterministic, partial_instantiations, polynomial


class DecomposableTest(TestCase):
    """Tests for the decomposability check"""

    def test_yes(self) -> None:
        """test decomposable circuits"""
        for circuit in (polynomial(), ac1(), ac2(), constant(3)):
            self.assertEqual(check_decomposable(circuit).verdict, Verdict.YES)

    def test_no(self) -> None:
        """test the product of two polynomials"""
        result = check_decomposable(compile_product((F1, F2)))
        self.assertFalse(result)
        self.assertEqual(result.witness, SharedVariable(18, (6, 17), "A"))
        self.assertEqual(
            str(result),
            "property=decomposable result=no witness=node=18;children=6,17;variable=A"
        )


class SmoothTest(TestCase):
    """Tests for the smoothness check"""

    def test_samples(self) -> None:
        """test the non-smooth sample and its smooth version"""
        result = check_smooth(ac1())
        self.assertEqual(result.verdict, Verdict.NO)
        self.assertEqual(result.witness, MissingVariable("B", 4, 3))
        self.assertEqual(str(result.witness), "variable=B;node=4;child=3")
        self.assertTrue(check_smooth(ac2()))
        self.assertTrue(check_smooth(polynomial()))

    def test_undeclared(self) -> None:
        """test declared variables without indicators"""
        result = check_smooth(constant(3))
        self.assertEqual(result.witness, MissingVariable("X"))
        self.assertEqual(str(result.witness), "variable=X;node=none")
        self.assertTrue(check_smooth(constant(3, ())))


class DeterministicTest(TestCase):
    """Tests for the determinism check"""

    def test_yes(self) -> None:
        """test deterministic circuits"""
        for circuit in (polynomial(), ac1(), ac2(), dead(), constant(0)):
            self.assertTrue(check_deterministic(circuit))

    def test_no(self) -> None:
        """test the circuit 2λx + 1λx̄ + 3λx"""
        result = check_deterministic(nondeterministic())
        self.assertEqual(
            result.witness,
            ConflictingBranches((("X", "1"),), 8, (3, 7), (Fraction(2), Fraction(3)))
        )
        self.assertEqual(
            str(result),
            "property=deterministic result=no witness=instantiation=X=1;node=8;children=3,7;values=2,3"
        )

    def test_skipped(self) -> None:
        """test skipping above the variable limit"""
        with self.assertLogs("acforge.analysis", "INFO"):
            result = check_deterministic(polynomial(), 1)
        self.assertEqual(result.verdict, Verdict.SKIPPED)
        self.assertFalse(result)

    def test_strong(self) -> None:
        """test the structural form of determinism"""
        self.assertTrue(is_strongly_deterministic(polynomial()))
        self.assertTrue(is_strongly_deterministic(ac2()))
        self.assertFalse(is_strongly_deterministic(nondeterministic()))


class PropertyReportTest(TestCase):
    """Tests for combined property reports"""

    def test_render(self) -> None:
        """test renderings of the non-smooth sample"""
        report = check_properties(ac1())
        self.assertEqual(report.summary(), "decomposable=yes smooth=no deterministic=yes")
        self.assertEqual(report.method, "exact")
        self.assertEqual(
            report.render_lines(),
            [
                "property=decomposable result=yes witness=none",
                "property=smooth result=no witness=variable=B;node=4;child=3",
                "property=deterministic result=yes witness=none"
            ]
        )
        self.assertEqual(
            report.render_text(),
            "decomposable: yes\n"
            "smooth: no (witness: variable=B;node=4;child=3)\n"
            "deterministic: yes\n"
            "method: exact"
        )

    def test_skipped(self) -> None:
        """test the method of skipped checks"""
        report = check_properties(polynomial(), 0)
        self.assertEqual(report.method, "skipped(0)")
        self.assertEqual(report.summary(), "decomposable=yes smooth=yes deterministic=skipped")


class SubcircuitTest(TestCase):
    """Tests for complete subcircuits"""

    def test_polynomial(self) -> None:
        """test the subcircuits of the sample polynomial"""
        subcircuits = enumerate_subcircuits(polynomial())
        self.assertEqual(count_subcircuits(polynomial()), 4)
        self.assertEqual(
            {subcircuit.term: subcircuit.coefficient for subcircuit in subcircuits},
            {
                frozenset((("A", "1"), ("B", "1"))): 3,
                frozenset((("A", "1"), ("B", "0"))): 4,
                frozenset((("A", "0"), ("B", "1"))): 10,
                frozenset((("A", "0"), ("B", "0"))): 12
            }
        )
        self.assertEqual(subcircuits[0].chosen, ((12, 3),))
        self.assertEqual(subcircuits[0].nodes, frozenset((0, 1, 2, 3, 12)))
        self.assertEqual(subcircuits[0].choice(12), 3)
        self.assertIsNone(subcircuits[0].choice(3))

    def test_shared(self) -> None:
        """test sums visited more than once"""
        builder = CircuitBuilder((X,))
        either = builder.sum((builder.indicator("X", "1"), builder.indicator("X", "0")))
        circuit = builder.build(builder.product((either, either)))
        subcircuits = enumerate_subcircuits(circuit)
        self.assertEqual(count_subcircuits(circuit), 4)
        self.assertEqual(len(subcircuits), 4)
        self.assertEqual(
            sum(subcircuit.instantiation() is None for subcircuit in subcircuits),
            2
        )

    def test_limit(self) -> None:
        """test the subcircuit limit"""
        with self.assertRaises(LimitExceededError) as context:
            enumerate_subcircuits(polynomial(), 3)
        self.assertEqual((context.exception.limit, context.exception.count), (3, 4))

    def test_terms(self) -> None:
        """test terms of decomposable and smooth circuits"""
        self.assertTrue(terms_are_instantiations(polynomial()))
        self.assertTrue(terms_are_instantiations(ac2()))
        with self.assertRaises(PreconditionError) as context:
            terms_are_instantiations(ac1())
        self.assertEqual(context.exception.witness, MissingVariable("B", 4, 3))

    def test_dead(self) -> None:
        """test detection of dead nodes"""
        self.assertEqual(find_dead_nodes(dead()), {0, 1, 2})
        self.assertEqual(find_dead_nodes(polynomial()), set())
        self.assertEqual(find_dead_nodes(constant(0)), {0})


class ParametricIncompletenessTest(TestCase):
    """Tests for determinism of circuits computing Boolean factors"""

    def test_preconditions(self) -> None:
        """test rejection of unsuitable circuits"""
        for circuit in (nondeterministic(), ac1(), dead()):
            with self.assertRaises(PreconditionError):
                check_parametric_incompleteness(circuit)
        with self.assertRaises(PreconditionError) as context:
            check_parametric_incompleteness(polynomial())
        self.assertEqual(context.exception.message, "circuit has parameters other than 0 and 1")
        self.assertEqual(context.exception.witness, 0)

    def test_boolean(self) -> None:
        """test the smooth sample"""
        verdict = check_parametric_incompleteness(ac2())
        self.assertEqual(verdict.factor.table, (1, 0, 1, 1))
        self.assertTrue(verdict.boolean)
        self.assertTrue(verdict.holds)

    def test_not_boolean(self) -> None:
        """test a non-deterministic circuit computing a non-Boolean factor"""
        builder = CircuitBuilder((X,))
        positive = builder.indicator("X", "1")
        circuit = builder.build(builder.sum((positive, positive, builder.indicator("X", "0"))))
        verdict = check_parametric_incompleteness(circuit)
        self.assertEqual(verdict.factor.table, (2, 1))
        self.assertFalse(verdict.boolean)
        self.assertEqual(verdict.deterministic.verdict, Verdict.NO)
        self.assertTrue(verdict.holds)

    def test_population(self) -> None:
        """test many random dead free circuits computing Boolean factors"""
        rng = Random(8)
        limits = Limits(subcircuits=100_000)
        found = 0
        for _ in range(20_000):
            circuit = random_boolean_circuit(rng, random_variables(rng.randint(1, 4)), 3, limits.subcircuits)
            try:
                verdict = check_parametric_incompleteness(circuit, limits)
            except PreconditionError:
                continue
            if verdict.boolean:
                found += 1
                self.assertTrue(verdict.holds, circuit)
                self.assertEqual(verdict.deterministic.verdict, Verdict.YES)
                if found == 200:
                    break
        self.assertEqual(found, 200)


class SmoothDecomposablePropertyTest(TestCase):
    """Tests for random decomposable and smooth circuits"""

    @given(st.randoms(use_true_random=False))
    @settings(max_examples=1000, deadline=None)
    def test_marginals_and_subcircuits(self, rng: Random) -> None:
        """test marginals against the tabulated factor and values against subcircuit coefficients"""
        variables = random_variables(rng.randint(1, 4))
        circuit = random_smooth_circuit(rng, variables)
        self.assertTrue(check_decomposable(circuit))
        self.assertTrue(check_smooth(circuit))
        f = factor_of_circuit(circuit)
        for y in partial_instantiations(variables):
            self.assertEqual(marginal(circuit, y), oracle_marginal(f, y))
        coefficients: dict[frozenset[tuple[str, str]], Fraction] = {}
        for subcircuit in enumerate_subcircuits(circuit):
            coefficients[subcircuit.term] = coefficients.get(subcircuit.term, Fraction(0)) + subcircuit.coefficient
        pairs = sorted(circuit.indicators())
        for _ in range(50):
            lambdas = {pair: rng.randint(0, 1) for pair in pairs}
            self.assertEqual(
                evaluate(circuit, lambdas),
                sum(
                    (coefficient for term, coefficient in coefficients.items() if all(lambdas[item] == 1 for item in term)),
                    Fraction(0)
                )
            )

    @given(st.randoms(use_true_random=False))
    @settings(max_examples=200, deadline=None)
    def test_terms(self, rng: Random) -> None:
        """test terms of every node being instantiations of its variables"""
        variables = random_variables(rng.randint(1, 4))
        circuit = random_smooth_circuit(rng, variables)
        self.assertTrue(terms_are_instantiations(circuit))
        variable_sets = vars_of(circuit)
        for node in range(len(circuit)):
            below = extract(circuit, node)
            self.assertEqual(set(below.variable_names), variable_sets[node])
            self.assertTrue(terms_are_instantiations(below))
            f = factor_of_circuit(below)
            for y in partial_instantiations(below.variables):
                self.assertEqual(marginal(below, y), oracle_marginal(f, y))


class CompiledPropertyTest(TestCase):
    """Tests for circuits of the ordered compiler"""

    @given(st.randoms(use_true_random=False))
    @settings(max_examples=200, deadline=None)
    def test_deterministic(self, rng: Random) -> None:
        """test determinism of compiled circuits"""
        factor_set = random_factor_set(rng, random_variables(rng.randint(1, 4)), rng.randint(1, 3))
        circuit = compile_ordered(factor_set.factors, drop_zeros=rng.random() < 0.5)
        self.assertTrue(check_deterministic(circuit))
        self.assertTrue(is_strongly_deterministic(circuit))
        if check_smooth(circuit):
            self.assertTrue(terms_are_instantiations(circuit))
        for x in circuit.instantiations():
            self.assertEqual(
                evaluate(circuit, input_from_instantiation(circuit, x)),
                factor_set.joint().value(x)
            )

    @given(st.randoms(use_true_random=False))
    @settings(max_examples=200, deadline=None)
    def test_single_subcircuit(self, rng: Random) -> None:
        """test that every positive value comes from exactly one subcircuit"""
        factor_set = random_factor_set(rng, random_variables(rng.randint(1, 4)), rng.randint(1, 3))
        circuit = compile_ordered(factor_set.factors)
        self.assertTrue(check_smooth(circuit))
        f = factor_set.joint()
        subcircuits = [subcircuit for subcircuit in enumerate_subcircuits(circuit) if subcircuit.coefficient != 0]
        for x in circuit.instantiations():
            matching = [subcircuit for subcircuit in subcircuits if subcircuit.term <= frozenset(x.items())]
            if f.value(x) > 0:
                self.assertEqual(len(matching), 1)
                self.assertEqual(matching[0].coefficient, f.value(x))
            else:
                self.assertEqual(matching, [])
