#!/usr/bin/python3

"""Tests for README examples"""

from unittest import TestCase
from acforge import CircuitBuilder, Factor, Variable
from acforge.analysis import check_properties
from acforge.circuits import input_from_instantiation
from acforge.compilation import compile_ordered, compile_product
from acforge.formats import loads_factors
from acforge.query import evaluate, marginal, mpe
from acforge.transform import smooth
from .samples import FACTOR_FILE


class ExampleTest(TestCase):
    """Test for README example"""

    f1: Factor

    f2: Factor

    def setUp(self) -> None:
        """create the reference factors"""
        self.a = Variable("A", ("1", "0"))
        self.b = Variable("B", ("1", "0"))
        self.f1 = Factor((self.a,), (1, 2))
        self.f2 = Factor((self.a, self.b), (3, 4, 5, 6))

    def test_queries(self) -> None:
        """test compilation and queries example"""
        circuit = compile_ordered((self.f1, self.f2))
        self.assertEqual(marginal(circuit, {}), 29)
        self.assertEqual(marginal(circuit, {"A": "1"}), 7)
        result = mpe(circuit, {})
        self.assertEqual(result.value, 12)
        self.assertEqual(result.witness, {"A": "0", "B": "0"})

    def test_properties(self) -> None:
        """test property checking example"""
        report = check_properties(compile_product((self.f1, self.f2)))
        self.assertFalse(report.decomposable)
        self.assertTrue(report.render_text().startswith("decomposable: no (witness: "))

    def test_smoothing(self) -> None:
        """test smoothing example"""
        builder = CircuitBuilder((self.a, self.b))
        both = builder.product((builder.indicator("A", "1"), builder.indicator("B", "1")))
        circuit = builder.build(builder.sum((both, builder.indicator("A", "0"))))
        self.assertEqual(evaluate(circuit, input_from_instantiation(circuit, {"A": "0"})), 1)
        self.assertEqual(marginal(smooth(circuit), {"A": "0"}), 2)

    def test_file(self) -> None:
        """test factor file example"""
        factor_set = loads_factors(FACTOR_FILE)
        self.assertEqual(factor_set.factors, (self.f1, self.f2))
