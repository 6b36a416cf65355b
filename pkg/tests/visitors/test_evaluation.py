#!/usr/bin/python3

"""Tests for circuit evaluation"""

from fractions import Fraction
from unittest import TestCase
from acforge.circuits import Circuit, input_from_instantiation
from acforge.errors import DomainError
from acforge.visitors import evaluation
from ..samples import polynomial


class EvaluatingVisitorTest(TestCase):
    """Test for Visitor computing sums and products"""

    circuit: Circuit

    def setUp(self) -> None:
        """create the sample polynomial"""
        self.circuit = polynomial()

    def test_values(self) -> None:
        """test values of all nodes"""
        visitor = evaluation.EvaluatingVisitor(input_from_instantiation(self.circuit, {"A": "1"}))
        values = self.circuit.accept(visitor)
        self.assertEqual(values[0], 3)
        self.assertEqual([values[i] for i in (3, 6, 9, 11)], [3, 4, 0, 0])
        self.assertEqual(values[12], 7)
        self.assertTrue(all(isinstance(value, Fraction) for value in values))

    def test_missing(self) -> None:
        """test inputs missing an indicator"""
        with self.assertRaises(DomainError):
            self.circuit.accept(evaluation.EvaluatingVisitor({("A", "1"): 1}))


class MaximizingVisitorTest(TestCase):
    """Test for Visitor reading sums as maxima"""

    def test_values(self) -> None:
        """test value of the root"""
        circuit = polynomial()
        values = circuit.accept(evaluation.MaximizingVisitor(input_from_instantiation(circuit, {})))
        self.assertEqual(values[circuit.root], 12)
        values = circuit.accept(evaluation.MaximizingVisitor(input_from_instantiation(circuit, {"B": "1"})))
        self.assertEqual(values[circuit.root], 10)


class ConsistencyVisitorTest(TestCase):
    """Test for Visitor searching subcircuits compatible with an input"""

    def test_values(self) -> None:
        """test consistency of all nodes"""
        circuit = polynomial()
        values = circuit.accept(evaluation.ConsistencyVisitor(input_from_instantiation(circuit, {"A": "0"})))
        self.assertEqual([values[i] for i in (3, 6, 9, 11, 12)], [False, False, True, True, True])
        self.assertTrue(values[0])
        lambdas = dict.fromkeys(circuit.indicators(), 0)
        values = circuit.accept(evaluation.ConsistencyVisitor(lambdas))
        self.assertFalse(values[circuit.root])
