#!/usr/bin/python3

"""Tests for structural visitors"""

from unittest import TestCase
from acforge.visitors import walking
from ..samples import ac1, ac2, dead, polynomial


class VariablesVisitorTest(TestCase):
    """Test for Visitor collecting the variables under each node"""

    def test_variables(self) -> None:
        """test variables of the non-smooth sample"""
        self.assertEqual(
            ac1().accept(walking.VariablesVisitor()),
            [frozenset("A"), frozenset("B"), frozenset("AB"), frozenset("A"), frozenset("AB")]
        )

    def test_parameters(self) -> None:
        """test nodes without indicators"""
        values = dead().accept(walking.VariablesVisitor())
        self.assertEqual(values[1], frozenset())
        self.assertEqual(values[2], frozenset("X"))


class CountingVisitorTest(TestCase):
    """Test for Visitor counting complete subcircuits"""

    def test_count(self) -> None:
        """test counts of the samples"""
        self.assertEqual(polynomial().accept(walking.CountingVisitor())[-1], 4)
        self.assertEqual(ac1().accept(walking.CountingVisitor()), [1, 1, 1, 1, 2])
        self.assertEqual(ac2().accept(walking.CountingVisitor())[-1], 3)
