#!/usr/bin/python3

"""Tests for deciding the MPE with a circuit compiler"""

from fractions import Fraction
from functools import partial
from random import Random
from unittest import TestCase
from hypothesis import given, settings, strategies as st
from acforge.circuits import Variable
from acforge.compilation import compile_ordered, compile_product
from acforge.errors import PreconditionError
from acforge.factors import Factor
from acforge.generate import random_factor_set, random_variables
from acforge.oracle import oracle_mpe
from acforge.query import decide_mpe, marginal
from acforge.reduction import (
    DEFAULT_COMPILER,
    decide_mpe_via_pr,
    mpe_via_compiler,
    reduce_to_cnf,
    scale_to_integers
)
from ..samples import A, F1, F2


def gate_bound(fs: tuple[Factor, ...], k: int) -> int:
    """polynomial bound on the number of gates of a comparator"""
    widths = [max(1, int(f.maximum).bit_length()) for f in fs]
    return 8 * (
        sum(len(f.table) * width for f, width in zip(fs, widths))
        + sum(widths) ** 2
        + k.bit_length()
    )


class ScaleTest(TestCase):
    """Tests for scaling rational factors"""

    def setUp(self) -> None:
        """create factors with rational entries"""
        self.fs = (
            Factor((A,), (Fraction(1, 2), Fraction(1, 3))),
            Factor((A,), (Fraction(3, 4), 2))
        )

    def test_scale(self) -> None:
        """test scaled entries and threshold"""
        scaled, threshold = scale_to_integers(self.fs, Fraction(1, 5))
        self.assertEqual([f.table for f in scaled], [(3, 2), (3, 8)])
        self.assertEqual(threshold, 4)
        self.assertEqual(scale_to_integers((F1, F2), 11), ((F1, F2), 11))

    def test_mpe(self) -> None:
        """test the maximum of rational factors"""
        self.assertEqual(mpe_via_compiler(self.fs), Fraction(2, 3))
        self.assertTrue(decide_mpe_via_pr(self.fs, Fraction(1, 2)))
        self.assertFalse(decide_mpe_via_pr(self.fs, Fraction(2, 3)))


class ReductionTest(TestCase):
    """Tests for the reduction of the MPE to marginals"""

    def test_samples(self) -> None:
        """test the sample factors"""
        cnf = reduce_to_cnf((F1, F2), 11)
        circuit = compile_ordered(cnf.factors, drop_zeros=True)
        self.assertEqual(marginal(circuit, {}), 1)
        self.assertEqual(marginal(circuit, {"s1": "1", "s3": "1"}), 1)
        self.assertEqual(marginal(circuit, {"s0": "1"}), 0)
        self.assertTrue(decide_mpe_via_pr((F1, F2), 11))
        self.assertFalse(decide_mpe_via_pr((F1, F2), 12))
        self.assertEqual(mpe_via_compiler((F1, F2)), 12)

    def test_compilers(self) -> None:
        """test other compilers"""
        compiler = partial(compile_ordered, memoize=False)
        self.assertTrue(decide_mpe_via_pr((F1, F2), 11, compiler))
        self.assertFalse(decide_mpe_via_pr((F1, F2), 12, compiler))
        self.assertEqual(mpe_via_compiler((F1,), compiler), 2)

    def test_edge_cases(self) -> None:
        """test negative thresholds and missing factors"""
        self.assertTrue(decide_mpe_via_pr((F1,), -1))
        with self.assertRaises(PreconditionError):
            reduce_to_cnf((F1,), -1)
        with self.assertRaises(ValueError):
            decide_mpe_via_pr((), 0)
        with self.assertRaises(ValueError):
            mpe_via_compiler(())
        zero = Factor((A,), (0, 0))
        self.assertFalse(decide_mpe_via_pr((zero,), 0))
        self.assertEqual(mpe_via_compiler((zero, F1)), 0)

    def test_dotted_names(self) -> None:
        """test variables and values whose names contain dots"""
        first = Variable("A.1", ("0", "x"))
        second = Variable("A", ("1.0", "y"))
        fs = (Factor((first,), (1, 0)), Factor((second,), (0, 1)))
        cnf = reduce_to_cnf(fs, 0)
        self.assertEqual(len(set(cnf.selectors.values())), 4)
        self.assertEqual(len(cnf.variables), len({variable.name for variable in cnf.variables}))
        self.assertTrue(decide_mpe_via_pr(fs, 0))
        self.assertFalse(decide_mpe_via_pr(fs, 1))
        self.assertEqual(mpe_via_compiler(fs), 1)

    @given(st.randoms(use_true_random=False))
    @settings(max_examples=100, deadline=None)
    def test_random(self, rng: Random) -> None:
        """test agreement with brute force for every threshold up to the maximum"""
        factor_set = random_factor_set(rng, random_variables(rng.randint(1, 3)), rng.randint(1, 2))
        fs = factor_set.factors
        maximum, _ = oracle_mpe(factor_set.joint(), {})
        circuit = compile_product(fs)
        for k in range(int(maximum) + 1):
            cnf = reduce_to_cnf(fs, k)
            self.assertLessEqual(len(cnf.gates), gate_bound(fs, k))
            self.assertEqual(marginal(DEFAULT_COMPILER(cnf.factors), {}) > 0, decide_mpe(circuit, k))
        self.assertTrue(decide_mpe_via_pr(fs, maximum - 1))
        self.assertFalse(decide_mpe_via_pr(fs, maximum))
        self.assertEqual(mpe_via_compiler(fs), maximum)
