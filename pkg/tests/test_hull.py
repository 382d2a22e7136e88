"""
Unit tests for convex hull membership.
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import unittest
from fractions import Fraction
from unittest import mock

import numpy as np
from hypothesis import given, settings, strategies as st

from elhembed import hull
from elhembed.errors import DimensionMismatch
from elhembed.hull import (
    all_binary_vectors, check_binary_hull_lemma, check_hull_monotonicity, feasible_point,
    hull_member, random_convex_point,
)
from elhembed.vectors import BinaryVector


def vec(*bits):
    return BinaryVector.from_bits(bits)


def random_generators(rng, d, max_size=6):
    size = int(rng.integers(1, max_size + 1))
    return list({BinaryVector.from_bits(int(x) for x in rng.integers(0, 2, size=d))
                 for _ in range(size)})


class TestFeasiblePoint(unittest.TestCase):
    """Test cases for the exact phase-one solver."""

    def test_feasible(self):
        """Test a small feasible system."""
        x = feasible_point([[1, 1], [1, -1]], [2, 0])
        self.assertEqual(x, [Fraction(1), Fraction(1)])

    def test_infeasible(self):
        """Test x + y = -1 with x, y ≥ 0."""
        self.assertIsNone(feasible_point([[1, 1]], [-1]))

    def test_forced_zero_presolve(self):
        """Test that a zero row with positive coefficients pins variables."""
        self.assertEqual(feasible_point([[1, 0], [1, 1]], [0, 0]), [0, 0])
        self.assertIsNone(feasible_point([[1, 0], [1, 0]], [0, 1]))

    def test_shape_errors(self):
        """Test DimensionMismatch on ragged input."""
        with self.assertRaises(DimensionMismatch):
            feasible_point([[1, 0], [1]], [0, 0])
        with self.assertRaises(DimensionMismatch):
            feasible_point([[1]], [0, 0])


class TestHullMember(unittest.TestCase):
    """Test cases for hull_member."""

    def test_midpoint(self):
        """Test (1/2, 1/2) ∈ conv{(1,0), (0,1)} with weights 1/2."""
        half = Fraction(1, 2)
        inside, weights = hull_member([vec(1, 0), vec(0, 1)], [half, half])
        self.assertTrue(inside)
        self.assertEqual(weights, [half, half])

    def test_binary_outside(self):
        """Test (1,1) ∉ conv{(1,0), (0,1)}."""
        self.assertFalse(hull_member([vec(1, 0), vec(0, 1)], vec(1, 1))[0])

    def test_generator_inside(self):
        """Test that every generator is a member."""
        gens = [vec(1, 0, 1), vec(0, 1, 1), vec(0, 0, 0)]
        for g in gens:
            inside, weights = hull_member(gens, g)
            self.assertTrue(inside)
            self.assertEqual(sum(weights), 1)

    def test_out_of_cube(self):
        """Test probes outside [0,1]^d."""
        self.assertFalse(hull_member([vec(1, 0), vec(0, 1)], [2, -1])[0])

    def test_empty_hull(self):
        """Test that no generators means an empty hull."""
        self.assertEqual(hull_member([], vec(1)), (False, None))

    def test_errors(self):
        """Test bad backends and dimensions."""
        with self.assertRaises(ValueError):
            hull_member([vec(1)], vec(1), backend="simplex")
        with self.assertRaises(DimensionMismatch):
            hull_member([vec(1, 0)], vec(1))

    def test_float_backends_agree(self):
        """Test that lp and nnls agree with the exact backend."""
        rng = np.random.default_rng(7)
        for _ in range(100):
            d = int(rng.integers(2, 6))
            gens = random_generators(rng, d)
            if rng.random() < 0.5:
                probe = random_convex_point(gens, rng)
            else:
                probe = [Fraction(int(x), 4) for x in rng.integers(0, 5, size=d)]
            exact = hull_member(gens, probe)[0]
            self.assertEqual(hull_member(gens, probe, backend="lp")[0], exact)
            self.assertEqual(hull_member(gens, probe, backend="nnls")[0], exact)


class TestHullProperties(unittest.TestCase):
    """Test cases for the binary hull lemma and monotonicity."""

    def test_lemma_examples(self):
        """Test the lemma on a hand-picked generator set."""
        self.assertTrue(check_binary_hull_lemma([vec(1, 0, 0), vec(0, 1, 0), vec(1, 1, 1)]))
        self.assertTrue(check_binary_hull_lemma([]))

    def test_lemma_runs_full_programs(self):
        """Test that binary probes are decided over all generators at once."""
        rng = np.random.default_rng(3)
        with mock.patch("elhembed.hull._phase_one", wraps=hull._phase_one) as phase_one:
            for d in range(2, 7):
                for _ in range(20):
                    gens = random_generators(rng, d)
                    self.assertTrue(check_binary_hull_lemma(gens))
        columns = [len(call.args[0][0]) for call in phase_one.call_args_list]
        self.assertGreater(len(columns), 0)
        self.assertGreater(max(columns), 1)
        self.assertGreater(sum(1 for n in columns if n > 1), len(columns) // 2)

    def test_presolve_agrees(self):
        """Test that the bound presolve never changes a verdict."""
        rng = np.random.default_rng(4)
        for _ in range(200):
            d = int(rng.integers(2, 6))
            gens = random_generators(rng, d)
            if rng.random() < 0.5:
                probe = random_convex_point(gens, rng)
            else:
                probe = BinaryVector.from_bits(int(x) for x in rng.integers(0, 2, size=d))
            self.assertEqual(hull_member(gens, probe, presolve=False)[0],
                             hull_member(gens, probe)[0])

    def test_lemma_random_small(self):
        """Test the lemma exhaustively on random sets for d = 2..8 with the presolve."""
        rng = np.random.default_rng(0)
        for d in range(2, 9):
            for _ in range(100):
                self.assertTrue(check_binary_hull_lemma(random_generators(rng, d),
                                                        presolve=True))

    def test_lemma_random_large(self):
        """Test the lemma up to d = 12 and on sampled probes beyond."""
        rng = np.random.default_rng(1)
        for d in range(9, 13):
            for _ in range(5):
                self.assertTrue(check_binary_hull_lemma(random_generators(rng, d),
                                                        presolve=True))
        self.assertTrue(check_binary_hull_lemma(random_generators(rng, 20), trials=64))

    def test_monotonicity(self):
        """Test conv(S1) ⊆ conv(S2) on 1000 random triples."""
        rng = np.random.default_rng(2)
        cube = all_binary_vectors(3)
        for _ in range(1000):
            s2 = [cube[k] for k in rng.choice(8, size=int(rng.integers(1, 9)), replace=False)]
            s1 = s2[:int(rng.integers(1, len(s2) + 1))]
            probe = random_convex_point(s1, rng)
            self.assertTrue(check_hull_monotonicity(s1, s2, [probe]))

    def test_monotonicity_requires_subset(self):
        """Test ValueError when S1 ⊄ S2."""
        with self.assertRaises(ValueError):
            check_hull_monotonicity([vec(1)], [vec(0)], [])

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.lists(st.integers(0, 1), min_size=4, max_size=4),
                    min_size=1, max_size=5),
           st.integers(0, 2 ** 32 - 1))
    def test_random_convex_point_inside(self, rows, seed):
        """Test that generated convex combinations are members."""
        gens = [BinaryVector.from_bits(r) for r in rows]
        point = random_convex_point(gens, np.random.default_rng(seed))
        self.assertTrue(hull_member(gens, point)[0])


if __name__ == '__main__':
    unittest.main()
