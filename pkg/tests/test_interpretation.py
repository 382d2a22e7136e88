"""
Unit tests for finite interpretations.
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import json
import unittest

import numpy as np

from elhembed.errors import InterpretationError, UnknownName
from elhembed.interpretation import (
    FiniteInterpretation, enumerate_interpretations, extension, find_countermodel,
    random_interpretation, satisfies, satisfies_ontology,
)
from elhembed.syntax import (
    BOTTOM, CI, RI, TOP, Atomic, ConceptAssertion, Conj, Exists, RoleAssertion, Signature,
)
from elhembed.utils import example_interpretation, example_ontology, random_concept


class TestInterpretation(unittest.TestCase):
    """Test cases for extension, satisfies and generation."""

    def setUp(self):
        """Set up I_ex and names."""
        self.i = example_interpretation()
        self.A = Atomic("A")
        self.B = Atomic("B")

    def test_extensions(self):
        """Test the extensions of I_ex."""
        self.assertEqual(extension(self.i, TOP), frozenset({0, 1}))
        self.assertEqual(extension(self.i, BOTTOM), frozenset())
        self.assertEqual(extension(self.i, Conj(self.A, self.B)), frozenset({0}))
        self.assertEqual(extension(self.i, Exists("r", self.B)), frozenset({0}))
        self.assertEqual(extension(self.i, Exists("r", self.A)), frozenset())

    def test_scan_matches_definition(self):
        """Test that both evaluation methods agree on random interpretations."""
        sig = Signature.of(["A", "B"], ["r", "s"], ["a"])
        concept = Exists("r", Conj(self.A, Exists("s", self.B)))
        for seed in range(20):
            i = random_interpretation(seed, sig, max_domain=5)
            self.assertEqual(extension(i, concept), extension(i, concept, method="scan"))

    def test_conjunction_shrinks_extension(self):
        """Test (C ⊓ D)^I = C^I ∩ D^I on random concepts and interpretations."""
        sig = Signature.of(["A", "B", "C"], ["r", "s"], ["a"])
        for seed in range(100):
            rng = np.random.default_rng(seed)
            i = random_interpretation(seed, sig, max_domain=5, density=0.4)
            c = random_concept(rng, sig.concepts, sig.roles, depth=2)
            d = random_concept(rng, sig.concepts, sig.roles, depth=2)
            both = extension(i, Conj(c, d))
            self.assertLessEqual(both, extension(i, c), msg=f"seed {seed}")
            self.assertEqual(both, extension(i, c) & extension(i, d), msg=f"seed {seed}")

    def test_inclusion_is_subset(self):
        """Test that I ⊨ C ⊑ D exactly when C^I ⊆ D^I."""
        sig = Signature.of(["A", "B"], ["r"], ["a"])
        for seed in range(200):
            rng = np.random.default_rng(seed)
            i = random_interpretation(seed, sig, max_domain=4, density=0.6)
            c = random_concept(rng, sig.concepts, sig.roles, depth=2)
            d = random_concept(rng, sig.concepts, sig.roles, depth=1)
            self.assertEqual(satisfies(i, CI(c, d)), extension(i, c) <= extension(i, d),
                             msg=f"seed {seed}: {c} ⊑ {d}")
            self.assertEqual(satisfies(i, ConceptAssertion(c, "a")),
                             i.individual("a") in extension(i, c))

    def test_keyword_concept_name(self):
        """Test that Top cannot name a concept extension."""
        with self.assertRaises(InterpretationError):
            FiniteInterpretation(size=1, concepts={"Top": {0}})

    def test_unknown_method(self):
        """Test that an unknown method raises ValueError."""
        with self.assertRaises(ValueError):
            extension(self.i, self.A, method="fast")

    def test_unused_names_are_empty(self):
        """Test that names without an extension are empty."""
        self.assertEqual(extension(self.i, Atomic("C")), frozenset())
        self.assertEqual(self.i.role("s"), frozenset())

    def test_malformed_name(self):
        """Test that a malformed name raises UnknownName."""
        with self.assertRaises(UnknownName):
            extension(self.i, Atomic("not a name"))

    def test_satisfies_example(self):
        """Test that I_ex is a model of O_ex and refutes B ⊑ A."""
        self.assertTrue(satisfies_ontology(self.i, example_ontology()))
        self.assertFalse(satisfies(self.i, CI(self.B, self.A)))
        self.assertTrue(satisfies(self.i, CI(self.A, Exists("r", self.B))))
        self.assertTrue(satisfies(self.i, RoleAssertion("r", "a", "b")))
        self.assertFalse(satisfies(self.i, RoleAssertion("r", "b", "a")))
        self.assertTrue(satisfies(self.i, RI("r", "r")))
        self.assertFalse(satisfies(self.i, RI("r", "s")))
        self.assertTrue(satisfies(self.i, ConceptAssertion(Exists("r", TOP), "a")))

    def test_unmapped_individual(self):
        """Test that an uninterpreted individual raises UnknownName."""
        with self.assertRaises(UnknownName):
            satisfies(self.i, ConceptAssertion(self.A, "c"))

    def test_validation(self):
        """Test malformed interpretations."""
        with self.assertRaises(InterpretationError):
            FiniteInterpretation(0)
        with self.assertRaises(InterpretationError):
            FiniteInterpretation(2, individuals={"a": 2})
        with self.assertRaises(InterpretationError):
            FiniteInterpretation(2, roles={"r": {(0, 5)}})
        with self.assertRaises(InterpretationError):
            FiniteInterpretation(2, labels=["only one"])

    def test_json_round_trip(self):
        """Test to_json / from_json through a JSON string."""
        doc = json.loads(json.dumps(self.i.to_json()))
        self.assertEqual(FiniteInterpretation.from_json(doc), self.i)
        self.assertEqual(doc["labels"], ["d", "e"])

    def test_malformed_json(self):
        """Test that a document without a domain is rejected."""
        with self.assertRaises(InterpretationError):
            FiniteInterpretation.from_json({"concepts": {}})

    def test_random_is_reproducible(self):
        """Test that equal seeds give equal interpretations."""
        sig = Signature.of(["A", "B"], ["r"], ["a", "b", "c"])
        first = random_interpretation(7, sig, max_domain=6)
        self.assertEqual(first, random_interpretation(7, sig, max_domain=6))
        self.assertGreaterEqual(first.size, 3)
        self.assertEqual([first.individual(x) for x in "abc"], [0, 1, 2])

    def test_random_domain_too_small(self):
        """Test that too many individuals for max_domain raise."""
        sig = Signature.of(["A"], [], ["a", "b", "c"])
        with self.assertRaises(InterpretationError):
            random_interpretation(0, sig, max_domain=2)

    def test_enumeration_count(self):
        """Test n^|N_I| · 2^(n·|N_C|) · 2^(n²·|N_R|) interpretations."""
        sig = Signature.of(["A"], ["r"], ["a"])
        self.assertEqual(sum(1 for _ in enumerate_interpretations(sig, 2)), 2 * 4 * 16)

    def test_countermodel(self):
        """Test that B ⊑ A has a small countermodel of O_ex and A ⊑ B has none."""
        o = example_ontology()
        self.assertIsNotNone(find_countermodel(o, CI(self.B, self.A), max_domain=2))
        self.assertIsNone(find_countermodel(o, CI(self.A, self.B), max_domain=2))


if __name__ == '__main__':
    unittest.main()
