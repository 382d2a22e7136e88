"""
Unit tests for the ontology syntax and normal-form predicates.
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import unittest
from elhembed.syntax import (
    BOTTOM, CI, RI, TOP, Atomic, ConceptAssertion, Conj, Exists, Ontology,
    RoleAssertion, Signature, conjunction, contains_bottom, is_normal_form,
    is_normal_form_ci, is_normal_form_iq, is_normalized, is_valid_name,
    mentions_top, signature,
)
from elhembed.utils import example_ontology


class TestSyntax(unittest.TestCase):
    """Test cases for concepts, axioms and ontologies."""

    def setUp(self):
        """Set up concept names."""
        self.A = Atomic("A")
        self.B = Atomic("B")
        self.C = Atomic("C")

    def test_signature_of_example(self):
        """Test sig(O_ex) = ({A, B}, {r}, {a, b})."""
        sig = signature(example_ontology())
        self.assertEqual(sig, Signature(("A", "B"), ("r",), ("a", "b")))

    def test_signature_sorted_and_without_top(self):
        """Test that signatures are sorted and ignore Top."""
        o = Ontology.from_axioms([CI(Conj(Atomic("Z"), TOP), Exists("s", self.A)),
                                  RoleAssertion("r", "b", "a")])
        sig = o.signature
        self.assertEqual(sig.concepts, ("A", "Z"))
        self.assertEqual(sig.roles, ("r", "s"))
        self.assertEqual(sig.individuals, ("a", "b"))

    def test_duplicates_collapse(self):
        """Test that an ontology is a set of axioms."""
        o = Ontology.from_axioms([CI(self.A, self.B), CI(self.A, self.B)])
        self.assertEqual(len(o), 1)

    def test_printing(self):
        """Test the functional-style rendering."""
        self.assertEqual(str(CI(conjunction([self.A, self.B, self.C]), Exists("r", TOP))),
                         "SubClassOf(And(A B C) Some(r Top))")
        self.assertEqual(str(RoleAssertion("r", "a", "b")), "RoleAssertion(r a b)")
        self.assertEqual(str(RI("r", "s")), "SubRoleOf(r s)")

    def test_conjunction_requires_parts(self):
        """Test that an empty conjunction is rejected."""
        with self.assertRaises(ValueError):
            conjunction([])

    def test_normal_form_ci(self):
        """Test the four CI shapes and a few non-shapes."""
        self.assertTrue(is_normal_form_ci(CI(self.A, self.B)))
        self.assertTrue(is_normal_form_ci(CI(Conj(self.A, self.B), self.C)))
        self.assertTrue(is_normal_form_ci(CI(Exists("r", self.A), self.B)))
        self.assertTrue(is_normal_form_ci(CI(self.A, Exists("r", self.B))))
        self.assertFalse(is_normal_form_ci(CI(Exists("r", self.A), Exists("r", self.B))))
        self.assertFalse(is_normal_form_ci(CI(self.A, Conj(self.B, self.C))))
        self.assertFalse(is_normal_form_ci(CI(Conj(self.A, Conj(self.B, self.C)), self.A)))
        self.assertFalse(is_normal_form_ci(RI("r", "s")))

    def test_normal_form_top(self):
        """Test that Top counts as an atom unless strict."""
        ax = CI(TOP, self.A)
        self.assertTrue(is_normal_form_ci(ax))
        self.assertFalse(is_normal_form_ci(ax, strict=True))

    def test_normal_form_iq(self):
        """Test the IQ shapes A(a), (A⊓B)(a), (∃r.A)(a), r(a,b)."""
        self.assertTrue(is_normal_form_iq(ConceptAssertion(self.A, "a")))
        self.assertTrue(is_normal_form_iq(ConceptAssertion(Conj(self.A, self.B), "a")))
        self.assertTrue(is_normal_form_iq(ConceptAssertion(Exists("r", self.A), "a")))
        self.assertTrue(is_normal_form_iq(RoleAssertion("r", "a", "b")))
        self.assertFalse(is_normal_form_iq(
            ConceptAssertion(Exists("r", Exists("r", self.A)), "a")))
        self.assertTrue(is_normal_form(RI("r", "s")))

    def test_bottom_detection(self):
        """Test that Bottom is found at any depth."""
        self.assertTrue(contains_bottom(CI(self.A, Exists("r", Conj(self.B, BOTTOM)))))
        self.assertFalse(contains_bottom(CI(self.A, self.B)))

    def test_is_normalized(self):
        """Test the normalized-ontology predicate."""
        self.assertTrue(is_normalized(example_ontology()))
        complex_abox = Ontology.from_axioms([ConceptAssertion(Exists("r", self.A), "a")])
        self.assertFalse(is_normalized(complex_abox))
        nested = Ontology.from_axioms([CI(self.A, Exists("r", Conj(self.A, self.B)))])
        self.assertFalse(is_normalized(nested))

    def test_mentions_top(self):
        """Test Top detection in axioms."""
        self.assertTrue(mentions_top(CI(self.A, Exists("r", TOP))))
        self.assertFalse(mentions_top(CI(self.A, self.B)))
        self.assertFalse(mentions_top(RI("r", "s")))

    def test_valid_names(self):
        """Test the name alphabet."""
        self.assertTrue(is_valid_name("Person_1"))
        self.assertFalse(is_valid_name(""))
        self.assertFalse(is_valid_name("has-part"))


if __name__ == '__main__':
    unittest.main()
