"""
Unit tests for the faithfulness pipeline.
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import types
import unittest
import warnings

from elhembed.canonical import build_canonical
from elhembed.embedding import GeometricModel, build_geometric, corrupt_region
from elhembed.errors import NotNormalized
from elhembed.faithfulness import (
    FaithfulnessVerifier, axiom_kind, pipeline_disagreements,
    verify_nonconvex_faithfulness, verify_strong_faithfulness,
)
from elhembed.syntax import (
    CI, RI, Atomic, ConceptAssertion, Conj, Exists, Ontology, RoleAssertion,
)
from elhembed.universe import axiom_universe, universe_size
from elhembed.utils import (
    example_interpretation, example_ontology, ontology_digest, random_normalized_ontology,
)


class TestFaithfulness(unittest.TestCase):
    """Test cases for FaithfulnessVerifier."""

    def setUp(self):
        """Set up O_ex."""
        self.o = example_ontology()

    def test_example_convex(self):
        """Test 41 checks and no mismatches on O_ex."""
        report = verify_strong_faithfulness(self.o)
        self.assertEqual(report.total, 41)
        self.assertEqual(report.universe_size, 41)
        self.assertEqual(report.checked, {"iq": 20, "ci": 20, "ri": 1})
        self.assertTrue(report.faithful)
        self.assertEqual(report.digest, ontology_digest(self.o))

    def test_example_nonconvex(self):
        """Test the vertex-set model of O_ex."""
        report = verify_nonconvex_faithfulness(self.o)
        self.assertFalse(report.convex)
        self.assertEqual(report.mismatches, [])

    def test_report_dict(self):
        """Test the deterministic report document."""
        doc = verify_strong_faithfulness(self.o).to_dict(deterministic=True)
        self.assertEqual(doc["checked"], 41)
        self.assertEqual(doc["counts"], {"iq": 20, "ci": 20, "ri": 1})
        self.assertEqual(doc["mismatches"], [])
        self.assertNotIn("elapsed_ms", doc)

    def test_to_frame(self):
        """Test one agreeing row per checked axiom."""
        frame = verify_strong_faithfulness(self.o, records=True).to_frame()
        self.assertEqual(len(frame), 41)
        self.assertTrue(frame["agree"].all())
        self.assertEqual(frame["kind"].value_counts()["ri"], 1)

    def test_records_on_request(self):
        """Test that per-axiom records are only kept when asked for."""
        report = verify_strong_faithfulness(self.o)
        self.assertIsNone(report.records)
        self.assertEqual(report.total, 41)
        with self.assertRaises(ValueError):
            report.to_frame()
        with self.assertRaises(ValueError):
            pipeline_disagreements(report, verify_nonconvex_faithfulness(self.o))

    def test_streams_universe(self):
        """Test that an unlimited run iterates the universe lazily."""
        self.assertIsInstance(FaithfulnessVerifier()._axioms(self.o), types.GeneratorType)
        self.assertEqual(len(FaithfulnessVerifier(limit=5)._axioms(self.o)), 5)

    def test_negative_control(self):
        """Test that η(A) = η(B) = η_I(B) is not TBox faithful."""
        g = build_geometric(example_interpretation(), self.o.signature)
        bad = GeometricModel(g.index, g.eta_ind,
                             {"A": g.eta_con["B"], "B": g.eta_con["B"]},
                             g.eta_role, g.vertices, convex=False)
        report = verify_nonconvex_faithfulness(self.o, bad)
        self.assertFalse(report.faithful)
        self.assertIn(CI(Atomic("B"), Atomic("A")), [m.axiom for m in report.mismatches])

    def test_corrupted_model(self):
        """Test that a flipped bit in η(A) of I_O is detected in both readings."""
        g = build_geometric(build_canonical(self.o), self.o.signature)
        bad = corrupt_region(g)
        self.assertFalse(verify_strong_faithfulness(self.o, bad).faithful)
        self.assertFalse(verify_nonconvex_faithfulness(self.o, bad.with_convex(False)).faithful)

    def test_limit_samples(self):
        """Test that a limit checks a reproducible sample and warns."""
        verifier = FaithfulnessVerifier(limit=10, seed=3, records=True)
        with self.assertWarns(UserWarning):
            first = verifier.verify(self.o)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            second = FaithfulnessVerifier(limit=10, seed=3, records=True).verify(self.o)
        self.assertEqual(first.total, 10)
        self.assertEqual([r[0] for r in first.records], [r[0] for r in second.records])

    def test_include_top(self):
        """Test that ⊤ axioms are checked but kept apart."""
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            report = FaithfulnessVerifier(include_top=True).verify(self.o)
        self.assertGreater(report.total, 41)
        self.assertTrue(report.faithful)

    def test_jobs(self):
        """Test that worker threads give the same records."""
        serial = verify_strong_faithfulness(self.o, records=True)
        threaded = verify_strong_faithfulness(self.o, jobs=4, records=True)
        self.assertEqual(serial.records, threaded.records)

    def test_jobs_in_chunks(self):
        """Test that small executor chunks keep universe order."""
        serial = verify_strong_faithfulness(self.o, records=True)
        verifier = FaithfulnessVerifier(jobs=3, records=True)
        verifier.chunk_size = 2
        chunked = verifier.verify(self.o)
        self.assertEqual(chunked.records, serial.records)
        self.assertEqual(chunked.checked, serial.checked)

    def test_invalid_options(self):
        """Test ValueError on bad options and NotNormalized models."""
        with self.assertRaises(ValueError):
            FaithfulnessVerifier(jobs=0)
        with self.assertRaises(ValueError):
            FaithfulnessVerifier(limit=-1)
        o = Ontology.from_axioms([ConceptAssertion(Exists("r", Atomic("A")), "a")])
        g = build_geometric(example_interpretation())
        with self.assertRaises(NotNormalized):
            verify_strong_faithfulness(o, g)

    def test_axiom_kind(self):
        """Test kinds of each axiom family."""
        A = Atomic("A")
        self.assertEqual(axiom_kind(CI(Conj(A, A), A)), "ci")
        self.assertEqual(axiom_kind(RI("r", "s")), "ri")
        self.assertEqual(axiom_kind(RoleAssertion("r", "a", "b")), "iq")

    def test_random_ontologies(self):
        """Test both readings on 200 generated ontologies."""
        for seed in range(200):
            o = random_normalized_ontology(seed)
            convex = verify_strong_faithfulness(o, records=True)
            nonconvex = verify_nonconvex_faithfulness(o, records=True)
            self.assertEqual(convex.mismatches, [], msg=f"seed {seed}")
            self.assertEqual(nonconvex.mismatches, [], msg=f"seed {seed}")
            self.assertEqual(pipeline_disagreements(convex, nonconvex), [], msg=f"seed {seed}")


class TestUniverse(unittest.TestCase):
    """Test cases for the axiom enumeration."""

    def test_sizes(self):
        """Test 41 axioms over the signature of O_ex."""
        sig = example_ontology().signature
        axioms = list(axiom_universe(sig))
        self.assertEqual(len(axioms), 41)
        self.assertEqual(universe_size(sig), 41)
        self.assertEqual(len(set(axioms)), 41)
        with_top = list(axiom_universe(sig, include_top=True))
        self.assertEqual(len(with_top), universe_size(sig, include_top=True))
        self.assertTrue(set(axioms) < set(with_top))

    def test_order_and_limit(self):
        """Test family order and truncation."""
        sig = example_ontology().signature
        axioms = list(axiom_universe(sig, limit=5))
        self.assertEqual(axioms[0], ConceptAssertion(Atomic("A"), "a"))
        self.assertEqual(len(axioms), 5)
        self.assertEqual(list(axiom_universe(sig))[-1], RI("r", "r"))


if __name__ == '__main__':
    unittest.main()
