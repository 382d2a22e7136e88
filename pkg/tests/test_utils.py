"""
Unit tests for utility functions.
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import io
import json
import tempfile
import unittest

from elhembed.interpretation import satisfies_ontology
from elhembed.syntax import contains_bottom, is_normalized
from elhembed.utils import (
    dump_json, example_interpretation, example_ontology, ontology_digest,
    random_normalized_ontology, random_ontology, to_json_text,
)


class TestUtils(unittest.TestCase):
    """Test cases for fixtures, digests and JSON output."""

    def test_example_fixtures(self):
        """Test that I_ex is a model of O_ex."""
        o = example_ontology()
        self.assertEqual(len(o), 4)
        self.assertTrue(satisfies_ontology(example_interpretation(), o))

    def test_random_ontology(self):
        """Test reproducibility, normal form and name pools."""
        for seed in range(50):
            o = random_normalized_ontology(seed)
            self.assertEqual(o, random_normalized_ontology(seed))
            self.assertTrue(is_normalized(o))
            self.assertLessEqual(len(o.concept_names), 4)
            self.assertLessEqual(len(o.role_names), 2)
            self.assertLessEqual(len(o.individual_names), 3)
            self.assertLessEqual(len(o), 8)

    def test_random_nested_ontology(self):
        """Test that nested generation is reproducible and usually needs normalizing."""
        generated = [random_ontology(seed, max_depth=3) for seed in range(50)]
        self.assertEqual(generated, [random_ontology(seed, max_depth=3) for seed in range(50)])
        self.assertTrue(any(not is_normalized(o) for o in generated))
        for o in generated:
            self.assertFalse(any(contains_bottom(ax) for ax in o.axioms))
            self.assertLessEqual(len(o.concept_names), 3)

    def test_digest(self):
        """Test that the digest depends on content, not axiom order."""
        o = example_ontology()
        reordered = o.from_axioms(reversed(o.axioms))
        self.assertEqual(ontology_digest(o), ontology_digest(reordered))
        self.assertEqual(len(ontology_digest(o)), 64)
        self.assertNotEqual(ontology_digest(o), ontology_digest(random_normalized_ontology(0)))

    def test_json_text(self):
        """Test stable formatting."""
        text = to_json_text({"b": 1, "a": "⊤"})
        self.assertTrue(text.endswith("\n"))
        self.assertLess(text.index('"b"'), text.index('"a"'))
        self.assertIn("⊤", text)

    def test_dump_json(self):
        """Test writing to a handle and to a path."""
        buffer = io.StringIO()
        dump_json({"x": [1, 2]}, buffer)
        self.assertEqual(json.loads(buffer.getvalue()), {"x": [1, 2]})
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "out.json")
            dump_json({"x": 1}, path=path)
            with open(path, encoding="utf-8") as fh:
                self.assertEqual(json.load(fh), {"x": 1})
        with self.assertRaises(ValueError):
            dump_json({})


if __name__ == '__main__':
    unittest.main()
