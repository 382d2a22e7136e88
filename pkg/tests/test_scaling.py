"""
Unit tests for runtime measurement.
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import tempfile
import unittest

import pandas as pd

from elhembed.scaling import fit_loglog_slope, measure_scaling, plot_scaling


class TestScaling(unittest.TestCase):
    """Test cases for measure_scaling and its helpers."""

    def setUp(self):
        """Measure a few small sizes."""
        self.frame = measure_scaling({"sizes": (4, 8, 16), "repeats": 2, "seed": 1})

    def test_frame_shape(self):
        """Test one row per size with the expected columns."""
        self.assertEqual(list(self.frame.columns),
                         ["size", "dimension", "vertices", "verdict", "median_seconds"])
        self.assertEqual(self.frame["size"].tolist(), [4, 8, 16])
        self.assertEqual(self.frame["dimension"].tolist(), [2 + 4, 2 + 8, 2 + 16])
        self.assertTrue((self.frame["median_seconds"] >= 0).all())

    def test_membership_modes(self):
        """Test that scan and hash give the same verdicts."""
        hashed = measure_scaling({"sizes": (4, 8, 16), "repeats": 1, "seed": 1,
                                  "membership": "hash"})
        self.assertEqual(hashed["verdict"].tolist(), self.frame["verdict"].tolist())

    def test_invalid_repeats(self):
        """Test ValueError when no run is requested."""
        with self.assertRaises(ValueError):
            measure_scaling({"sizes": (4,), "repeats": 0})

    def test_slope(self):
        """Test the log-log slope of an exact power law."""
        frame = pd.DataFrame({"size": [2, 4, 8], "median_seconds": [1.0, 32.0, 1024.0]})
        self.assertAlmostEqual(fit_loglog_slope(frame), 5.0)
        with self.assertRaises(ValueError):
            fit_loglog_slope(frame.iloc[:1])

    def test_soft_bound(self):
        """Test that growth stays polynomial of low degree on small sizes."""
        frame = measure_scaling({"sizes": (8, 16, 32), "repeats": 3, "density": 0.3})
        if (frame["median_seconds"] > 1e-4).all():
            self.assertLess(fit_loglog_slope(frame), 6.0)

    def test_plot(self):
        """Test that the plot is written."""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "scaling.png")
            fig = plot_scaling(self.frame, path)
            self.assertTrue(os.path.exists(path))
            self.assertEqual(len(fig.axes), 1)


if __name__ == '__main__':
    unittest.main()
