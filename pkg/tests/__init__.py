"""Test suite for the elhembed library."""
