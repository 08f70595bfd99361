"""Unit tests for the tatetors package.

To run the tests: Run pytest from the parent folder.
"""
