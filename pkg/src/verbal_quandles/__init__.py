"""Verbal quandles with parameters: free-group decision procedures, the
six-family classifier, and finite-group instantiation."""

__version__ = "0.1.0"
