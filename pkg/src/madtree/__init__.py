"""Minimum average-distance (MAD) spanning trees: exact solvers and tooling."""

__version__ = "0.1.0"
