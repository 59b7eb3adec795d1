"""Succinct total search problems: instances, verifiers, solvers and reductions."""

__version__ = "0.1.0"
