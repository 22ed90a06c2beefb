"""Exact toolkit for multivariate subresultants of generic homogeneous systems."""

__version__ = "0.1.0"
