"""Exact nondominated-frontier solvers for biobjective 0-1 programs."""

__version__ = "0.1.0"
