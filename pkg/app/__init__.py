"""Bi-objective feeder reconfiguration with MADS and a Pareto frontier filter."""

__version__ = "1.1.0"
