"""Qubit-level checks of the quantum violations reported for the tripartite
three-setting inequalities: Bell operators, fixed state/setting values, and
a seesaw lower-bound search."""

__version__ = "0.1.0"
