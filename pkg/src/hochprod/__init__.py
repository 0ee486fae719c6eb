"""Hochschild products, co-flag algebras and their Poisson analogues.

Exact computations over Q (``fractions.Fraction``) and prime fields F_p:
building and validating extension data, extracting it from algebra maps,
cohomology classification by brute force, and the co-flag classifications
in low dimension.
"""
__version__ = "0.1.0"
