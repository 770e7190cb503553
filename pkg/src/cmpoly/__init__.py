"""Minimal polynomials of curvature jet sequences on Lie groups with left-invariant metrics."""
__version__ = "0.1.0"
