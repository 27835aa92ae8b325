"""Exhaustive search tooling for convex pentagons that tile the plane."""
__version__ = "0.1.0"
