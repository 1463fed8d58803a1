"""Twisted torsion polynomials of knot groups."""

__version__ = "0.1.0"
