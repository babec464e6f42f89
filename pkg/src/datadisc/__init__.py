"""Data-discriminants of Lagrange likelihood equations in exact arithmetic."""

__version__ = "0.1.0"
