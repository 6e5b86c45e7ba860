"""Mesoscopic window networks of books for authorship attribution."""

__version__ = "0.1.0"
