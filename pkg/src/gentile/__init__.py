"""Exact toolkit for triangle reptilings, gentilings and their space-filling curves."""

__version__ = "0.1.0"
