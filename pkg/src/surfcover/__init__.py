"""Tiled surfaces, random covers of the genus-2 surface and exact symmetric-group counting."""

__version__ = "0.1.0"
