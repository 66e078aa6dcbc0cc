"""Combinatorial patchworking workbench for real tropical plane curves."""

__version__ = "0.1.0"
