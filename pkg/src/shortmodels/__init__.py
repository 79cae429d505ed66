"""Compact models of global fields: incomplete-intersection models and interpolant certificates."""

__version__ = "0.1.0"
