"""Planar straight-line drawings of outerplanar graphs with bounded edge-length ratio."""

__version__ = "0.1.0"
