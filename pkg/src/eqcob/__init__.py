"""Exact formal group laws and equivariant coefficient rings."""

__version__ = "0.1.0"
