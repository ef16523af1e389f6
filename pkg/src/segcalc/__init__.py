"""Symbolic calculus of arrow words, Jacquet modules and sheaf symbols."""
__version__ = "0.1.0"
