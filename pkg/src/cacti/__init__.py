"""Exact computations with the operads of based cacti and their building blocks."""

__version__ = "0.1.0"
