"""Exact computations with commuting involutions of semisimple Lie algebras."""

__version__ = "0.1.0"
