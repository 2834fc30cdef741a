"""Exact computations for the duality between semisimple MV-algebras and
rational polyhedra."""

__version__ = "0.1.0"
