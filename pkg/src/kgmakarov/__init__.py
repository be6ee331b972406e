"""Spin-0 bound states in a Coulomb plus ring-shaped potential: iteration-method solver, closed forms, eigenfunctions and numerical cross-checks."""

__version__ = "0.1.0"
