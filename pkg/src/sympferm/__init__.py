"""Exact computations for orbifolds of symplectic fermion vertex algebras."""

__version__ = "0.1.0"
