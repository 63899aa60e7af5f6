"""Finite lattices, categories of monoid actions, and exact models of
commutative subalgebra categories, with exhaustive verification built in.
"""

__version__ = "0.1.0"

from .errors import LatcatError  # noqa: F401
