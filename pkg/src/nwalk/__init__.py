"""Nondeterministic lattice walks: exact counting, generating functions,
asymptotics and simulation."""
from .intset import IntSet
from .walks import NStepSet, classify_walk, parse_walk, count_by_dp, CLASSES
from .series import RationalSeries

__all__ = ["IntSet", "NStepSet", "classify_walk", "parse_walk", "count_by_dp", "CLASSES",
           "RationalSeries"]
__version__ = "0.1.0"
