"""Toolkit for permutation groups, coset/Cayley graphs and half-arc-transitive
symmetry analysis of tetravalent graphs."""

from .perm import Permutation, evaluate_word
from .group import PermutationGroup, ResourceExhausted

__all__ = [
    "Permutation",
    "PermutationGroup",
    "ResourceExhausted",
    "evaluate_word",
]

__version__ = "0.1.0"
