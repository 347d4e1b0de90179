"""Graded Satake diagrams and spherical subalgebras of basic matrix Lie superalgebras."""
from .diagrams import DecoratedDiagram, classify, enumerate_satake, selection_rules
from .invariants import ActionKind, solve_invariants
from .spherical import MixtureVector, build_k, verify_nontrivial
from .superalgebra import SuperMatrix, build_algebra, super_bracket, super_transpose

__all__ = [
    "ActionKind", "DecoratedDiagram", "MixtureVector", "SuperMatrix", "build_algebra", "build_k",
    "classify", "enumerate_satake", "selection_rules", "solve_invariants", "super_bracket",
    "super_transpose", "verify_nontrivial",
]
__version__ = "0.1.0"
