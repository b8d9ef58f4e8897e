"""Smallness, linearly joined orderings and quadratic equations for
arrangements of linear subspaces of projective space."""

from .arrangement import (
    Arrangement,
    ArrangementError,
    Subspace,
    direct_sum_components,
    intersection_graph,
    is_small,
    load_arrangement,
    project_from_point,
    small_char_sample,
    verify_linearly_joined,
)
from .chordal import SimpleGraph, coordinate_arrangement, froberg_check, is_chordal
from .exactq import Matrix
from .generate import random_arrangement, random_small_arrangement
from .ideals import degree_piece, equations_for_ordered_arrangement, mu_count, verify_generation

__all__ = [
    "Arrangement",
    "ArrangementError",
    "Matrix",
    "SimpleGraph",
    "Subspace",
    "coordinate_arrangement",
    "degree_piece",
    "direct_sum_components",
    "equations_for_ordered_arrangement",
    "froberg_check",
    "intersection_graph",
    "is_chordal",
    "is_small",
    "load_arrangement",
    "mu_count",
    "project_from_point",
    "random_arrangement",
    "random_small_arrangement",
    "small_char_sample",
    "verify_generation",
    "verify_linearly_joined",
]
