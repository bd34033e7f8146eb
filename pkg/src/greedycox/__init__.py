"""Greedy normal forms, growth series and reciprocity for Coxeter groups."""

from __future__ import annotations

from .automaton import (
    GreedyAutomaton,
    build_greedy_automaton,
    descent_set,
    enumerate_elementary_roots,
    export_dot,
    language_words,
    region_signature,
    right_angled_automaton,
    simple_reflection,
)
from .complexes import (
    SimplicialComplex,
    anti_incidence,
    flag_completion,
    from_facets,
    is_eulerian_sphere,
    is_flag,
    reduced_euler,
)
from .coxeter import CoxeterSystem, compute_nerve, parse_definition, weighting
from .exact import CycReal, exact_sign, make_field
from .ratfunc import MvRationalFunction, RationalFunction, reciprocal_ratfn
from .series import (
    LinearRepresentation,
    build_anti_reciprocal,
    check_reciprocity,
    closed_form,
    expand,
    expand_complete,
    from_automaton,
    specialize,
)

__version__ = "0.1.0"

__all__ = [
    "CoxeterSystem", "CycReal", "GreedyAutomaton", "LinearRepresentation", "MvRationalFunction",
    "RationalFunction", "SimplicialComplex", "anti_incidence", "build_anti_reciprocal",
    "build_greedy_automaton", "check_reciprocity", "closed_form", "compute_nerve", "descent_set",
    "enumerate_elementary_roots", "exact_sign", "expand", "expand_complete", "export_dot",
    "flag_completion", "from_automaton", "from_facets", "is_eulerian_sphere", "is_flag",
    "language_words", "make_field", "parse_definition", "reciprocal_ratfn", "reduced_euler",
    "region_signature", "right_angled_automaton", "simple_reflection", "specialize", "weighting",
]
