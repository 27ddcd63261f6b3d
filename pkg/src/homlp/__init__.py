"""Exact s(M, N) and chi_H via orbit linear programs over rational arithmetic."""
from __future__ import annotations

from fractions import Fraction

from .errors import BudgetExceeded, DomainError, HomlpError, ParseError
from .exactlp import LinearProgram, LPSolution, certify, format_rational, parse_rational, solve_min
from .graphs import (
    Graph,
    VertexMap,
    circular_complete,
    complete,
    cube_scale,
    cycle,
    find_homomorphism,
    hom_exists,
    odd_girth,
    parse_graph,
    power_graph,
    serialize_graph,
)
from .hcuts import (
    chi_f,
    chi_H_cover,
    chi_H_via_s,
    enumerate_hcuts,
    hypergraph_reformulation,
    refute_density_conjecture,
    scale_membership,
)
from .svalue import SValueResult, WeightFunction, mc, s_value, s_value_generic, signature_of
from .symmetry import OrbitDecomposition, circular_orbits, edge_orbits

__version__ = "0.1.0"

__all__ = [
    "Fraction",
    "BudgetExceeded",
    "DomainError",
    "HomlpError",
    "ParseError",
    "LinearProgram",
    "LPSolution",
    "certify",
    "format_rational",
    "parse_rational",
    "solve_min",
    "Graph",
    "VertexMap",
    "circular_complete",
    "complete",
    "cube_scale",
    "cycle",
    "find_homomorphism",
    "hom_exists",
    "odd_girth",
    "parse_graph",
    "power_graph",
    "serialize_graph",
    "chi_f",
    "chi_H_cover",
    "chi_H_via_s",
    "enumerate_hcuts",
    "hypergraph_reformulation",
    "refute_density_conjecture",
    "scale_membership",
    "SValueResult",
    "WeightFunction",
    "mc",
    "s_value",
    "s_value_generic",
    "signature_of",
    "OrbitDecomposition",
    "circular_orbits",
    "edge_orbits",
]
