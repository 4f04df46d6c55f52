"""Minimum degree of power graphs of finite nilpotent groups.

Two independent routes to the same number: a brute-force scan of the power
graph, and closed-form degree formulas dispatched by the structure of the
Sylow subgroups.
"""

from .errors import CapacityError, DomainError, HypothesisError, PowerGraphError, SpecSyntaxError, StructureError
from .formulas import closed_form_degree, degree_lower_bound, verify_proposition_catalog
from .grammar import parse_group_spec
from .groups import make_group, maximal_cyclic_subgroups
from .powergraph import degree_bruteforce, edge_connectivity_small, min_degree_bruteforce
from .solver import Method, Mode, SolveResult, applicable_methods, candidate_set, solve_min_degree

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "DomainError", "HypothesisError", "Method", "Mode", "PowerGraphError",
    "SolveResult", "SpecSyntaxError", "StructureError", "applicable_methods", "candidate_set",
    "closed_form_degree", "degree_bruteforce", "degree_lower_bound", "edge_connectivity_small",
    "make_group", "maximal_cyclic_subgroups", "min_degree_bruteforce", "parse_group_spec",
    "solve_min_degree", "verify_proposition_catalog",
]
