"""Computational tools for graph-valued Euclidean Ramsey problems."""
from .arrow import Verdict, arrow_check, contains_mono, encode_cnf, mono_odd_cycle_bound
from .cnf import CnfFormula, dpll_solve
from .exact import chi_generalized, chromatic_number, independence_number
from .graph import (Coloring, Embedding, Graph, PowerIndex, build_graph, cartesian_power,
                    cartesian_product, find_copies, is_copy)

__version__ = "0.1.0"

__all__ = ["Verdict", "arrow_check", "contains_mono", "encode_cnf", "mono_odd_cycle_bound",
           "CnfFormula", "dpll_solve", "chi_generalized", "chromatic_number",
           "independence_number", "Coloring", "Embedding", "Graph", "PowerIndex", "build_graph",
           "cartesian_power", "cartesian_product", "find_copies", "is_copy"]
