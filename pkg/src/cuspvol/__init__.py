"""Volumes, arithmeticity and horoball case analysis for cusped hyperbolic 3-orbifolds."""
from .caser import run_case_analysis, scenario_registry, solve_scenario, verify_appendix_identities
from .coxeter import (
    CoxeterGraph,
    Verdict,
    arithmeticity,
    classify_vertices,
    count_cusps,
    gram_matrix,
    inertia,
    is_arithmetic,
    parse_coxeter_symbol,
    print_coxeter_symbol,
)
from .lobachevsky import lob, lob_value
from .volume import catalog, v_star, vol_ideal_tetrahedron, vol_named, vol_orthoscheme

__all__ = [
    "CoxeterGraph",
    "Verdict",
    "arithmeticity",
    "catalog",
    "classify_vertices",
    "count_cusps",
    "gram_matrix",
    "inertia",
    "is_arithmetic",
    "lob",
    "lob_value",
    "parse_coxeter_symbol",
    "print_coxeter_symbol",
    "run_case_analysis",
    "scenario_registry",
    "solve_scenario",
    "v_star",
    "verify_appendix_identities",
    "vol_ideal_tetrahedron",
    "vol_named",
    "vol_orthoscheme",
]
