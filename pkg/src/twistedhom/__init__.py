"""Exact twisted homology of finite complexes.

Integral and field homology, rank-one local systems with values in
cyclotomic fields, universal covers of complexes with finite fundamental
group, normalized bar complexes of finite abelian groups, and executable
checks built on top of them.
"""

__version__ = "0.1.0"

from .catalog import load_builtin
from .checks import (cartan_leray_report, condition_c_check, hopf_h2_group, hspace_obstruction,
                     hurewicz_nonzero, loop_census, vanishing_witness, verify_certificate)
from .cover import edge_path_complex, universal_cover
from .cyclotomic import CyclotomicNumber, RootOfUnity, unit_one_minus
from .engine.homology import (HomologySummary, betti_mod_p, betti_twisted, cohomology_field,
                              homology_integral)
from .engine.smith import smith_normal_form
from .errors import (BudgetExceededError, InvalidComplexError, InvalidInputError,
                     PreconditionError, SizeLimitError, TwistedHomError)
from .groups import bar_cohomology_dims, nerve_complex, shuffle_product
from .io import parse_complex, parse_text
from .local_systems import (EquivariantComplex, LocalSystem, enumerate_local_systems,
                            parse_local_system, twisted_complex)
from .presentation import GroupPresentation, abelian_group, fundamental_group, todd_coxeter
from .simplicial import IntegerChainComplex, SimplicialComplex, boundary_matrices

__all__ = [
    "BudgetExceededError", "CyclotomicNumber", "EquivariantComplex", "GroupPresentation",
    "HomologySummary", "IntegerChainComplex", "InvalidComplexError", "InvalidInputError",
    "LocalSystem", "PreconditionError", "RootOfUnity", "SimplicialComplex", "SizeLimitError",
    "TwistedHomError", "abelian_group", "bar_cohomology_dims", "betti_mod_p", "betti_twisted",
    "boundary_matrices", "cartan_leray_report", "cohomology_field", "condition_c_check",
    "edge_path_complex", "enumerate_local_systems", "fundamental_group", "homology_integral",
    "hopf_h2_group", "hspace_obstruction", "hurewicz_nonzero", "load_builtin", "loop_census",
    "nerve_complex", "parse_complex", "parse_local_system", "parse_text", "shuffle_product",
    "smith_normal_form", "todd_coxeter", "twisted_complex", "universal_cover", "unit_one_minus",
    "vanishing_witness", "verify_certificate",
]
