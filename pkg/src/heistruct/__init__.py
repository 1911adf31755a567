"""Exact computations for Heisenberg group actions on projective space.

Everything is over the rationals with ``fractions.Fraction``; no floating point
enters any check.
"""

from .closure import LocalAlgebra, MatAlgebra, NotLocal, center, generate_algebra, ideal_power, local_anatomy
from .correspondence import (
    AdditiveProjAction, DescentResult, HeisenbergProjAction, InvalidAction, action_to_algebra,
    algebra_to_action, boundary_fixed_check, descend_action, evaluation_kernel, fixed_direction,
    is_tautological, translation_action,
)
from .exact import (
    QMat, Subspace, char_poly, determinant, frac, inverse, kernel_basis, matrix_from_json,
    matrix_to_json, rank, rref, solve_congruence_candidate, span_close,
)
from .heisenberg import (
    HeisenbergElement, HeisenbergMatRep, NotHeisenberg, SymplecticSpace, exp_nilpotent, group_mul,
    lie_bracket, standard_omega, symplectic_basis_extract,
)
from .instances import build_example, example_rep, structure_action
from .tautological import (
    InequivalenceCertificate, InvalidStructureMatrix, StructureMatrix, algebra_from_structure_matrix,
    certify_inequivalent, equivalence_witness, extract_structure_matrix, generate_family,
    symplectic_invariant, verify_certificate,
)
from .checks import CHECKS, CheckReport, run_suite
from .cli import certify_family

__version__ = "0.1.0"
