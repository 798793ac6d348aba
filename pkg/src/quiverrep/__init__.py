"""Exact computations with finite-dimensional representations of finite
acyclic quivers over the rationals or a prime field.

The toolkit computes Hom and Ext spaces, kernels/cokernels/images,
composition series, Krull-Remak-Schmidt decompositions, bricks, extension
closures with their relative simples, thickness and brick-set bijection
checks, projective generators via extension towers, perpendicular-category
membership, and the Kronecker projective-line demonstration.
"""

from .errors import (AuditError, BudgetExceededError, CycleError,
                     InconclusiveError, MismatchError, ParseError,
                     QuiverRepError)
from .linalg import (Field, Matrix, inverse, kernel_basis, random_matrix,
                     rank, rref, solve)
from .quiver import (Arrow, Quiver, euler_form, kronecker_quiver, line_quiver,
                     parse_quiver, topological_order)
from .rep import (HomSpace, Representation, RepMorphism, cokernel,
                  composition_series, conjugate, direct_sum, hom_basis, image,
                  is_isomorphic, kernel, radical, random_rep, simple_quotient,
                  simple_rep, trace_subrep, vertex_simples, zero_rep)
from .homext import (ExtSpace, Extension, MiddleTermSet, all_middle_terms,
                     audit_extension, ext_basis, middle_term)
from .decomp import (IndecSummandList, decompose, endomorphism_dim,
                     fitting_split, is_brick)
from .subcat import (BijectionReport, BrickSet, ObjectUniverse, ThickResult,
                     closure, enumerate_brick_sets, full_universe,
                     is_hom_orthogonal, is_thick, relative_simples,
                     sub_universe, validate_brick_set, verify_bijection)
from .generators import (GeneratorTheoremReport, ProjGenResult, TowerTrace,
                         check_generator_theorem, indec_projectives,
                         is_generator, is_rel_projective,
                         projective_generator, tower)
from .perp import (KroneckerReport, PerpVerdict, find_rigid, in_perp,
                   kronecker_regular, kronecker_report, projective_line)

__version__ = "0.1.0"
