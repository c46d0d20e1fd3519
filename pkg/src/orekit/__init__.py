"""Exact arithmetic in multivariate Ore extensions over finite rings.

The extension A[t_1..t_n; sigma, delta] twists multiplication by a ring
homomorphism sigma: A -> M_n(A) and a sigma-derivation delta: A -> A^n via
t_i a = sum_j sigma_ij(a) t_j + delta_i(a).  This package provides the
coefficient rings, the twisting data with validators, the polynomial ring
itself, evaluation and conjugation at points of A^n, module presentations
with a homomorphism solver, and the structure algorithms (center,
semi-invariants, centralizers, root-class decompositions), plus a batch
CLI (see orekit.cli).
"""

from .errors import (GuardExceeded, OreError, ParseError, PreconditionError,
                     RingMismatch, SchemaError, ShapeError)
from .guards import DEFAULT_GUARDS, Guards
from .rings import (GF, Endo, MatrixRing, Ring, RingElement, TruncPoly, ZMod,
                    formal_derivative)
from .twist import (CoordinateMap, CrossDerivation, Derivation, OreContext,
                    TwistMap, change_of_variables, phi_embedding_check,
                    validate_twist)
from .orepoly import (OrePoly, format_poly, parse_poly, poly_from_obj,
                      poly_mul, poly_to_obj, push_variable,
                      specialize_univariate, univariate_target)
from .evaluation import (Point, all_points, conjugacy_class, conjugate,
                         evaluate_pmt, evaluate_reduce, kernel_transport,
                         operator_apply, pmt_apply, product_formula_general,
                         product_formula_unit, related, related_residual)
from .modstruct import (HomSolution, ModulePresentation, hom_solve,
                        is_module_hom, module_apply, module_from_point)
from .structure import (RootClassReport, SemiInvariantCertificate,
                        center_candidates, centralizer, class_decomposition,
                        classification_audit, derivation_square_kernel,
                        find_semi_invariants, idealizer_member,
                        no_vanishing_polynomial, operator_form_check,
                        right_linearity_check, roots,
                        semi_invariant_certificate, semi_invariant_root_closure)

__version__ = "0.1.0"
