"""orecalc: exact computer algebra for Ore operators.

Groebner bases of Ore polynomials over a PID (ZZ, QQ, QQ[t]), univariate
contraction ideals and (completely) desingularized operators, and apparent
singularities of multivariate D-finite systems.
"""

from .scalars import DOMAINS, QQ, QQt, Scalar, ZZ, divides, gcd, gcd_ext, lcm
from .polyring import (MultiPoly, content, content_primitive, derive,
                       apply_sigma, evaluate, exact_divide, format_poly,
                       nonneg_integer_roots, parse_poly, poly_gcd, poly_lcm,
                       pseudo_divide, resultant, substitute)
from .orealg import (GRADED, OreError, OreOperator, OreSignature, RatFun,
                     RatOreOperator, TermOrder, apply_to_sequence,
                     apply_to_series, format_operator, parse_operator,
                     quasi_divides, quasi_quotient, rquo, rrem)
from .pid_groebner import (GroebnerBasis, buchberger, eliminate, gpol,
                           ideal_equal, is_groebner, kernel, module_contains,
                           module_groebner, module_reduce, reduce_basis,
                           reduce_operator, saturate_const, spol, tail_reduce)
from .contraction import (CoefficientIdealBasis, ContractionResult,
                          SubmoduleBasis, coefficient_ideal,
                          completely_desingularized, contraction_basis,
                          desingularized_operator, factorial_product_order1,
                          is_R_primitive, order_bound_shift,
                          removable_multiplicity, submodule_basis)
from .dfinite import (EulerForm, ExponentCandidateSet, TruncatedSeries,
                      WeylGB, detect_apparent, euler_rewrite,
                      exponent_candidates, indicial_polynomial,
                      intersect_left_ideals, is_ordinary, is_ordinary_origin,
                      rank, remove_apparent, series_solutions, singular_locus,
                      weyl_gb)

__version__ = "0.1.0"
