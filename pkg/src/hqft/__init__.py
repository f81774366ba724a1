"""Exact lattice state sums for two-dimensional homotopy field theories with a finite target group.

Everything is computed over the rationals with :class:`fractions.Fraction`.
"""
from .builtins import algebra_names, builtin_algebra, builtin_cocycle, lookup
from .center import (build_action_groupalg, build_homset_algebra, check_biangular,
                     check_nondegenerate, pi_center, pi_center_biangular,
                     pi_center_nondegenerate)
from .crossed import (basic_idempotents, classify, cocycle_algebra, decompose_simple, group_ring,
                      pi_F_algebra, pushforward_crossed, rescale, transfer, validate_crossed)
from .errors import HQFTError
from .graded import (CrossedAlgebra, FrobeniusAlgebra, GradedAlgebra, GradedVector, combine,
                     dual, inner, multiply, pullback, pushforward, validate_frobenius)
from .groups import (Cocycle2, FiniteGroup, Subgroup, builtin_group, check_cocycle, make_group,
                     make_subgroup)
from .invariants import cross_check, cross_check_many, handle_element, rho0, verlinde_boundary, verlinde_closed
from .linalg import Matrix, canonical_element, solve_linear, trace
from .statesum import face_sum, genus_formula, state_sum_bracket, tau
from .surfaces import (PiSystem, Skeleton, SurfaceSignature, apply_move, build_skeleton,
                       canonical_skeleton, homotopy_act, validate_pi_system)

__version__ = "0.1.0"
