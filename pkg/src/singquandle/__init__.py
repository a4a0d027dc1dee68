"""Oriented singquandles, their cocycle pairs and the state-sum invariant of singular links."""

from .algebra import (AffineParams, FiniteQuandle, FiniteSingquandle, VerificationReport,
                      enumerate_affine_singquandles, make_affine_singquandle, make_alexander_quandle,
                      make_conjugation_quandle, make_dihedral_quandle, make_generalized_alexander,
                      make_trivial_quandle, verify_quandle, verify_singquandle)
from .cocycle import (CocyclePair, CocycleSpace, LinearSystemZm, build_cocycle_system,
                      solve_cocycle_space, tabulate_polynomial_weight, verify_cocycle_pair)
from .coloring import build_constraints, count_colorings_affine, enumerate_colorings
from .diagram import (Classical, Singular, SingularDiagram, isomorphic, parse_diagram,
                      serialize_diagram, validate_diagram)
from .fixtures import ITEMS, fixture
from .invariant import (CocycleVerificationError, InvariantValue, crossing_weight, format_invariant,
                        parse_invariant, state_sum)
from .moves import MoveSpec, apply_move, random_move_walk

__version__ = "0.1.0"
