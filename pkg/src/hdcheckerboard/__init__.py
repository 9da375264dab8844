"""Exact quaternionic Feynman checkerboard on HyperDiamond lattices."""
from ._backend import BACKEND
from .algebra import Dyadic, OctonionVector, Quaternion, norm_sq, qconj, qmul
from .checkerboard import (
    AmplitudePoly,
    Direction,
    EvaluationParams,
    PathQuery,
    brute_force,
    count_paths,
    effective_step_length,
    evaluate,
    future_links,
    phase,
    propagate,
    turn_factor,
)
from .lattice import (
    LatticePoint,
    LatticeSpec,
    contains,
    decomposition_harness,
    e8_roots,
    is_extension_closed,
    minkowski_norm,
    nearest_neighbors,
    next_nearest_4hd,
)
from .particles import ParticlePath, builtin_table, signature_label, validate

__version__ = "0.1.0"
