"""Exact verification engine for parabose ur quantization.

Submodules: ``exactalg`` (exact scalars, sparse vectors and operators),
``ursingle`` (single-ur states and their symmetry group), ``fock`` (truncated
Green-decomposed Fock space), ``young`` (diagrams, tableaux, tensors),
``conformal`` (SU(2,2) and Poincare generators), ``states`` (Lorentz vacuum,
zeron, neutrino), ``cosmo`` (order-of-magnitude estimates) and ``cli``.
"""

from .exactalg import GaussianRational, SparseOp, SparseVec, commutator, solve_in_span
from .fock import FockBasis, ModeConfig, build_basis, para_ops, verify_green_relations
from .conformal import build_generators, build_poincare, closure_table, jacobi_check
from .states import check_invariance, lorentz_vacuum, neutrino, zeron
from .young import YoungDiagram, enumerate_diagrams, scheme_tensor, standard_tableaux
from .cosmo import CosmoConstants, Magnitude, cosmo_table
from .ursingle import UrState, apply_group, ur_norm

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "SparseOp",
    "SparseVec",
    "commutator",
    "solve_in_span",
    "FockBasis",
    "ModeConfig",
    "build_basis",
    "para_ops",
    "verify_green_relations",
    "build_generators",
    "build_poincare",
    "closure_table",
    "jacobi_check",
    "check_invariance",
    "lorentz_vacuum",
    "neutrino",
    "zeron",
    "YoungDiagram",
    "enumerate_diagrams",
    "scheme_tensor",
    "standard_tableaux",
    "CosmoConstants",
    "Magnitude",
    "cosmo_table",
    "UrState",
    "apply_group",
    "ur_norm",
]
