"""Finite-field verification of the stable formulas."""

from __future__ import annotations

from ..linalg import DEFAULT_CAP, CapExceeded, MatrixModP
from .brauer import SemisimplicityVerdict, gram_semisimple
from .dense import RepresentedModule, build_rep, invariants_dim, standard_recipe
from .groups import closure_order, gl_gens, gl_order, sl_order
from .regular import RegularVerdict, regular_check
from .symmetric import SymmetricResult, specht_invariants, symmetric_invariants

__all__ = [
    "DEFAULT_CAP", "CapExceeded", "MatrixModP", "RegularVerdict", "RepresentedModule",
    "SemisimplicityVerdict", "SymmetricResult", "build_rep", "closure_order", "gl_gens",
    "gl_order", "gram_semisimple", "invariants_dim", "regular_check", "sl_order",
    "specht_invariants", "standard_recipe", "symmetric_invariants",
]
