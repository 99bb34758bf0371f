"""Exact verification engine for k-fermion oscillators and generalized Grassmann coherent states."""
from __future__ import annotations

__version__ = "0.1.0"

from .coherent import (
    CoherentState,
    WeightFunction,
    build_coherent,
    closed_form_weight,
    compare_weights,
    qexp,
    solve_unity_weight,
    verify_eigenstate,
    verify_exp_form,
    verify_unity,
)
from .cyclo import Cyclotomic, zeta
from .fock import FockRep, build_rep, check_relations
from .grassmann import GrassmannAlgebra, RuleSet, berezin, berezin_double, g_mul
from .mixed import MixedAlgebra, MixedElement, dagger, inject_operator, m_mul
from .structure import StructureFunction, make_structure, rho, rho_factorial, validate

__all__ = [
    "CoherentState",
    "Cyclotomic",
    "FockRep",
    "GrassmannAlgebra",
    "MixedAlgebra",
    "MixedElement",
    "RuleSet",
    "StructureFunction",
    "WeightFunction",
    "berezin",
    "berezin_double",
    "build_coherent",
    "build_rep",
    "check_relations",
    "closed_form_weight",
    "compare_weights",
    "dagger",
    "g_mul",
    "inject_operator",
    "m_mul",
    "make_structure",
    "qexp",
    "rho",
    "rho_factorial",
    "solve_unity_weight",
    "validate",
    "verify_eigenstate",
    "verify_exp_form",
    "verify_unity",
    "zeta",
]
