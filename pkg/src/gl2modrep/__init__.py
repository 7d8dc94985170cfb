"""Exact computation with modular representations of GL2 over finite fields:
standard-form decomposition in the Grothendieck ring, a Brauer-character
oracle, explicit intertwining operators, and holomorphic weight-shift
planning."""

from .field import FieldCtx, Mat2, PrimePower, build_field
from .cyclo import CycloInt, cyclotomic_poly, zeta_pow
from .k0 import (BasisLabel, ProductTerm, RawTerm, VirtualRep, dim,
                 frobenius_twist, mul, normalize, normalize_products, sym,
                 verify_identity)
from .brauer import (CharVector, ConjClass, char_equal, char_sym, char_term,
                     char_vrep, induced_char, regular_classes)
from .modrep import (LinMap, ModuleSpec, action_matrix, check_equivariance,
                     coker_dim, d_classical_op, d_op, dickson_op,
                     hom_space_dim, kernel_dim, perm_module_p1, rank,
                     theta_op, verify_p1_decomposition)
from .shift import (PrimeSplit, ShiftChoice, ShiftPlan, WeightParams,
                    check_c_nonzero, compile_lambda, plan_f2, plan_general,
                    shift_vector_tables, validate_holomorphic)

__version__ = "0.1.0"

__all__ = [
    "BasisLabel", "CharVector", "ConjClass", "CycloInt", "FieldCtx", "LinMap",
    "Mat2", "ModuleSpec", "PrimePower", "PrimeSplit", "ProductTerm", "RawTerm",
    "ShiftChoice", "ShiftPlan", "VirtualRep", "WeightParams", "action_matrix",
    "build_field", "char_equal", "char_sym", "char_term", "char_vrep",
    "check_c_nonzero", "check_equivariance", "coker_dim", "compile_lambda",
    "cyclotomic_poly", "d_classical_op", "d_op", "dickson_op", "dim",
    "frobenius_twist", "hom_space_dim", "induced_char", "kernel_dim", "mul",
    "normalize", "normalize_products", "perm_module_p1", "plan_f2",
    "plan_general", "rank", "regular_classes", "shift_vector_tables", "sym",
    "theta_op", "validate_holomorphic", "verify_identity",
    "verify_p1_decomposition", "zeta_pow",
]
