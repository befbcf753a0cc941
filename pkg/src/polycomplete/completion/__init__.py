from .chains import (
    construct_beta_chain,
    construct_f_chain,
    construct_gamma_chain,
    homogeneous_divisor_of_degree,
    insertion_plan,
)
from .columns import check_columns, transpose_prescription
from .finite import check_fin_cmi, check_fin_rmi, check_fin_sing
from .full import build_ab_alt, build_ab_full, check_full
from .infinite import check_inf_cmi, check_inf_rmi, check_inf_sing
from .prescription import Prescription, Variant
from .registry import BUILTIN_PREDICATES, PredicateRegistry, check, predicate_registry
from .report import ChainConstruction, ConditionResult, FeasibilityReport
from .singular import check_cmi, check_rmi, check_sing
from .witness import Assembly, assemble_full, witness_to_full
