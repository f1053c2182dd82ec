"""Proof theory toolkit for the classical second-order sequent calculus G1LC."""

from .calculus import (
    FULL, CheckOptions, ErrorCode, Fragment, ProofTree, Rule, Sequent, check_proof,
    classify_abstract, classify_sequent, erase_second_order, herbrand_nf, is_mints_normal,
    is_reducible, load_proof, dump_proof, parse_sequent, pure_variable,
)
from .cba import (
    TWO, BoolAlg, DPair, PowersetAlgebra, RelationCBA, RelationMap, build_relation_cba, closure,
    d_inf_leq, d_inf_tri, d_leq, d_neg, d_sup_leq, d_sup_tri, d_tri, little_m, verify_laws,
)
from .search import (
    Exhausted, Proved, Refuted, SearchConfig, branch_to_semival, canonical_search,
    decide_cut_free, hauptsatz_pipeline,
)
from .syntax import (
    Abstract, Signature, alpha_eq, format_formula, parse_abstract, parse_formula, parse_term,
    subst_first, subst_second,
)
from .valuation import (
    FormulaUniverse, SemiValuation, SequentUniverse, check_2CA, check_3CA, check_semival,
    eval_db, maehara_M, maehara_valuation, model_from_semival, model_from_semival_girard,
    bmodel_from_dbmodel, soundness_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
