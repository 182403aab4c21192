"""Exact signature computations and Neumann-move calculus on plumbing trees."""
from .contfrac import INF, contract_branch, contract_path, eval_ncf
from .diagonalize import DiagResult, diagonalize, orient, signature_of_tree
from .errors import PlumbError
from .generate import GenMode, GenParams, generate
from .linalg import (Signature, SymMatrix, congruence_signature, determinant,
                     is_negative_definite_dense)
from .moves import (Direction, MoveApplication, MoveKind, apply, applicable_sites,
                    expected_signature_delta, make_contract, make_expand, replay)
from .reduction import DefinitenessClass, ReductionReport, classify, reduce
from .textio import TreeDocument, parse_tree_text, serialize_tree_text
from .tree import PlumbingTree, build_tree, framing_matrix, path, star

__all__ = [
    "INF", "contract_branch", "contract_path", "eval_ncf",
    "DiagResult", "diagonalize", "orient", "signature_of_tree",
    "PlumbError", "GenMode", "GenParams", "generate",
    "Signature", "SymMatrix", "congruence_signature", "determinant",
    "is_negative_definite_dense",
    "Direction", "MoveApplication", "MoveKind", "apply", "applicable_sites",
    "expected_signature_delta", "make_contract", "make_expand", "replay",
    "DefinitenessClass", "ReductionReport", "classify", "reduce",
    "TreeDocument", "parse_tree_text", "serialize_tree_text",
    "PlumbingTree", "build_tree", "framing_matrix", "path", "star",
]
