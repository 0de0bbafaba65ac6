"""Exact-arithmetic toolkit for tree-indexed Banach space norms,
Schreier combinatorics and asymptotic-structure games on finite
truncations."""

from .exactval import RadSum, ZERO, ONE
from .schreier import schreier_member, max_mass
from .trees import (TreeSpec, TreeXi, build_tree, save_tree, load_tree,
                    tree_to_json, tree_from_json, segments_incomparable)
from .esstree import (EssParams, EssNode, EssUniverse, full_params,
                      toy_params, ess_node_valid, essentially_incomparable)
from .measures import (DictTree, NodeMeasure, InfeasibleError,
                       extract_incomparable, succ_split, ess_split,
                       w_succ_identity, stable_value)
from .norms import (FinVec, GroundKind, G0, G1_SIGNS, G2, GSUM, Gp,
                    G1_weighted, NormResult, ground_norm, tinc_norm,
                    essinc_norm, jt_norm, wg_norm)
from .scc import (SCC, LExhausted, repeated_average, verify_scc,
                  plegma_check, plegma_generate)
from .games import (GameTranscript, TruncationTooSmall, simulate_game,
                    check_block_family, block_family_report)
from .experiments import ExperimentReport, experiment_names, run_experiment

__all__ = [
    "RadSum", "ZERO", "ONE",
    "schreier_member", "max_mass",
    "TreeSpec", "TreeXi", "build_tree", "save_tree", "load_tree",
    "tree_to_json", "tree_from_json", "segments_incomparable",
    "EssParams", "EssNode", "EssUniverse", "full_params", "toy_params",
    "ess_node_valid", "essentially_incomparable",
    "DictTree", "NodeMeasure", "InfeasibleError", "extract_incomparable",
    "succ_split", "ess_split", "w_succ_identity", "stable_value",
    "FinVec", "GroundKind", "G0", "G1_SIGNS", "G2", "GSUM", "Gp",
    "G1_weighted", "NormResult", "ground_norm", "tinc_norm",
    "essinc_norm", "jt_norm", "wg_norm",
    "SCC", "LExhausted", "repeated_average", "verify_scc",
    "plegma_check", "plegma_generate",
    "GameTranscript", "TruncationTooSmall", "simulate_game",
    "check_block_family", "block_family_report",
    "ExperimentReport", "experiment_names", "run_experiment",
]
