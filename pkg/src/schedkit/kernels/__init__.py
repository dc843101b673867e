from .dag import dag_longest, topological_sort, CycleError
from .maxflow import FlowNetwork, max_flow, cut_capacity, min_cut_closure
from .assignment import min_cost_assignment, check_duals
from .knapsack import knapsack, merge_pairs, pair_lists
from .sp import sp_decompose, SPNode, leaf, transitive_closure
from .lp import DenseLP, LPResult, LPError, lp_solve, duality_gap, rationalize

__all__ = [
    "dag_longest", "topological_sort", "CycleError",
    "FlowNetwork", "max_flow", "cut_capacity", "min_cut_closure",
    "min_cost_assignment", "check_duals",
    "knapsack", "merge_pairs", "pair_lists",
    "sp_decompose", "SPNode", "leaf", "transitive_closure",
    "DenseLP", "LPResult", "LPError", "lp_solve", "duality_gap", "rationalize",
]
