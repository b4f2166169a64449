"""Treewidth-parameterised exact solver."""

from .decomposition import (
    NiceNode,
    NiceTreeDecomposition,
    TreeDecomposition,
    heuristic_tree_decomposition,
    to_nice,
    trivial_decomposition,
)
from .dp import (
    DPIndex,
    check_star,
    process_forget,
    process_introduce,
    process_join,
    process_leaf,
    run_dp,
    solve_treewidth,
)
