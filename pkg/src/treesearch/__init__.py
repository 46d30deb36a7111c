"""Adaptive vertex search on node-weighted trees."""

from .down_monotonic import NotMonotonicError, solve_down_monotonic
from .harness import CampaignReport, GenSpec, gen_instance, run_campaign
from .k_monotonic import StitchedStrategy, solve_k_monotonic
from .oracle import (
    EdgeWeightedTree,
    OracleTooLarge,
    edge_opt_cost,
    opt_cost,
    parse_edge_tree,
    serialize_edge_tree,
    subdivide_edge_tree,
)
from .ranking import rank_tree, ranks_to_decision_tree, vertex_extension
from .strategy import (
    DecisionTree,
    Interval,
    decision_tree_cost,
    decision_tree_to_esf,
    esf_to_decision_tree,
    format_dtree,
    parse_dtree,
    simulate,
    validate_esf,
)
from .tree_model import (
    InvalidTreeError,
    KPartition,
    PartitionError,
    TreeFormatError,
    WeightedTree,
    classify_monotonic,
    decompose_layers,
    parse_tree,
    partition_k_monotonic,
    rooted,
    round_weights,
    serialize_tree,
)
from .up_monotonic import is_structured, solve_up_monotonic, structure_decision_tree

