"""Exact tree edit distance with optimal path strategies."""

from .gted import (
    ALGORITHMS, ConstantCost, CostModel, DistanceMatrix, ExecStats, UnitCost, brute_force_distance,
    delta_generic, delta_left, delta_right, gted, tree_edit_distance,
)
from .index import PathKind, TreeIndex, build_index, relevant_subtrees, root_leaf_path
from .shapes import Shape, ShapeError, ShapeSpec, gen_shape
from .strategy import (
    FixedStrategy, OracleSizeError, PathChoice, Side, StrategyMatrix, baseline_strategy,
    exhaustive_optimal_cost, fixed_strategy, opt_strategy, strategy_cost,
)
from .tree import Tree, TreeParseError, XMLIngestError, ingest_xml, parse_bracket, serialize_bracket

__version__ = "0.1.0"
