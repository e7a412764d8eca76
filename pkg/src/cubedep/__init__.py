"""Finite-scale dependence analysis for functions on combinatorial cubes."""

from .core import (
    BudgetExhausted,
    CubeError,
    FunctionTable,
    SearchBudget,
    TableParseError,
    flat_index,
    load_table,
    point_of_index,
    save_table,
    table_hash,
    validate_table,
)
from .dependence import (
    CellDependence,
    GridPartition,
    box_dependence,
    find_grid_partition,
    greedy_partition,
    min_partition_size,
    verify_grid_partition,
)
from .witness import (
    CoordinateSplit,
    WitnessChain,
    greedy_chain,
    longest_chain,
    longest_chain_for_split,
    verify_chain,
)
from .ramsey import (
    P4,
    P5,
    PatternInput,
    TripleColoring,
    check_pattern4,
    check_pattern5,
    color_h,
    color_hprime,
    extract_chain,
    largest_homogeneous,
)
from .corpus import (
    diagonal_table,
    enumerate_tables,
    patchwork_table,
    random_table,
    russell_table,
    single_coordinate_table,
    triangular_table,
)
from .harness import analyze_table, empirical_N, exclusivity_scan, write_report

__version__ = "0.1.0"
