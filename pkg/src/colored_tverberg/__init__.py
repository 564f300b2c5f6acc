"""Exact verification toolkit for optimal colored Tverberg partitions."""

from .chessboard import ChessboardSpec, chessboard_complex, collapse_matching, orientation_cycle
from .errors import BudgetExceeded, ComplexTooLarge, ConfigError, GeneralPositionError
from .geometry import (
    ColoredConfiguration,
    RainbowPartition,
    Witness,
    conjecture_trial,
    count_tverberg_partitions,
    enumerate_rainbow_partitions,
    find_rainbow_partition,
    hulls_intersect,
    pad_reduction,
    reference_configuration,
)
from .obstruction import (
    ConfigSpace,
    check_A_avoids_diagonal,
    check_boundary_relations,
    check_sign_claims,
    cocycle_on_chain,
    configuration_space,
    evaluate_cocycle,
    explicit_h_check,
    is_nonfree,
    obstruction_verdict,
    special_chains,
)
from .simplicial import (
    Chain,
    Complex,
    Permutation,
    apply_permutation,
    boundary,
    f_vector,
    homology,
    is_pseudomanifold,
    join,
    make_complex,
)

__version__ = "0.1.0"
