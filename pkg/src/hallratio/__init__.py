"""Exact fractional coloring, Hall ratio and sparsity certificates for random block graphs."""

from .blocks import (
    BlockGraph,
    BlockProfile,
    custom_profile,
    exp_profile,
    expected_edge_count,
    param_profile,
    profile_from_spec,
    sample,
    tower_profile,
)
from .certificates import (
    CertificateDependencyError,
    CertificateReport,
    Status,
    check_claim42,
    check_property_A,
    densest_subgraph,
    extract_lemma31,
    extract_lemma41,
    verify_theorem13_weights,
)
from .fractional import (
    ChiFResult,
    FractionalColoring,
    block_weight_lower_bound,
    chi_f_colgen,
    chi_f_enumerate,
    weight_ratio_lower_bound,
)
from .graph import (
    Graph,
    GraphError,
    Subgraph,
    caro_wei_greedy,
    degeneracy,
    degree_weight,
    greedy_coloring_from_degeneracy,
    induced_subgraph,
)
from .hall import HallRatioResult, hall_ratio_exact, hall_ratio_lower_bound, hall_ratio_via_01_weights
from .io import read_graph, write_graph
from .stable import MwisResult, ResourceLimitError, alpha, alpha_table, mwis, mwis_bruteforce

__version__ = "0.1.0"
