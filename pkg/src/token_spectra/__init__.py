"""Token graphs, Laplacian spectra, and exact verification certificates."""

from .graphs import (
    Graph,
    GraphError,
    KiteSpec,
    add_edges,
    boundary_degree,
    build_bipartite_extension,
    build_cut_clique_join,
    build_extended_cycle,
    build_kite,
    build_standard,
    build_superkite,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    edge_union,
    format_edge_list,
    induced_subgraph,
    parse_edge_list,
    path_graph,
    remove_edges,
    star_graph,
)
from .tokens import (
    DEFAULT_CAP,
    CapExceededError,
    SubsetCodec,
    TokenGraph,
    binomial_lift,
    binomial_project,
    token_graph,
)
from .spectra import (
    EigenGroup,
    NumericalError,
    Spectrum,
    algebraic_connectivity,
    eig_sym,
    eigenspace_has_equal_pair,
    laplacian,
    principal_submatrix,
    rayleigh,
    theta,
)
from .exact import (
    CancelToken,
    IntPoly,
    OperationCancelled,
    char_poly,
    closed_form_gstar_poly,
    count_roots_in_interval,
    cycle_path_identity_check,
    int_det,
    poly_divides,
)

__version__ = "0.1.0"
