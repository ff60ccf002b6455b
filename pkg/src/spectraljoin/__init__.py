"""Adjacency spectra of constrained graph joins, (k,tau)-regular sets, and
graph spread bounds."""

from .errors import CapacityError, ConsistencyError, InputError
from .graphs import (
    Graph,
    VertexSet,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    delete_vertex,
    induced_subgraph,
    is_connected,
    line_graph,
    null_graph,
    path_graph,
    standard_family,
)
from .eig import (
    EigenGroup,
    Spectrum,
    eig_sym,
    graph_eigenvalues,
    is_nonmain,
    multiset_contains,
    multiset_equal,
    multiset_without,
    spectrum,
    spectrum_of_matrix,
    spread_of_matrix,
)
from .regular_sets import (
    KTauCertificate,
    check_ktau,
    enumerate_ktau,
    find_ktau_set,
    hamiltonian_via_line_graph,
    nonmain_criterion_check,
    perfect_matching_via_line_graph,
    strongly_regular_check,
)
from .join import (
    JoinPart,
    JoinSpec,
    generalized_join,
    h_join,
    join2,
    verify_inherited_eigenvalues,
)
from .quotient import (
    QuotientPair,
    RegularFamily,
    build_quotient,
    inclusion_check,
    quotient_matrix,
    regular_join_spectrum,
    symmetric_quotient,
)
from .spread import (
    chain_spread,
    conjecture_bracket,
    conjectured_max_spread,
    degree_gap_spread_check,
    full_spread_family,
    gnk_argmax,
    gnk_family,
    gnk_graph,
    gnk_spread_closed_form,
    join2_spread,
    max_spread_search,
    part_order_matrix,
    part_order_upper_bound,
    quotient_sandwich_check,
    quotient_spread,
    spread,
    three_cycle_chain,
)

__all__ = [name for name in dir() if not name.startswith("_")]
