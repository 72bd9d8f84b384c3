"""Rooted subgraph counts in G(n, p)."""
from .analysis import (
    RegimeReport,
    blowup_certificate,
    classify_regime,
    closed_form_M,
    copy_hypergraph,
    min_exponent_base,
    psi,
    rooted_certificate_lower,
    rooted_density,
    rooted_envelope,
)
from .copies import (
    copies_in_complete,
    count_copies,
    count_rooted_copies,
    extension_multiplicity,
    rooted_copies,
    rooted_mean,
)
from .fractional import fractional_independence, fractional_independence_bruteforce
from .graph import (
    Graph,
    RootedGraph,
    complete_graph,
    parse_graph,
    read_graph,
    rooted_clique,
    rooted_complete_bipartite,
    rooted_cycle,
    rooted_edge,
    rooted_path,
)
