"""Upper-tail bounds for substructure counts in random subsets and random graphs."""
from .errors import (
    CapacityError,
    CertificateError,
    ConsistencyError,
    InfeasibleError,
    TailkitError,
    ValidationError,
)
from .hypergraph import (
    Hypergraph,
    degree_bound,
    degree_profile,
    exact_moment,
    exact_tail,
    expected_count,
    induced_count,
    read_hypergraph,
    sample_subset,
)
from .linsys import (
    LinearSystem,
    enumerate_solution_sets,
    prefix_certificate,
    solution_hypergraph,
    standard_system,
)
from .moments import (
    BoundEnvelope,
    certificate_tail_lower,
    exponent_scales,
    hypergraph_envelope,
    markov_tail_upper,
    moment_upper_bound,
)
from .sim import (
    TailEstimate,
    envelope_check,
    exact_tail_rooted,
    monte_carlo_tail,
    sample_gnp,
)

__version__ = "0.1.0"
