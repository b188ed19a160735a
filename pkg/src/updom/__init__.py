"""Exact upper-domination computations and certified product lower bounds."""

from .graphs import (
    CAPACITY,
    CapacityError,
    FamilyParameterError,
    FamilySpec,
    Graph,
    GraphParseError,
    ProductGraph,
    VertexSet,
    cartesian_product,
    closed_neighborhood,
    components,
    disjoint_union,
    generate,
    parse_family,
    parse_graph,
    serialize_graph,
)
from .domination import (
    DominationCertificate,
    DominationError,
    DomSplit,
    ForcedNotProtectedError,
    NotDominatingError,
    NotMinimalError,
    certify_minimal,
    is_dominating,
    is_minimal_dominating,
    minimalize,
    split_by_private_neighbor,
)
from .solvers import (
    SearchBudget,
    SolveResult,
    SolveStatus,
    alpha_exact,
    enumerate_minimal_dominating,
    gamma_exact,
    greedy_maximal_independent,
    upper_gamma_bnb,
    upper_gamma_oracle,
)
from .constructions import (
    ConstructionError,
    CoverConditionError,
    PreconditionError,
    TrivialFactorError,
    WitnessOutcome,
    column_count_witness,
    column_replication_witness,
    diagonal_independent_set,
    independent_grid_witness,
    min_slack_witness,
    star_product_witness,
)

__version__ = "0.1.0"
