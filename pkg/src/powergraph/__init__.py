"""Power graphs of finite groups: construction, structure, metric dimension."""

from .arith import divisors, euler_phi, prime_factors, prime_power_root
from .checks import CheckResult, verification_suite
from .corpus import CORPUS_SPECS, iter_corpus
from .graphs import (
    Digraph,
    Graph,
    PerfectionReport,
    complete_graph,
    distance,
    distance_matrix,
    export_dot,
    is_transitive,
    neighborhoods,
    perfection_check,
    power_digraph,
    power_graph,
    separating_set,
    transitive_orientation,
)
from .groups import (
    CyclicSubgroup,
    CyclicSubgroupPoset,
    GeneratorPartition,
    Group,
    GroupError,
    GroupParseError,
    GroupTableError,
    OrderCapError,
    TableFileError,
    build_group,
    load_cayley_table,
    parse_group_spec,
)
from .metric import (
    DimReport,
    DimensionMismatchError,
    ExceptionalFamilyReport,
    ResolvingInvolution,
    TwinClass,
    TwinPartition,
    class_structure_check,
    dim_cyclic_closedform,
    dim_formula,
    exceptional_family,
    exceptional_family_from_separations,
    resolving_involution_characterization,
    resolving_involutions,
    resolving_involutions_cyclic_closedform,
    twin_partition,
    twin_partition_cyclic_closedform,
)
from .oracle import (
    BudgetExceeded,
    DIM_BUDGET,
    ISO_BUDGET,
    SearchBudget,
    brute_force_dim,
    graph_iso,
    is_resolving,
)
from .posets import (
    DecompositionReport,
    Poset,
    PosetError,
    comparability_graph,
    element_poset,
    generalized_lex_product,
    is_homogeneous,
    labeled_poset_iso,
    lexicographic_sum,
    poset_isomorphism,
    power_graph_iso,
    quotient,
    subgroup_poset,
    verify_decomposition,
)

__version__ = "0.1.0"
