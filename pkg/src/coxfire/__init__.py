"""coxfire: conjugacy of Coxeter elements via firing games on acyclic orientations."""

from .graph import (
    INFINITY,
    CoxeterGraph,
    CycleBasis,
    DisconnectedGraphError,
    FundamentalCycle,
    GraphParseError,
    Limb,
    TrunkLimbDecomposition,
    complete_graph,
    connected_components,
    cycle_graph,
    fundamental_cycle_basis,
    parse_graph,
    path_graph,
    star_graph,
    trunk_limb_decompose,
)
from .orientation import (
    DEFAULT_STATE_BUDGET,
    AcyclicOrientation,
    StateBudgetExceeded,
    enumerate_acyclic_orientations,
    parse_orientation,
    reachability_classes,
    reachability_classes_bfs,
    reachable,
    reachable_bfs,
    redirect_limb_edges,
)
from .words import (
    commutation_equivalent,
    commutation_normal_form,
    has_intervening_neighbours,
    is_coxeter_word,
    orientation_from_word,
    parse_word,
    power,
    process_word,
    require_coxeter_word,
    rotate,
    word_from_orientation,
)
from .conjugacy import (
    ConjugacyWitness,
    CoxeterElement,
    GroupRepresentation,
    are_conjugate,
    build_representation,
    class_report_lines,
    conjugacy_classes,
    conjugacy_witness,
    coxeter_elements,
    enumerate_group,
    oracle_are_conjugate,
    replay_witness,
    resolve_kind,
)

__version__ = "0.1.0"
