"""Conceptual spaces as DAGs of constraints, with axioms at the sinks."""

from .artifact import (
    DEFAULT_HEADERS,
    Artifact,
    Location,
    generate_artifact,
    induce_space,
    jaccard,
    locate,
    make_artifact,
    similarity,
    validate_artifact,
)
from .errors import ConceptSpaceError
from .io import (
    CORPUS_NAMES,
    SpaceDocument,
    export_dot,
    load_corpus,
    parse_document,
    parse_script,
    write_document,
    write_script,
)
from .space import (
    ConceptualSpace,
    ConstraintVertex,
    ReachSets,
    TheoremVerdict,
    Verdict,
    axioms,
    build_space,
    check_theorem,
    edge_monotonicity_witness,
    empty_space,
    max_potential,
    reach_sets,
    transformative_potential,
)
from .transform import (
    AddEdge,
    AddVertex,
    ImpactReport,
    ModifyVertex,
    RemoveEdge,
    RemoveVertex,
    TransformationScript,
    apply,
    apply_script,
    diff,
    impact,
    revise_to_include,
)

__version__ = "0.1.0"
