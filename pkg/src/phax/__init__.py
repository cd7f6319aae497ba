"""phax: defeasible argumentation with user-adapted explanation selection.

Pipeline: parse a ``.phax`` theory, ground it, construct structured
arguments and attacks, resolve defeats through preferences, evaluate
acceptability under Dung semantics, and select + render the explanation
subtree that best fits a user profile.
"""

from .af import (
    ArgumentationFramework,
    Labelling,
    acceptance,
    enumerate_labellings,
    from_tgf,
    grounded_labelling,
    to_tgf,
)
from .arguments import (
    Argument,
    Attack,
    DefeatGraph,
    argument_labels,
    argument_weight,
    compute_attacks,
    construct_arguments,
    literal_acceptance,
    project_af,
    resolve_defeats,
)
from .dispute import (
    DisputeTree,
    ExplanationSelection,
    UtilityWeights,
    build_dispute_tree,
    select_explanation,
    sufficiency,
    utility,
)
from .errors import (
    InsufficientExplanationError,
    PhaxError,
    TheoryParseError,
    TheoryValidationError,
)
from .grounding import GroundTheory, ground_theory
from .parser import parse_literal, parse_theory, theory_from_source
from .profiles import BUILTIN_PROFILES, UserProfile, band_for, profile_from_json
from .render import render_af_dot, render_argument, render_explanation
from .schemes import (
    CriticalQuestion,
    Scheme,
    SchemeInstance,
    StudyRecord,
    apply_critical_question,
    builtin_schemes,
    encode_study,
    encode_studies,
    instantiate_scheme,
    scheme_instances,
    study_preference,
    studies_from_csv,
    studies_from_json,
)
from .session import Session, SessionStore, derive, explain_report
from .theory import (
    Literal,
    Premise,
    Rule,
    Term,
    Theory,
    atom,
    merge_theories,
    serialize_theory,
    validate_theory,
)

__version__ = "0.1.0"
