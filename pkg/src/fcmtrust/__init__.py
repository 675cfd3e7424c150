"""Concept-map trust quantification.

A deterministic fuzzy-cognitive-map engine, a survey-to-trust pipeline on
the [-1, 1] trust continuum, and a conjunctive IF-THEN rule classifier,
with file formats, a CLI and a local HTTP service on top.
"""
from .errors import (
    DimensionMismatch,
    DuplicateRuleId,
    FcmTrustError,
    InvalidConfig,
    InvalidRuleSet,
    MalformedDocument,
    MalformedSurvey,
    MissingDefault,
    MissingFeature,
    OutOfRange,
    RuleSyntaxError,
    UnknownLabel,
)
from .fcm import (
    Activation,
    Concept,
    FcmModel,
    InferenceConfig,
    InferenceOutcome,
    OutcomeKind,
    StateVector,
    activate,
    productive_iterations,
    run_inference,
    step,
    validate_model,
)
from .fuzzy import (
    INFLUENCE_SCALE,
    RATING_SCALE,
    LinguisticScale,
    ScaleTerm,
    TriangularFuzzyNumber,
    defuzzify_mom,
    lookup_term,
    membership,
)
from .rules import (
    Comparator,
    Condition,
    PatientRecord,
    Prediction,
    Rule,
    RuleSet,
    classify,
    explain,
    parse_rules,
    render_rules,
)
from .trust import (
    ALL_CONCEPT_IDS,
    ATTRIBUTE_LABELS,
    CONCEPT_IDS,
    TRUST_ID,
    BandKind,
    SurveyResponse,
    TrustBand,
    TrustReport,
    build_fcm_from_survey,
    classify_band,
    quantify_trust,
    validate_survey,
)

__version__ = "0.1.0"
