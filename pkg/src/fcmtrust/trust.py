"""Survey-to-trust pipeline.

One expert's linguistic answers become an 8-concept model (the seven
explanation-satisfaction attributes plus the trust target), the model is
iterated to a terminal state, and the trust concept's activation is placed
on the [-1, 1] trust continuum: values above 0.5 read as trust, below -0.5
as distrust, and a small band around 0 as ignorance.

Concept order is fixed (C1..C7, TRUST) in every matrix and file so fixtures
stay diffable.  The trust concept is never rated; its initial activation
defaults to 0, the continuum's ignorance point, and is configurable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .errors import MalformedSurvey, OutOfRange
from .fcm import (
    Activation,
    Concept,
    FcmModel,
    InferenceConfig,
    InferenceOutcome,
    StateVector,
    run_inference,
)
from .fuzzy import INFLUENCE_SCALE, RATING_SCALE, lookup_term

CONCEPT_IDS: tuple[str, ...] = ("C1", "C2", "C3", "C4", "C5", "C6", "C7")
TRUST_ID = "TRUST"
ALL_CONCEPT_IDS: tuple[str, ...] = CONCEPT_IDS + (TRUST_ID,)

ATTRIBUTE_LABELS: Mapping[str, str] = {
    "C1": "Understandability",
    "C2": "Sufficiency of details",
    "C3": "Completeness",
    "C4": "Feeling of satisfaction",
    "C5": "Accuracy",
    "C6": "Usability",
    "C7": "Functionality",
    TRUST_ID: "Perceived trust",
}


@dataclass(frozen=True)
class SurveyResponse:
    """Raw linguistic answers of one expert.

    ``ratings`` maps C1..C7 to rating-scale labels; ``influences`` maps
    (source, target) pairs over the eight concepts to influence-scale labels,
    absent pairs meaning "No influence".
    """

    expert_id: str
    ratings: Mapping[str, str]
    influences: Mapping[tuple[str, str], str]
    metadata: Mapping[str, str] = field(default_factory=dict)


def validate_survey(survey: SurveyResponse, strict_labels: bool = False) -> None:
    """Raise MalformedSurvey or UnknownLabel on the first violated invariant."""
    for cid in CONCEPT_IDS:
        if cid not in survey.ratings:
            raise MalformedSurvey(f"missing rating for {cid}")
    for cid in survey.ratings:
        if cid not in CONCEPT_IDS:
            raise MalformedSurvey(f"unexpected rating for {cid!r}; only C1..C7 are rated")
    for cid in CONCEPT_IDS:
        lookup_term(RATING_SCALE, survey.ratings[cid], strict=strict_labels)
    for (source, target), label in survey.influences.items():
        if source not in ALL_CONCEPT_IDS:
            raise MalformedSurvey(f"unknown influence source {source!r}")
        if target not in ALL_CONCEPT_IDS:
            raise MalformedSurvey(f"unknown influence target {target!r}")
        if source == target:
            raise MalformedSurvey(f"self-influence {source}->{target} is not allowed")
        lookup_term(INFLUENCE_SCALE, label, strict=strict_labels)


def build_fcm_from_survey(
    survey: SurveyResponse,
    *,
    trust_initial: float = 0.0,
    strict_labels: bool = False,
) -> tuple[FcmModel, StateVector]:
    """Turn one survey into the 8-concept model plus its initial state.

    Weights and initial activations are the Mean-of-Maxima crisp values of
    the answered labels; absent influence pairs stay at weight 0.
    """
    validate_survey(survey, strict_labels=strict_labels)
    if not (-1.0 <= trust_initial <= 1.0):
        raise OutOfRange(f"initial trust activation {trust_initial!r} outside [-1, 1]")

    index = {cid: i for i, cid in enumerate(ALL_CONCEPT_IDS)}
    n = len(ALL_CONCEPT_IDS)
    weights = [[0.0] * n for _ in range(n)]
    for (source, target), label in survey.influences.items():
        term = lookup_term(INFLUENCE_SCALE, label, strict=strict_labels)
        weights[index[source]][index[target]] = term.defuzzified

    initial = [
        lookup_term(RATING_SCALE, survey.ratings[cid], strict=strict_labels).defuzzified
        for cid in CONCEPT_IDS
    ]
    initial.append(float(trust_initial))

    model = FcmModel(
        concepts=tuple(Concept(cid, ATTRIBUTE_LABELS[cid]) for cid in ALL_CONCEPT_IDS),
        weights=tuple(tuple(row) for row in weights),
        activation=Activation.TANH,
    )
    return model, StateVector(tuple(initial), 0)


class BandKind(Enum):
    DISTRUST = "Distrust"
    LEANING_DISTRUST = "LeaningDistrust"
    IGNORANCE = "Ignorance"
    LEANING_TRUST = "LeaningTrust"
    TRUST = "Trust"


@dataclass(frozen=True)
class TrustBand:
    kind: BandKind
    value: float


DEFAULT_IGNORANCE_EPSILON = 1e-6


def classify_band(value: float, ignorance_epsilon: float = DEFAULT_IGNORANCE_EPSILON) -> TrustBand:
    """Place a trust value on the continuum.

    The +-0.5 boundaries belong to the leaning bands (trust and distrust are
    strict inequalities), and ignorance is a tolerance band around 0 because
    terminal states land near zero rather than exactly on it.
    """
    if not (-1.0 <= value <= 1.0):
        raise OutOfRange(f"trust value {value!r} outside [-1, 1]")
    if value > 0.5:
        kind = BandKind.TRUST
    elif value < -0.5:
        kind = BandKind.DISTRUST
    elif abs(value) <= ignorance_epsilon:
        kind = BandKind.IGNORANCE
    elif value > 0.0:
        kind = BandKind.LEANING_TRUST
    else:
        kind = BandKind.LEANING_DISTRUST
    return TrustBand(kind, value)


@dataclass(frozen=True)
class TrustReport:
    """Quantified trust for one expert with the full audit trail."""

    expert_id: str
    trust_value: float
    band: TrustBand
    outcome: InferenceOutcome
    model: FcmModel
    initial_state: StateVector


def quantify_trust(
    survey: SurveyResponse,
    config: InferenceConfig | None = None,
    *,
    trust_initial: float = 0.0,
    ignorance_epsilon: float = DEFAULT_IGNORANCE_EPSILON,
    strict_labels: bool = False,
) -> TrustReport:
    """Full pipeline: build the model, run inference, classify the band.

    A NonConvergent run is reported, not raised; the outcome kind flags it
    and the trace is carried for audit either way.
    """
    model, initial = build_fcm_from_survey(
        survey, trust_initial=trust_initial, strict_labels=strict_labels
    )
    outcome = run_inference(model, initial, config)
    trust_value = outcome.final_state.values[-1]
    return TrustReport(
        expert_id=survey.expert_id,
        trust_value=trust_value,
        band=classify_band(trust_value, ignorance_epsilon),
        outcome=outcome,
        model=model,
        initial_state=initial,
    )
