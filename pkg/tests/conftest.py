from __future__ import annotations

import hypothesis
import pytest

from fcmtrust import SurveyResponse

hypothesis.settings.register_profile("fast", max_examples=25)
hypothesis.settings.register_profile("thorough", max_examples=200)

RATING_LABELS = (
    "I disagree strongly",
    "I disagree somewhat",
    "I'm neutral about it",
    "I agree somewhat",
    "I agree strongly",
)
INFLUENCE_LABELS = (
    "Inversely high",
    "Inversely low",
    "No influence",
    "Directly low",
    "Directly high",
)

# Blood-panel fixture: four records and the three bundled screening rules.
PATIENT_FEATURES = (
    "Albumin",
    "Alkaline phosphatase",
    "Basophils",
    "Calcium",
    "C-reactive protein",
    "Erythrocytes",
    "Glucose",
    "Lactate dehydrogenase",
    "Leukocytes",
    "Lipase",
    "Mean Cellular Haemoglobin",
)
PATIENT_ROWS = {
    "patient-1": (37.0, 70.0, 0.03, 2.09, 1.43, 4.75, 10.36, 392.0, 7.13, 47.8, 1.895),
    "patient-2": (44.2, 82.0, 0.02, 2.5, 4.68, 4.66, 6.53, 280.0, 4.5, 16.2, 1.931),
    "patient-3": (36.7, 69.0, 0.01, 2.18, 39.91, 4.87, 5.4, 481.0, 6.53, 66.2, 1.848),
    "patient-4": (38.6, 70.2, 0.03, 2.29, 173.0, 4.34, 6.87, 154.0, 16.6, 29.1, 1.751),
}
EXPECTED_CLASSES = {
    "patient-1": ("Positive", "r1"),
    "patient-2": ("Negative", None),
    "patient-3": ("Positive", "r2"),
    "patient-4": ("Negative", None),
}

BLOOD_PANEL_RULES = """\
RULE r1: IF Albumin <= 37.9 AND "Alkaline phosphatase" <= 82 AND Calcium <= 2.28 \
AND Erythrocytes >= 3.94 AND Glucose >= 5.66 AND "Lactate dehydrogenase" >= 302 THEN Positive
RULE r2: IF "Alkaline phosphatase" <= 83.6 AND Basophils <= 0.01 AND "C-reactive protein" >= 19.62 \
AND Leukocytes <= 7.69 AND Lipase >= 30.5 THEN Positive
RULE r3: IF Erythrocytes >= 4.29 AND "Lactate dehydrogenase" >= 320 AND Leukocytes <= 7.68 \
AND "Mean Cellular Haemoglobin" >= 1.85 THEN Positive
DEFAULT Negative
"""


def make_survey(expert_id="expert-1", ratings=None, influences=None, metadata=None):
    """A valid survey with every concept rated, overridable per test."""
    base = {cid: "I'm neutral about it" for cid in ("C1", "C2", "C3", "C4", "C5", "C6", "C7")}
    if ratings:
        base.update(ratings)
    return SurveyResponse(
        expert_id=expert_id,
        ratings=base,
        influences=dict(influences or {}),
        metadata=dict(metadata or {}),
    )


@pytest.fixture
def patient_records():
    from fcmtrust import PatientRecord

    return {
        rid: PatientRecord(rid, dict(zip(PATIENT_FEATURES, row)))
        for rid, row in PATIENT_ROWS.items()
    }


@pytest.fixture
def blood_panel_rules():
    from fcmtrust import parse_rules

    return parse_rules(BLOOD_PANEL_RULES)
