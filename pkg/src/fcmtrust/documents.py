"""Self-describing documents, tabular exports and file ingestion.

Every structured file shares one envelope: a ``format`` tag naming the
document kind and an integer ``version``.  Unknown top-level keys are
ignored, so sidecar tooling (for example an editor storing canvas layout)
can annotate files without breaking the readers here.

Weight entries name their endpoints explicitly (``source``/``target``) so
the matrix orientation can never silently transpose; a weight may be given
numerically or as an influence-scale label.  Serialization goes through
:func:`to_json_bytes` so the CLI and the HTTP service emit byte-identical
documents, with floats at full round-trippable precision.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .errors import MalformedDocument, MalformedSurvey
from .fcm import (
    Activation,
    Concept,
    FcmModel,
    InferenceConfig,
    InferenceOutcome,
    StateVector,
    productive_iterations,
)
from .fuzzy import INFLUENCE_SCALE, LinguisticScale, lookup_term
from .rules import PatientRecord
from .trust import SurveyResponse, TrustReport

FORMAT_VERSION = 1
SURVEY_FORMAT = "fcm-trust/survey"
MODEL_FORMAT = "fcm-trust/model"
STATE_FORMAT = "fcm-trust/state"
SCALE_FORMAT = "fcm-trust/scale"
REPORT_FORMAT = "fcm-trust/report"
OUTCOME_FORMAT = "fcm-trust/outcome"
PREDICTIONS_FORMAT = "fcm-trust/predictions"
ERROR_FORMAT = "fcm-trust/error"


def to_json_bytes(doc: Mapping[str, Any]) -> bytes:
    """Canonical encoding shared by every writer (CLI and service alike)."""
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def read_document(path: str | Path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocument(f"{path}: expected a JSON object at the top level")
    return doc


def write_document(path: str | Path, doc: Mapping[str, Any]) -> None:
    Path(path).write_bytes(to_json_bytes(doc))


def check_envelope(doc: Mapping[str, Any], expected_format: str) -> None:
    got = doc.get("format")
    if got != expected_format:
        raise MalformedDocument(f"expected format {expected_format!r}, got {got!r}")
    version = doc.get("version")
    if not isinstance(version, int) or version < 1 or version > FORMAT_VERSION:
        raise MalformedDocument(f"unsupported {expected_format!r} version {version!r}")


# -- surveys -----------------------------------------------------------------

def survey_to_document(survey) -> dict:
    influences = [
        {"source": source, "target": target, "label": label}
        for (source, target), label in survey.influences.items()
    ]
    influences.sort(key=lambda e: (e["source"], e["target"]))
    doc = {
        "format": SURVEY_FORMAT,
        "version": FORMAT_VERSION,
        "expert_id": survey.expert_id,
        "ratings": dict(survey.ratings),
        "influences": influences,
    }
    if survey.metadata:
        doc["metadata"] = dict(survey.metadata)
    return doc


def survey_from_document(doc: Mapping[str, Any]) -> SurveyResponse:
    check_envelope(doc, SURVEY_FORMAT)
    expert_id = doc.get("expert_id")
    if not isinstance(expert_id, str) or not expert_id:
        raise MalformedSurvey(f"expert_id must be a non-empty string, got {expert_id!r}")
    ratings = doc.get("ratings")
    if not isinstance(ratings, dict):
        raise MalformedSurvey("ratings must be an object mapping concept ids to labels")
    for cid, label in ratings.items():
        if not isinstance(label, str):
            raise MalformedSurvey(f"rating for {cid!r} must be a string label, got {label!r}")
    influences: dict[tuple[str, str], str] = {}
    for entry in doc.get("influences", []):
        if not isinstance(entry, dict):
            raise MalformedSurvey(f"influence entries must be objects, got {entry!r}")
        try:
            source, target, label = entry["source"], entry["target"], entry["label"]
        except KeyError as exc:
            raise MalformedSurvey(f"influence entry {entry!r} is missing {exc.args[0]!r}") from exc
        if not (isinstance(source, str) and isinstance(target, str) and isinstance(label, str)):
            raise MalformedSurvey(f"influence entry fields must be strings: {entry!r}")
        if (source, target) in influences:
            raise MalformedSurvey(f"duplicate influence entry {source}->{target}")
        influences[(source, target)] = label
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise MalformedSurvey("metadata must be an object of text fields")
    return SurveyResponse(
        expert_id=expert_id,
        ratings=dict(ratings),
        influences=influences,
        metadata={str(k): str(v) for k, v in metadata.items()},
    )


# -- models and states -------------------------------------------------------

def model_to_document(model: FcmModel) -> dict:
    weights = []
    for j, row in enumerate(model.weights):
        for i, w in enumerate(row):
            if w != 0.0:
                weights.append(
                    {"source": model.concepts[j].id, "target": model.concepts[i].id, "weight": w}
                )
    return {
        "format": MODEL_FORMAT,
        "version": FORMAT_VERSION,
        "concepts": [{"id": c.id, "label": c.label} for c in model.concepts],
        "activation": model.activation.value,
        "weights": weights,
    }


def model_from_document(doc: Mapping[str, Any]) -> FcmModel:
    check_envelope(doc, MODEL_FORMAT)
    raw_concepts = doc.get("concepts")
    if not isinstance(raw_concepts, list) or not raw_concepts:
        raise MalformedDocument("concepts must be a non-empty list")
    concepts = []
    for entry in raw_concepts:
        if isinstance(entry, str):
            concepts.append(Concept(entry, entry))
            continue
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise MalformedDocument(f"concept entries need an 'id': {entry!r}")
        concepts.append(Concept(entry["id"], str(entry.get("label", entry["id"]))))
    index = {c.id: i for i, c in enumerate(concepts)}
    if len(index) != len(concepts):
        raise MalformedDocument("concept ids must be unique")

    activation_name = doc.get("activation", "tanh")
    try:
        activation = Activation(activation_name)
    except ValueError:
        raise MalformedDocument(
            f"unknown activation {activation_name!r}; use 'tanh' or 'sigmoid'"
        ) from None

    n = len(concepts)
    matrix = [[0.0] * n for _ in range(n)]
    seen: set[tuple[str, str]] = set()
    for entry in doc.get("weights", []):
        if not isinstance(entry, dict):
            raise MalformedDocument(f"weight entries must be objects, got {entry!r}")
        source, target = entry.get("source"), entry.get("target")
        if source not in index:
            raise MalformedDocument(f"weight entry names unknown source {source!r}")
        if target not in index:
            raise MalformedDocument(f"weight entry names unknown target {target!r}")
        if (source, target) in seen:
            raise MalformedDocument(f"duplicate weight entry {source}->{target}")
        seen.add((source, target))
        has_weight, has_label = "weight" in entry, "label" in entry
        if has_weight == has_label:
            raise MalformedDocument(
                f"weight entry {source}->{target} needs exactly one of 'weight' or 'label'"
            )
        if has_label:
            value = lookup_term(INFLUENCE_SCALE, entry["label"]).defuzzified
        else:
            value = entry["weight"]
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise MalformedDocument(f"weight {source}->{target} must be a number, got {value!r}")
        matrix[index[source]][index[target]] = float(value)
    return FcmModel(tuple(concepts), tuple(tuple(row) for row in matrix), activation)


def state_to_document(state: StateVector, model: FcmModel) -> dict:
    return {
        "format": STATE_FORMAT,
        "version": FORMAT_VERSION,
        "values": {c.id: v for c, v in zip(model.concepts, state.values)},
        "iteration": state.iteration,
    }


def state_from_document(doc: Mapping[str, Any], model: FcmModel) -> StateVector:
    check_envelope(doc, STATE_FORMAT)
    values = doc.get("values")
    if not isinstance(values, dict):
        raise MalformedDocument("values must map concept ids to numbers")
    for cid in values:
        if cid not in model.concept_ids():
            raise MalformedDocument(f"state names unknown concept {cid!r}")
    ordered = []
    for concept in model.concepts:
        if concept.id not in values:
            raise MalformedDocument(f"state is missing a value for concept {concept.id!r}")
        v = values[concept.id]
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise MalformedDocument(f"value for {concept.id!r} must be a number, got {v!r}")
        ordered.append(float(v))
    iteration = doc.get("iteration", 0)
    if not isinstance(iteration, int) or iteration < 0:
        raise MalformedDocument(f"iteration must be a non-negative integer, got {iteration!r}")
    return StateVector(tuple(ordered), iteration)


# -- scales ------------------------------------------------------------------

def scale_to_document(scale: LinguisticScale) -> dict:
    return {
        "format": SCALE_FORMAT,
        "version": FORMAT_VERSION,
        "name": scale.name,
        "terms": [
            {"label": t.label, "tfn": [t.tfn.a, t.tfn.b, t.tfn.c], "defuzzified": t.defuzzified}
            for t in scale.terms
        ],
    }


def scale_from_document(doc: Mapping[str, Any]) -> LinguisticScale:
    """Crisp values are recomputed from the triples, never read from the file."""
    check_envelope(doc, SCALE_FORMAT)
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise MalformedDocument(f"scale name must be a non-empty string, got {name!r}")
    raw_terms = doc.get("terms")
    if not isinstance(raw_terms, list) or not raw_terms:
        raise MalformedDocument("terms must be a non-empty list")
    pairs = []
    for entry in raw_terms:
        if not isinstance(entry, dict) or not isinstance(entry.get("label"), str):
            raise MalformedDocument(f"scale terms need a 'label': {entry!r}")
        corners = entry.get("tfn")
        if (
            not isinstance(corners, list)
            or len(corners) != 3
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in corners)
        ):
            raise MalformedDocument(f"term {entry['label']!r} needs 'tfn': [a, b, c]")
        pairs.append((entry["label"], tuple(float(x) for x in corners)))
    try:
        return LinguisticScale.from_pairs(name, pairs)
    except ValueError as exc:
        raise MalformedDocument(str(exc)) from exc


# -- inference outcomes and trust reports ------------------------------------

def outcome_to_document(outcome: InferenceOutcome, model: FcmModel, config: InferenceConfig) -> dict:
    return {
        "format": OUTCOME_FORMAT,
        "version": FORMAT_VERSION,
        "kind": outcome.kind.value,
        "period": outcome.period,
        "iterations": len(outcome.trace) - 1,
        "productive_iterations": productive_iterations(outcome.trace, config.epsilon),
        "concepts": list(model.concept_ids()),
        "final_state": list(outcome.final_state.values),
        "trace": [list(sv.values) for sv in outcome.trace],
        "config": config_to_document(config),
    }


def config_to_document(config: InferenceConfig) -> dict:
    return {
        "epsilon": config.epsilon,
        "max_iterations": config.max_iterations,
        "cycle_window": config.cycle_window,
    }


def config_from_document(doc: Mapping[str, Any]) -> InferenceConfig:
    if not isinstance(doc, dict):
        raise MalformedDocument(f"config must be an object, got {doc!r}")
    known = {"epsilon", "max_iterations", "cycle_window"}
    unknown = set(doc) - known
    if unknown:
        raise MalformedDocument(f"unknown config fields: {sorted(unknown)}")
    if "epsilon" in doc and (not isinstance(doc["epsilon"], (int, float)) or isinstance(doc["epsilon"], bool)):
        raise MalformedDocument(f"epsilon must be a number, got {doc['epsilon']!r}")
    for key in ("max_iterations", "cycle_window"):
        if key in doc and (not isinstance(doc[key], int) or isinstance(doc[key], bool)):
            raise MalformedDocument(f"{key} must be an integer, got {doc[key]!r}")
    defaults = InferenceConfig()
    max_iterations = doc.get("max_iterations", defaults.max_iterations)
    # a partial config with a short horizon still needs a legal window
    cycle_window = doc.get("cycle_window", min(defaults.cycle_window, max_iterations))
    return InferenceConfig(
        epsilon=doc.get("epsilon", defaults.epsilon),
        max_iterations=max_iterations,
        cycle_window=cycle_window,
    )


def report_to_document(report: TrustReport, config: InferenceConfig) -> dict:
    return {
        "format": REPORT_FORMAT,
        "version": FORMAT_VERSION,
        "expert_id": report.expert_id,
        "trust_value": report.trust_value,
        "band": report.band.kind.value,
        "outcome": outcome_to_document(report.outcome, report.model, config),
        "initial_state": list(report.initial_state.values),
        "model": model_to_document(report.model),
    }


def summary_line(report: TrustReport) -> tuple[str, str, str, str, str]:
    outcome = report.outcome
    return (
        report.expert_id,
        repr(report.trust_value),
        report.band.kind.value,
        outcome.kind.value + (f"({outcome.period})" if outcome.period else ""),
        str(len(outcome.trace) - 1),
    )


def summary_table(reports: Iterable[TrustReport]) -> str:
    """Aligned text table comparing experts, one line per report."""
    header = ("expert", "trust_value", "band", "outcome", "iterations")
    rows = [header] + [summary_line(r) for r in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


# -- tabular text ------------------------------------------------------------

def trace_to_csv(trace: Sequence[StateVector], concept_ids: Sequence[str]) -> str:
    """One row per iteration, one column per concept, full decimal precision."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["iteration", *concept_ids])
    for sv in trace:
        writer.writerow([sv.iteration, *(repr(v) for v in sv.values)])
    return out.getvalue()


def patients_from_csv(text: str) -> tuple[PatientRecord, ...]:
    """Header row of feature names, record id in the first column."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise MalformedDocument("patients table is empty")
    header = [cell.strip() for cell in rows[0]]
    features = header[1:]
    if len(set(features)) != len(features):
        raise MalformedDocument("patients table has duplicate feature columns")
    records = []
    for row_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise MalformedDocument(
                f"patients table row {row_no} has {len(row)} cells, expected {len(header)}"
            )
        record_id = row[0].strip()
        if not record_id:
            raise MalformedDocument(f"patients table row {row_no} has an empty record id")
        values = {}
        for feature, cell in zip(features, row[1:]):
            try:
                values[feature] = float(cell)
            except ValueError:
                raise MalformedDocument(
                    f"patients table row {row_no}, feature {feature!r}: {cell!r} is not a number"
                ) from None
        records.append(PatientRecord(record_id, values))
    return tuple(records)
