from __future__ import annotations

import json

import pytest

from fcmtrust import (
    Activation,
    Concept,
    FcmModel,
    InferenceConfig,
    MalformedDocument,
    MalformedSurvey,
    StateVector,
    TRUST_ID,
    quantify_trust,
    run_inference,
)
from fcmtrust import documents as docs

from conftest import PATIENT_FEATURES, PATIENT_ROWS, make_survey


def small_model(activation=Activation.TANH):
    return FcmModel(
        (Concept("A", "alpha"), Concept("B", "beta")),
        ((0.0, 0.5), (-0.25, 0.0)),
        activation,
    )


class TestJsonConventions:
    def test_to_json_bytes_is_deterministic_and_full_precision(self):
        doc = {"x": 0.1 + 0.2, "y": [1.0, -0.7645]}
        first, second = docs.to_json_bytes(doc), docs.to_json_bytes(doc)
        assert first == second
        assert json.loads(first)["x"] == 0.1 + 0.2

    def test_envelope_rejects_wrong_format_and_version(self):
        with pytest.raises(MalformedDocument, match="expected format"):
            docs.check_envelope({"format": "other", "version": 1}, docs.SURVEY_FORMAT)
        with pytest.raises(MalformedDocument, match="version"):
            docs.check_envelope({"format": docs.SURVEY_FORMAT, "version": 99}, docs.SURVEY_FORMAT)
        with pytest.raises(MalformedDocument, match="version"):
            docs.check_envelope({"format": docs.SURVEY_FORMAT}, docs.SURVEY_FORMAT)


class TestSurveyDocuments:
    def test_round_trip(self):
        survey = make_survey(
            expert_id="expert-7",
            ratings={"C1": "I agree strongly"},
            influences={("C1", TRUST_ID): "Directly high", ("C2", "C1"): "Inversely low"},
            metadata={"expertise": "general practice", "experience": "4 years"},
        )
        back = docs.survey_from_document(docs.survey_to_document(survey))
        assert back == survey

    def test_unknown_top_level_keys_ignored(self):
        doc = docs.survey_to_document(make_survey())
        doc["studio"] = {"layout": {"C1": [10, 20]}}
        assert docs.survey_from_document(doc) == make_survey()

    def test_influences_sorted_for_stable_output(self):
        survey = make_survey(influences={("C2", "C1"): "Directly low", ("C1", "C2"): "Directly high"})
        doc = docs.survey_to_document(survey)
        assert [(e["source"], e["target"]) for e in doc["influences"]] == [("C1", "C2"), ("C2", "C1")]

    @pytest.mark.parametrize(
        "mutate, fragment",
        [
            (lambda d: d.update(expert_id=""), "expert_id"),
            (lambda d: d.update(ratings=[1]), "ratings"),
            (lambda d: d.update(ratings={"C1": 3}), "string label"),
            (lambda d: d.update(influences=[{"source": "C1", "label": "Directly high"}]), "missing 'target'"),
            (lambda d: d.update(influences=[{"source": "C1", "target": "C2", "label": 5}]), "strings"),
            (
                lambda d: d.update(
                    influences=[
                        {"source": "C1", "target": "C2", "label": "Directly high"},
                        {"source": "C1", "target": "C2", "label": "Directly low"},
                    ]
                ),
                "duplicate influence",
            ),
            (lambda d: d.update(metadata=3), "metadata"),
        ],
    )
    def test_malformed_documents(self, mutate, fragment):
        doc = docs.survey_to_document(make_survey())
        mutate(doc)
        with pytest.raises(MalformedSurvey, match=fragment):
            docs.survey_from_document(doc)


class TestModelDocuments:
    def test_round_trip_preserves_orientation(self):
        model = small_model()
        back = docs.model_from_document(docs.model_to_document(model))
        assert back == model
        assert back.weight("A", "B") == 0.5
        assert back.weight("B", "A") == -0.25

    def test_linguistic_weight_entries(self):
        doc = {
            "format": docs.MODEL_FORMAT,
            "version": 1,
            "concepts": ["A", "B"],
            "activation": "tanh",
            "weights": [{"source": "A", "target": "B", "label": "Inversely high"}],
        }
        assert docs.model_from_document(doc).weight("A", "B") == -1.0

    @pytest.mark.parametrize(
        "weights, fragment",
        [
            ([{"source": "Z", "target": "B", "weight": 1}], "unknown source"),
            ([{"source": "A", "target": "Z", "weight": 1}], "unknown target"),
            ([{"source": "A", "target": "B"}], "exactly one"),
            ([{"source": "A", "target": "B", "weight": 1, "label": "Directly high"}], "exactly one"),
            ([{"source": "A", "target": "B", "weight": "big"}], "must be a number"),
            (
                [
                    {"source": "A", "target": "B", "weight": 1},
                    {"source": "A", "target": "B", "weight": 0.5},
                ],
                "duplicate weight entry",
            ),
        ],
    )
    def test_bad_weight_entries(self, weights, fragment):
        doc = {"format": docs.MODEL_FORMAT, "version": 1, "concepts": ["A", "B"], "weights": weights}
        with pytest.raises(MalformedDocument, match=fragment):
            docs.model_from_document(doc)

    def test_bad_activation_and_concepts(self):
        base = {"format": docs.MODEL_FORMAT, "version": 1}
        with pytest.raises(MalformedDocument, match="non-empty list"):
            docs.model_from_document({**base, "concepts": []})
        with pytest.raises(MalformedDocument, match="unknown activation"):
            docs.model_from_document({**base, "concepts": ["A"], "activation": "relu"})
        with pytest.raises(MalformedDocument, match="unique"):
            docs.model_from_document({**base, "concepts": ["A", "A"]})


class TestStateDocuments:
    def test_round_trip_keyed_by_concept_id(self):
        model = small_model()
        state = StateVector((0.25, -0.75), iteration=2)
        doc = docs.state_to_document(state, model)
        assert doc["values"] == {"A": 0.25, "B": -0.75}
        assert docs.state_from_document(doc, model) == state

    def test_missing_and_unknown_ids(self):
        model = small_model()
        with pytest.raises(MalformedDocument, match="missing a value"):
            docs.state_from_document(
                {"format": docs.STATE_FORMAT, "version": 1, "values": {"A": 0.1}}, model
            )
        with pytest.raises(MalformedDocument, match="unknown concept"):
            docs.state_from_document(
                {"format": docs.STATE_FORMAT, "version": 1, "values": {"A": 0.1, "B": 0.2, "C": 0.3}},
                model,
            )


class TestScaleDocuments:
    def test_round_trip_recomputes_crisp_values(self):
        doc = {
            "format": docs.SCALE_FORMAT,
            "version": 1,
            "name": "confidence",
            "terms": [
                {"label": "low", "tfn": [0, 0, 0.5], "defuzzified": 99.0},
                {"label": "high", "tfn": [0.5, 1, 1]},
            ],
        }
        scale = docs.scale_from_document(doc)
        # the bogus stored value is ignored; crisp values always recomputed
        assert [t.defuzzified for t in scale.terms] == [0.0, 1.0]

    def test_invalid_triangle_reported(self):
        doc = {
            "format": docs.SCALE_FORMAT,
            "version": 1,
            "name": "bad",
            "terms": [{"label": "x", "tfn": [1, 0, 2]}],
        }
        with pytest.raises(MalformedDocument, match="a <= b <= c"):
            docs.scale_from_document(doc)


class TestTraceCsv:
    def test_full_precision_round_trip(self):
        model = small_model()
        outcome = run_inference(model, StateVector((1.0, -1.0)))
        text = docs.trace_to_csv(outcome.trace, model.concept_ids())
        lines = text.strip().splitlines()
        assert lines[0] == "iteration,A,B"
        assert len(lines) == len(outcome.trace) + 1
        for line, sv in zip(lines[1:], outcome.trace):
            cells = line.split(",")
            assert int(cells[0]) == sv.iteration
            assert tuple(float(c) for c in cells[1:]) == sv.values


class TestPatientsCsv:
    def make_text(self):
        lines = ["record_id," + ",".join(f'"{f}"' if "," in f else f for f in PATIENT_FEATURES)]
        for rid, row in PATIENT_ROWS.items():
            lines.append(rid + "," + ",".join(repr(v) for v in row))
        return "\n".join(lines) + "\n"

    def test_parse_fixture(self):
        records = docs.patients_from_csv(self.make_text())
        assert [r.record_id for r in records] == list(PATIENT_ROWS)
        assert records[0].features["Albumin"] == 37.0
        assert records[2].features["Basophils"] == 0.01

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("", "empty"),
            ("record_id,A,A\nr1,1,2\n", "duplicate feature"),
            ("record_id,A\nr1\n", "expected 2"),
            ("record_id,A\n,1\n", "empty record id"),
            ("record_id,A\nr1,abc\n", "not a number"),
        ],
    )
    def test_malformed(self, text, fragment):
        with pytest.raises(MalformedDocument, match=fragment):
            docs.patients_from_csv(text)


class TestReportDocuments:
    def test_report_document_shape(self):
        config = InferenceConfig()
        report = quantify_trust(make_survey(expert_id="e9"), config)
        doc = docs.report_to_document(report, config)
        assert doc["format"] == docs.REPORT_FORMAT
        assert doc["expert_id"] == "e9"
        assert doc["trust_value"] == 0.0
        assert doc["band"] == "Ignorance"
        assert doc["outcome"]["kind"] == "FixedPoint"
        assert doc["outcome"]["trace"][0] == list(report.initial_state.values)
        assert doc["outcome"]["config"] == {"epsilon": 1e-5, "max_iterations": 100, "cycle_window": 50}
        assert doc["model"]["concepts"][7] == {"id": "TRUST", "label": "Perceived trust"}

    def test_summary_table_shape(self):
        config = InferenceConfig()
        reports = [quantify_trust(make_survey(expert_id=f"e{i}"), config) for i in range(2)]
        table = docs.summary_table(reports)
        lines = table.strip().splitlines()
        assert lines[0].split() == ["expert", "trust_value", "band", "outcome", "iterations"]
        assert len(lines) == 3
        assert "Ignorance" in lines[1]


class TestConfigDocuments:
    def test_partial_config_uses_defaults(self):
        config = docs.config_from_document({"epsilon": 1e-3})
        assert config == InferenceConfig(epsilon=1e-3)

    def test_unknown_fields_rejected(self):
        with pytest.raises(MalformedDocument, match="unknown config"):
            docs.config_from_document({"eps": 1e-3})
