from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, strategies as st

from fcmtrust import (
    ALL_CONCEPT_IDS,
    CONCEPT_IDS,
    TRUST_ID,
    Activation,
    BandKind,
    InferenceConfig,
    MalformedSurvey,
    OutcomeKind,
    OutOfRange,
    UnknownLabel,
    build_fcm_from_survey,
    classify_band,
    quantify_trust,
    validate_survey,
)

from conftest import INFLUENCE_LABELS, RATING_LABELS, make_survey

TANH_1 = 0.7615941559557649


class TestClassifyBand:
    @pytest.mark.parametrize(
        "value, kind",
        [
            (0.8079, BandKind.TRUST),
            (-0.7645, BandKind.DISTRUST),
            (0.9992, BandKind.TRUST),
            (0.0, BandKind.IGNORANCE),
            (0.3, BandKind.LEANING_TRUST),
            (-0.3, BandKind.LEANING_DISTRUST),
            (0.5, BandKind.LEANING_TRUST),
            (-0.5, BandKind.LEANING_DISTRUST),
            (1.0, BandKind.TRUST),
            (-1.0, BandKind.DISTRUST),
            (1e-6, BandKind.IGNORANCE),
            (-1e-6, BandKind.IGNORANCE),
            (2e-6, BandKind.LEANING_TRUST),
            (-2e-6, BandKind.LEANING_DISTRUST),
        ],
    )
    def test_bands(self, value, kind):
        band = classify_band(value)
        assert band.kind is kind
        assert band.value == value

    @pytest.mark.parametrize("value", [1.0000001, -1.0000001, 2.0, float("nan")])
    def test_out_of_range(self, value):
        with pytest.raises(OutOfRange):
            classify_band(value)

    def test_ignorance_epsilon_configurable(self):
        assert classify_band(0.01, ignorance_epsilon=0.05).kind is BandKind.IGNORANCE
        assert classify_band(0.01).kind is BandKind.LEANING_TRUST

    @given(st.floats(min_value=-1, max_value=1, allow_nan=False))
    def test_partition_and_mirror_symmetry(self, value):
        band = classify_band(value)
        mirrored = classify_band(-value)
        flips = {
            BandKind.TRUST: BandKind.DISTRUST,
            BandKind.DISTRUST: BandKind.TRUST,
            BandKind.LEANING_TRUST: BandKind.LEANING_DISTRUST,
            BandKind.LEANING_DISTRUST: BandKind.LEANING_TRUST,
            BandKind.IGNORANCE: BandKind.IGNORANCE,
        }
        assert mirrored.kind is flips[band.kind]


class TestSurveyValidation:
    def test_valid_survey_passes(self):
        validate_survey(make_survey(influences={("C1", TRUST_ID): "Directly high"}))

    def test_missing_rating(self):
        from fcmtrust import SurveyResponse

        ratings = dict(make_survey().ratings)
        del ratings["C3"]
        broken = SurveyResponse("e", ratings, {})
        with pytest.raises(MalformedSurvey, match="missing rating for C3"):
            validate_survey(broken)

    def test_unexpected_rating_key(self):
        from fcmtrust import SurveyResponse

        ratings = dict(make_survey().ratings)
        ratings[TRUST_ID] = "I agree strongly"
        with pytest.raises(MalformedSurvey, match="unexpected rating"):
            validate_survey(SurveyResponse("e", ratings, {}))

    def test_unknown_rating_label(self):
        with pytest.raises(UnknownLabel):
            validate_survey(make_survey(ratings={"C2": "Agree a lot"}))

    def test_self_influence_rejected(self):
        with pytest.raises(MalformedSurvey, match="self-influence"):
            validate_survey(make_survey(influences={("C4", "C4"): "Directly low"}))

    def test_unknown_influence_endpoint(self):
        with pytest.raises(MalformedSurvey, match="unknown influence source"):
            validate_survey(make_survey(influences={("C9", "C1"): "Directly low"}))
        with pytest.raises(MalformedSurvey, match="unknown influence target"):
            validate_survey(make_survey(influences={("C1", "C9"): "Directly low"}))

    def test_unknown_influence_label(self):
        with pytest.raises(UnknownLabel):
            validate_survey(make_survey(influences={("C1", "C2"): "Very strong"}))

    def test_strict_labels(self):
        survey = make_survey(ratings={"C1": "i agree strongly"})
        validate_survey(survey)
        with pytest.raises(UnknownLabel):
            validate_survey(survey, strict_labels=True)


class TestBuildFcm:
    def test_rating_defuzzification_to_initial_activations(self):
        survey = make_survey(ratings={"C1": "I agree strongly", "C5": "I disagree strongly"})
        model, initial = build_fcm_from_survey(survey)
        assert initial.values[0] == 1.0
        assert initial.values[4] == 0.0
        assert initial.values[7] == 0.0

    def test_concept_order_is_fixed(self):
        model, _ = build_fcm_from_survey(make_survey())
        assert model.concept_ids() == ALL_CONCEPT_IDS
        assert model.activation is Activation.TANH

    def test_all_influences_absent_gives_zero_matrix(self):
        model, _ = build_fcm_from_survey(make_survey())
        assert all(w == 0.0 for row in model.weights for w in row)
        from fcmtrust import validate_model

        assert validate_model(model) == []

    def test_weight_orientation_source_to_target(self):
        survey = make_survey(influences={("C2", "C1"): "Directly high", ("C1", TRUST_ID): "Inversely low"})
        model, _ = build_fcm_from_survey(survey)
        assert model.weight("C2", "C1") == 1.0
        assert model.weight("C1", "C2") == 0.0
        assert model.weight("C1", TRUST_ID) == -0.5

    def test_trust_initial_configurable_and_validated(self):
        _, initial = build_fcm_from_survey(make_survey(), trust_initial=0.25)
        assert initial.values[7] == 0.25
        with pytest.raises(OutOfRange):
            build_fcm_from_survey(make_survey(), trust_initial=1.5)


class TestQuantifyTrust:
    def test_all_no_influence_survey_is_ignorance(self):
        report = quantify_trust(make_survey(expert_id="blank"))
        assert report.trust_value == 0.0
        assert report.band.kind is BandKind.IGNORANCE
        assert report.expert_id == "blank"

    def test_zero_trust_coupling_pins_trust_to_zero(self):
        # randomized ratings and concept-to-concept weights; everything into
        # the trust concept stays "No influence", outgoing edges are free
        rng = random.Random(42)
        for _ in range(60):
            ratings = {cid: rng.choice(RATING_LABELS) for cid in CONCEPT_IDS}
            influences = {}
            for source in CONCEPT_IDS:
                for target in CONCEPT_IDS:
                    if source != target and rng.random() < 0.4:
                        influences[(source, target)] = rng.choice(INFLUENCE_LABELS)
            for target in rng.sample(CONCEPT_IDS, 3):
                influences[(TRUST_ID, target)] = rng.choice(INFLUENCE_LABELS)
            for source in CONCEPT_IDS:
                if rng.random() < 0.5:
                    influences[(source, TRUST_ID)] = "No influence"
            report = quantify_trust(make_survey(ratings=ratings, influences=influences))
            assert report.trust_value == 0.0
            assert report.band.kind is BandKind.IGNORANCE

    def test_single_edge_fixture_matches_frozen_oracle_values(self):
        # one directly-high edge into trust from a strongly-agreed concept:
        # trust peaks at tanh(1) after the first step, then every concept
        # starves (no incoming edges) and the run settles at all zeros
        survey = make_survey(
            ratings={"C1": "I agree strongly", **{c: "I disagree strongly" for c in CONCEPT_IDS[1:]}},
            influences={("C1", TRUST_ID): "Directly high"},
        )
        report = quantify_trust(survey)
        assert report.outcome.trace[1].values[7] == TANH_1
        assert report.outcome.kind is OutcomeKind.FIXED_POINT
        assert report.trust_value == 0.0

    def test_monotonicity_over_rating_labels(self):
        first_step = []
        terminal = []
        for label in RATING_LABELS:
            survey = make_survey(
                ratings={"C1": label, **{c: "I disagree strongly" for c in CONCEPT_IDS[1:]}},
                influences={("C1", TRUST_ID): "Directly high"},
            )
            report = quantify_trust(survey)
            first_step.append(report.outcome.trace[1].values[7])
            terminal.append(report.trust_value)
        assert first_step == sorted(first_step)
        assert all(b >= a for a, b in zip(terminal, terminal[1:]))

    def test_report_invariant_and_determinism(self):
        survey = make_survey(
            ratings={"C1": "I agree somewhat"},
            influences={("C1", "C2"): "Directly high", ("C2", TRUST_ID): "Directly low"},
        )
        first = quantify_trust(survey)
        second = quantify_trust(survey)
        assert first.trust_value == first.outcome.final_state.values[-1]
        assert first.trust_value == second.trust_value
        assert [sv.values for sv in first.outcome.trace] == [sv.values for sv in second.outcome.trace]

    def test_sustained_loop_produces_nonzero_trust(self):
        # two mutually reinforcing sources per concept keep activation alive
        influences = {
            ("C1", "C2"): "Directly high",
            ("C2", "C1"): "Directly high",
            ("C3", "C1"): "Directly high",
            ("C1", "C3"): "Directly high",
            ("C3", "C2"): "Directly high",
            ("C2", "C3"): "Directly high",
            ("C1", TRUST_ID): "Directly high",
            ("C2", TRUST_ID): "Directly high",
        }
        ratings = {c: "I agree strongly" for c in CONCEPT_IDS}
        report = quantify_trust(make_survey(ratings=ratings, influences=influences))
        assert report.outcome.kind is OutcomeKind.FIXED_POINT
        assert report.band.kind is BandKind.TRUST
        assert report.trust_value > 0.9

    def test_nonconvergent_is_reported_not_raised(self):
        config = InferenceConfig(epsilon=1e-12, max_iterations=20, cycle_window=5)
        influences = {("C1", "C2"): "Directly high", ("C2", "C1"): "Directly high"}
        report = quantify_trust(make_survey(influences=influences), config)
        assert report.outcome.kind is OutcomeKind.NON_CONVERGENT

    def test_trust_initial_feeds_outgoing_edges_once(self):
        survey = make_survey(
            ratings={c: "I disagree strongly" for c in CONCEPT_IDS},
            influences={(TRUST_ID, "C1"): "Directly high"},
        )
        report = quantify_trust(survey, trust_initial=0.5)
        assert report.outcome.trace[1].values[0] == math.tanh(0.5)
