"""Error taxonomy shared by the engine, the pipeline, the CLI and the service."""
from __future__ import annotations

from typing import Sequence


class FcmTrustError(Exception):
    """Base class for every error this package raises on bad input."""


class UnknownLabel(FcmTrustError):
    """A linguistic label that no term of the scale matches."""

    def __init__(self, label: str, scale_name: str, candidates: Sequence[str] = ()):
        self.label = label
        self.scale_name = scale_name
        self.candidates = tuple(candidates)
        hint = ""
        if self.candidates:
            hint = "; did you mean " + ", ".join(repr(c) for c in self.candidates) + "?"
        super().__init__(f"unknown label {label!r} on scale {scale_name!r}{hint}")


class DimensionMismatch(FcmTrustError):
    """State vector length does not match the model's concept count."""


class InvalidConfig(FcmTrustError):
    """Inference or service configuration violates its invariants."""


class OutOfRange(FcmTrustError):
    """A numeric value falls outside its documented interval."""


class MalformedSurvey(FcmTrustError):
    """Survey response violates its structural invariants."""


class MalformedDocument(FcmTrustError):
    """A structured document cannot be decoded into its domain type."""


class RuleSyntaxError(FcmTrustError):
    """Rule DSL source that the grammar rejects, with position."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DuplicateRuleId(FcmTrustError):
    def __init__(self, rule_id: str):
        self.rule_id = rule_id
        super().__init__(f"duplicate rule id {rule_id!r}")


class MissingDefault(FcmTrustError):
    def __init__(self) -> None:
        super().__init__("rule source has no DEFAULT line")


class InvalidRuleSet(FcmTrustError):
    """Structurally valid parse whose semantics violate rule-set invariants."""


class MissingFeature(FcmTrustError):
    """A record lacks a feature a rule needs to evaluate."""

    def __init__(self, feature: str, rule_id: str):
        self.feature = feature
        self.rule_id = rule_id
        super().__init__(f"record is missing feature {feature!r} required by rule {rule_id!r}")
