"""Conjunctive threshold rule lists with a default class.

Rules are ordered and first-match wins; a record no rule covers gets the
default class.  The textual DSL is line-oriented:

    RULE r1: IF Albumin <= 37.9 AND "Lactate dehydrogenase" >= 302 THEN Positive
    DEFAULT Negative

Keywords are case-insensitive, `#` starts a comment, and feature names
containing anything beyond letters, digits and underscores (spaces, hyphens)
must be double-quoted.  Only <= and >= exist; thresholds are decimal
literals compared inclusively in binary floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .errors import (
    DuplicateRuleId,
    InvalidRuleSet,
    MissingDefault,
    MissingFeature,
    RuleSyntaxError,
)


class Comparator(Enum):
    LESS_OR_EQUAL = "<="
    GREATER_OR_EQUAL = ">="


@dataclass(frozen=True)
class Condition:
    feature: str
    comparator: Comparator
    threshold: float

    def __post_init__(self) -> None:
        if not self.feature:
            raise InvalidRuleSet("condition feature name must be non-empty")
        if self.threshold != self.threshold or self.threshold in (float("inf"), float("-inf")):
            raise InvalidRuleSet(f"condition threshold must be finite, got {self.threshold!r}")

    def holds(self, value: float) -> bool:
        if self.comparator is Comparator.LESS_OR_EQUAL:
            return value <= self.threshold
        return value >= self.threshold


@dataclass(frozen=True)
class Rule:
    rule_id: str
    conditions: tuple[Condition, ...]
    class_label: str


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]
    default_class: str

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for rule in self.rules:
            if rule.rule_id in seen:
                raise DuplicateRuleId(rule.rule_id)
            seen.add(rule.rule_id)
            if rule.class_label == self.default_class:
                raise InvalidRuleSet(
                    f"rule {rule.rule_id!r} concludes the default class {self.default_class!r}; "
                    "rules must target a non-default class"
                )


@dataclass(frozen=True)
class PatientRecord:
    record_id: str
    features: Mapping[str, float]


@dataclass(frozen=True)
class Prediction:
    record_id: str
    class_label: str
    fired_rule: str | None


_KEYWORDS = {"RULE", "IF", "AND", "THEN", "DEFAULT"}
_BARE_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class _LineTokens:
    """Tokenizer for one DSL line, tracking 1-based columns for errors."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.line_no = line_no
        self.pos = 0

    def error(self, message: str, column: int | None = None) -> RuleSyntaxError:
        return RuleSyntaxError(message, self.line_no, (self.pos if column is None else column) + 1)

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> tuple[str, str] | None:
        """Return (kind, value) of the next token without consuming it."""
        self._skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] == "#":
            return None
        ch = self.text[self.pos]
        if ch == '"':
            end = self.text.find('"', self.pos + 1)
            if end < 0:
                raise self.error("unterminated quoted name")
            return ("quoted", self.text[self.pos + 1 : end])
        if ch in "<>":
            if self.text[self.pos : self.pos + 2] in ("<=", ">="):
                return ("op", self.text[self.pos : self.pos + 2])
            raise self.error(f"unknown comparator {ch!r}; only <= and >= exist")
        if ch == ":":
            return ("colon", ":")
        m = _NUMBER.match(self.text, self.pos)
        if m and (ch.isdigit() or ch in "+-."):
            return ("number", m.group())
        m = _BARE_NAME.match(self.text, self.pos)
        if m:
            return ("word", m.group())
        raise self.error(f"unexpected character {ch!r}")

    def take(self) -> tuple[str, str]:
        token = self.peek()
        if token is None:
            raise self.error("unexpected end of line")
        kind, value = token
        self._skip_ws()
        self.pos += len(value) + (2 if kind == "quoted" else 0)
        return kind, value

    def expect_keyword(self, keyword: str) -> None:
        self._skip_ws()
        column = self.pos
        token = self.peek()
        if token is None or token[0] != "word" or token[1].upper() != keyword:
            got = "end of line" if token is None else repr(token[1])
            raise self.error(f"expected {keyword}, got {got}", column)
        self.take()

    def at_end(self) -> bool:
        return self.peek() is None


def _parse_name(tokens: _LineTokens, what: str) -> str:
    tokens._skip_ws()
    column = tokens.pos
    token = tokens.peek()
    if token is None:
        raise tokens.error(f"expected {what}, got end of line", column)
    kind, value = token
    if kind == "quoted":
        tokens.take()
        if not value:
            raise tokens.error(f"{what} must be non-empty", column)
        return value
    if kind == "word" and value.upper() not in _KEYWORDS:
        tokens.take()
        return value
    raise tokens.error(f"expected {what}, got {value!r}", column)


def _parse_condition(tokens: _LineTokens) -> Condition:
    feature = _parse_name(tokens, "feature name")
    tokens._skip_ws()
    column = tokens.pos
    token = tokens.peek()
    if token is None or token[0] != "op":
        got = "end of line" if token is None else repr(token[1])
        raise tokens.error(f"expected <= or >=, got {got}", column)
    op = Comparator(tokens.take()[1])
    tokens._skip_ws()
    column = tokens.pos
    token = tokens.peek()
    if token is None or token[0] != "number":
        got = "end of line" if token is None else repr(token[1])
        raise tokens.error(f"expected a number, got {got}", column)
    literal = tokens.take()[1]
    threshold = float(literal)
    if threshold in (float("inf"), float("-inf")):
        raise tokens.error(f"threshold {literal!r} overflows", column)
    return Condition(feature, op, threshold)


def parse_rules(source: str) -> RuleSet:
    """Parse DSL text into a RuleSet; pretty-printing the result round-trips."""
    rules: list[Rule] = []
    seen_ids: set[str] = set()
    default_class: str | None = None
    default_line = 0

    for line_no, raw in enumerate(source.splitlines(), start=1):
        tokens = _LineTokens(raw, line_no)
        head = tokens.peek()
        if head is None:
            continue
        if head[0] != "word" or head[1].upper() not in ("RULE", "DEFAULT"):
            raise tokens.error(f"expected RULE or DEFAULT, got {head[1]!r}")
        keyword = tokens.take()[1].upper()

        if keyword == "DEFAULT":
            if default_class is not None:
                raise tokens.error(f"duplicate DEFAULT (first on line {default_line})")
            default_class = _parse_name(tokens, "class label")
            default_line = line_no
            if not tokens.at_end():
                raise tokens.error(f"unexpected trailing {tokens.peek()[1]!r} after DEFAULT")
            continue

        rule_id = _parse_name(tokens, "rule id")
        if rule_id in seen_ids:
            raise DuplicateRuleId(rule_id)
        seen_ids.add(rule_id)
        tokens._skip_ws()
        if tokens.peek() != ("colon", ":"):
            raise tokens.error("expected ':' after the rule id")
        tokens.take()
        tokens.expect_keyword("IF")
        conditions = [_parse_condition(tokens)]
        while True:
            tokens._skip_ws()
            column = tokens.pos
            token = tokens.peek()
            if token is None:
                raise tokens.error("expected AND or THEN, got end of line", column)
            if token[0] == "word" and token[1].upper() == "AND":
                tokens.take()
                conditions.append(_parse_condition(tokens))
                continue
            if token[0] == "word" and token[1].upper() == "THEN":
                tokens.take()
                break
            raise tokens.error(f"expected AND or THEN, got {token[1]!r}", column)
        class_label = _parse_name(tokens, "class label")
        if not tokens.at_end():
            raise tokens.error(f"unexpected trailing {tokens.peek()[1]!r} after the class label")
        rules.append(Rule(rule_id, tuple(conditions), class_label))

    if default_class is None:
        raise MissingDefault()
    return RuleSet(tuple(rules), default_class)


def _render_name(name: str) -> str:
    if _BARE_NAME.fullmatch(name) and name.upper() not in _KEYWORDS:
        return name
    return f'"{name}"'


def render_rules(rules: RuleSet) -> str:
    """Canonical DSL text: rules in order, DEFAULT last, repr'd thresholds."""
    lines = []
    for rule in rules.rules:
        body = " AND ".join(
            f"{_render_name(c.feature)} {c.comparator.value} {c.threshold!r}" for c in rule.conditions
        )
        lines.append(f"RULE {_render_name(rule.rule_id)}: IF {body} THEN {_render_name(rule.class_label)}")
    lines.append(f"DEFAULT {_render_name(rules.default_class)}")
    return "\n".join(lines) + "\n"


def _check_features(rule: Rule, record: PatientRecord) -> None:
    for condition in rule.conditions:
        if condition.feature not in record.features:
            raise MissingFeature(condition.feature, rule.rule_id)


def classify(rules: RuleSet, record: PatientRecord) -> Prediction:
    """First rule whose every condition holds fires; otherwise the default class."""
    for rule in rules.rules:
        _check_features(rule, record)
        if all(c.holds(record.features[c.feature]) for c in rule.conditions):
            return Prediction(record.record_id, rule.class_label, rule.rule_id)
    return Prediction(record.record_id, rules.default_class, None)


@dataclass(frozen=True)
class ConditionEvaluation:
    condition: Condition
    actual: float
    holds: bool


@dataclass(frozen=True)
class RuleEvaluation:
    rule_id: str
    class_label: str
    conditions: tuple[ConditionEvaluation, ...]
    fires: bool


def explain(rules: RuleSet, record: PatientRecord) -> tuple[RuleEvaluation, ...]:
    """Evaluate every rule condition-by-condition for side-by-side display."""
    evaluations = []
    for rule in rules.rules:
        _check_features(rule, record)
        evaluated = tuple(
            ConditionEvaluation(c, record.features[c.feature], c.holds(record.features[c.feature]))
            for c in rule.conditions
        )
        evaluations.append(
            RuleEvaluation(rule.rule_id, rule.class_label, evaluated, all(e.holds for e in evaluated))
        )
    return tuple(evaluations)
