"""Triangular fuzzy numbers, linguistic scales and Mean-of-Maxima defuzzification.

The two scales every survey uses ship as module constants: ``RATING_SCALE``
(five agreement terms on [0, 1]) and ``INFLUENCE_SCALE`` (five signed
influence-strength terms on [-1, 1]).  Scales are data, not code: arbitrary
scales load from documents with the same term structure, and their crisp
values are always recomputed, never read from the file.

Everything here is immutable and pure; sharing across threads is safe.
"""
from __future__ import annotations

import difflib
import math
from dataclasses import dataclass

from .errors import UnknownLabel


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Hat-shaped membership function with support [a, c] and peak at b."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for corner in (self.a, self.b, self.c):
            if not math.isfinite(corner):
                raise ValueError(f"triangle corners must be finite, got ({self.a}, {self.b}, {self.c})")
        if not (self.a <= self.b <= self.c):
            raise ValueError(f"triangle corners must satisfy a <= b <= c, got ({self.a}, {self.b}, {self.c})")


def membership(tfn: TriangularFuzzyNumber, x: float) -> float:
    """Membership degree of ``x``: 0 outside [a, c], linear up to 1 at the peak.

    Degenerate edges (a == b or b == c) still evaluate to 1 at the shared
    point; the division below never sees a zero-width edge because those
    points are caught by the peak and support checks first.
    """
    if x < tfn.a or x > tfn.c:
        return 0.0
    if x == tfn.b:
        return 1.0
    if x < tfn.b:
        return (x - tfn.a) / (tfn.b - tfn.a)
    return (tfn.c - x) / (tfn.c - tfn.b)


def defuzzify_mom(tfn: TriangularFuzzyNumber) -> float:
    """Mean of Maxima: the mean of all abscissae attaining maximal membership.

    A triangle attains its maximum at the single point ``b``, so the value is
    returned symbolically with no discretization.  A flat-topped shape would
    defuzzify to its plateau midpoint, but no such shape is constructible
    from this type.
    """
    return tfn.b


@dataclass(frozen=True)
class ScaleTerm:
    label: str
    tfn: TriangularFuzzyNumber
    defuzzified: float


# Survey tools disagree on quoting; fold the common apostrophe variants.
_APOSTROPHES = str.maketrans({"‘": "'", "’": "'", "ʼ": "'"})


def normalize_label(label: str) -> str:
    """Case, whitespace and apostrophe-variant insensitive comparison key."""
    return " ".join(label.translate(_APOSTROPHES).split()).casefold()


@dataclass(frozen=True)
class LinguisticScale:
    """Named, ordered list of linguistic terms with their crisp values."""

    name: str
    terms: tuple[ScaleTerm, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for term in self.terms:
            key = normalize_label(term.label)
            if key in seen:
                raise ValueError(f"scale {self.name!r} has duplicate label {term.label!r}")
            seen.add(key)
            if term.defuzzified != defuzzify_mom(term.tfn):
                raise ValueError(
                    f"scale {self.name!r}: stored crisp value {term.defuzzified!r} for "
                    f"{term.label!r} disagrees with Mean of Maxima {defuzzify_mom(term.tfn)!r}"
                )

    @classmethod
    def from_pairs(cls, name: str, pairs) -> "LinguisticScale":
        """Build a scale from (label, (a, b, c)) pairs, computing crisp values."""
        terms = []
        for label, corners in pairs:
            tfn = TriangularFuzzyNumber(*corners)
            terms.append(ScaleTerm(label, tfn, defuzzify_mom(tfn)))
        return cls(name, tuple(terms))

    def labels(self) -> tuple[str, ...]:
        return tuple(term.label for term in self.terms)


def lookup_term(scale: LinguisticScale, label: str, strict: bool = False) -> ScaleTerm:
    """Resolve a label to its term.

    Comparison is case-insensitive, whitespace-normalized and apostrophe-variant
    tolerant unless ``strict`` asks for exact string equality.  Raises
    :class:`UnknownLabel` carrying the nearest candidates otherwise.
    """
    if strict:
        for term in scale.terms:
            if term.label == label:
                return term
    else:
        key = normalize_label(label)
        for term in scale.terms:
            if normalize_label(term.label) == key:
                return term
    by_key = {normalize_label(term.label): term.label for term in scale.terms}
    close = difflib.get_close_matches(normalize_label(label), list(by_key), n=3, cutoff=0.4)
    raise UnknownLabel(label, scale.name, [by_key[k] for k in close])


RATING_SCALE = LinguisticScale.from_pairs(
    "rating",
    [
        ("I disagree strongly", (0.0, 0.0, 0.25)),
        ("I disagree somewhat", (0.0, 0.25, 0.5)),
        ("I'm neutral about it", (0.25, 0.5, 0.75)),
        ("I agree somewhat", (0.5, 0.75, 1.0)),
        ("I agree strongly", (0.75, 1.0, 1.0)),
    ],
)

INFLUENCE_SCALE = LinguisticScale.from_pairs(
    "influence",
    [
        ("Inversely high", (-1.0, -1.0, -0.5)),
        ("Inversely low", (-1.0, -0.5, 0.0)),
        ("No influence", (-0.5, 0.0, 0.5)),
        ("Directly low", (0.0, 0.5, 1.0)),
        ("Directly high", (0.5, 1.0, 1.0)),
    ],
)

BUILTIN_SCALES = {scale.name: scale for scale in (RATING_SCALE, INFLUENCE_SCALE)}
