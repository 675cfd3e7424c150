"""Signed-digraph concept model and its deterministic reasoning iteration.

Each step recomputes every concept from the weighted activations of the
*other* concepts (there is no self-memory term) and squashes the sum through
the activation function.  Weights are stored row-major as source -> target:
``weights[j][i]`` is the influence of concept ``j`` on concept ``i``.

Determinism contract: the weighted sum accumulates in increasing source
index order, so identical inputs reproduce traces bit-for-bit on one
platform.  Keep that order intact when touching :func:`step`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DimensionMismatch, InvalidConfig, OutOfRange


class Activation(Enum):
    TANH = "tanh"
    SIGMOID = "sigmoid"


def activate(fn: Activation, x: float) -> float:
    """Squash ``x`` into (-1, 1) for tanh or (0, 1) for the logistic sigmoid.

    Total on all finite inputs; the sigmoid is evaluated in its
    overflow-free form on the negative half-line.
    """
    if fn is Activation.TANH:
        return math.tanh(x)
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


@dataclass(frozen=True)
class Concept:
    id: str
    label: str = ""


@dataclass(frozen=True)
class FcmModel:
    """Concept list plus N x N signed weight matrix, immutable and shareable."""

    concepts: tuple[Concept, ...]
    weights: tuple[tuple[float, ...], ...]
    activation: Activation = Activation.TANH

    def __post_init__(self) -> None:
        object.__setattr__(self, "concepts", tuple(self.concepts))
        object.__setattr__(self, "weights", tuple(tuple(float(w) for w in row) for row in self.weights))
        n = len(self.concepts)
        if len(self.weights) != n or any(len(row) != n for row in self.weights):
            raise ValueError(f"weight matrix must be {n}x{n} to match the concept list")

    @property
    def size(self) -> int:
        return len(self.concepts)

    def concept_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.concepts)

    def index_of(self, concept_id: str) -> int:
        for i, c in enumerate(self.concepts):
            if c.id == concept_id:
                return i
        raise KeyError(concept_id)

    def weight(self, source_id: str, target_id: str) -> float:
        return self.weights[self.index_of(source_id)][self.index_of(target_id)]


@dataclass(frozen=True)
class StateVector:
    """Concept activations at one iteration."""

    values: tuple[float, ...]
    iteration: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))


@dataclass(frozen=True)
class InferenceConfig:
    epsilon: float = 1e-5
    max_iterations: int = 100
    cycle_window: int = 50

    def __post_init__(self) -> None:
        if not (0.0 < self.epsilon < 1.0):
            raise InvalidConfig(f"epsilon must be in (0, 1), got {self.epsilon!r}")
        if self.max_iterations < 1:
            raise InvalidConfig(f"max_iterations must be positive, got {self.max_iterations!r}")
        if self.cycle_window < 1:
            raise InvalidConfig(f"cycle_window must be positive, got {self.cycle_window!r}")
        if self.cycle_window > self.max_iterations:
            raise InvalidConfig(
                f"cycle_window ({self.cycle_window}) must not exceed max_iterations ({self.max_iterations})"
            )


class OutcomeKind(Enum):
    FIXED_POINT = "FixedPoint"
    LIMIT_CYCLE = "LimitCycle"
    NON_CONVERGENT = "NonConvergent"


@dataclass(frozen=True)
class InferenceOutcome:
    """Terminal classification of a run with its full iteration trace.

    ``trace[0]`` is the supplied initial vector; ``period`` is set only for
    limit cycles.  NonConvergent stands in for chaotic behaviour: chaos
    cannot be certified from a finite trace.
    """

    kind: OutcomeKind
    final_state: StateVector
    trace: tuple[StateVector, ...]
    period: int | None = None


def step(model: FcmModel, state: StateVector) -> StateVector:
    """One synchronous update of every concept; the input state is untouched."""
    n = model.size
    if len(state.values) != n:
        raise DimensionMismatch(f"state has {len(state.values)} values but the model has {n} concepts")
    values = state.values
    weights = model.weights
    fn = model.activation
    nxt = []
    for i in range(n):
        acc = 0.0
        for j in range(n):
            if j != i:
                acc += values[j] * weights[j][i]
        nxt.append(activate(fn, acc))
    return StateVector(tuple(nxt), state.iteration + 1)


def _block_period(states: list[tuple[float, ...]], epsilon: float, window: int) -> int | None:
    # Smallest p >= 2 such that the last p states repeat the previous p states
    # componentwise within epsilon; both blocks must lie inside the trace and
    # the matched earlier state must be within the last `window` iterations.
    k = len(states) - 1
    n = len(states[0])
    for p in range(2, min(window, (k + 1) // 2) + 1):
        matched = True
        for t in range(p):
            a = states[k - t]
            b = states[k - t - p]
            for c in range(n):
                if not abs(a[c] - b[c]) < epsilon:
                    matched = False
                    break
            if not matched:
                break
        if matched:
            return p
    return None


def run_inference(
    model: FcmModel, initial: StateVector, config: InferenceConfig | None = None
) -> InferenceOutcome:
    """Iterate :func:`step` until a fixed point, a limit cycle, or the horizon.

    Fixed point: consecutive states within ``epsilon`` in max-norm (a period-1
    recurrence therefore always reads as a fixed point).  Limit cycle: the
    newest state closes a repeating block of period >= 2 inside
    ``cycle_window``.  Otherwise NonConvergent at ``max_iterations``.
    """
    if config is None:
        config = InferenceConfig()
    n = model.size
    if len(initial.values) != n:
        raise DimensionMismatch(
            f"initial state has {len(initial.values)} values but the model has {n} concepts"
        )
    for i, v in enumerate(initial.values):
        if not (-1.0 <= v <= 1.0):
            raise OutOfRange(f"initial activation {v!r} of concept {model.concepts[i].id!r} outside [-1, 1]")

    trace: list[StateVector] = [StateVector(initial.values, 0)]
    states: list[tuple[float, ...]] = [trace[0].values]
    epsilon = config.epsilon
    for _ in range(config.max_iterations):
        nxt = step(model, trace[-1])
        prev = states[-1]
        trace.append(nxt)
        states.append(nxt.values)
        if max(abs(a - b) for a, b in zip(nxt.values, prev)) < epsilon:
            return InferenceOutcome(OutcomeKind.FIXED_POINT, nxt, tuple(trace))
        period = _block_period(states, epsilon, config.cycle_window)
        if period is not None:
            return InferenceOutcome(OutcomeKind.LIMIT_CYCLE, nxt, tuple(trace), period=period)
    return InferenceOutcome(OutcomeKind.NON_CONVERGENT, trace[-1], tuple(trace))


def productive_iterations(trace: tuple[StateVector, ...], epsilon: float) -> int:
    """Count of steps that actually moved the state (max-norm >= epsilon)."""
    count = 0
    for prev, nxt in zip(trace, trace[1:]):
        if max(abs(a - b) for a, b in zip(prev.values, nxt.values)) >= epsilon:
            count += 1
    return count


def validate_model(model: FcmModel) -> list[str]:
    """Report every invariant violation; an empty list means the model is valid.

    Never raises: diagnostics for files and UIs go through here before the
    engine is allowed to run.
    """
    violations: list[str] = []
    if model.size == 0:
        violations.append("model has no concepts")
    seen: set[str] = set()
    for concept in model.concepts:
        if concept.id in seen:
            violations.append(f"duplicate concept id {concept.id!r}")
        seen.add(concept.id)
    for j, row in enumerate(model.weights):
        for i, w in enumerate(row):
            if j == i:
                if w != 0.0:
                    violations.append(f"nonzero diagonal at concept {model.concepts[i].id!r} (index {i})")
            elif not (-1.0 <= w <= 1.0):
                violations.append(
                    f"weight out of [-1,1] at {model.concepts[j].id!r}->{model.concepts[i].id!r}: {w!r}"
                )
    return violations
