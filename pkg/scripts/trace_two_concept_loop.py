#!/usr/bin/env python3
"""Explore how the termination verdict of the two-concept loop fixture depends
on the tolerance and the iteration budget.

The fixture couples two concepts head-to-tail with opposite signs, which makes
the state spiral slowly toward the origin.  Short horizons read NonConvergent;
once the spiral's quarter-turn recurrence tightens below the tolerance the
verdict becomes LimitCycle(4) (the radius shrinks cubically per turn, far
faster than consecutive states approach each other, so a FixedPoint verdict
would need a vastly longer run).
"""
from __future__ import annotations

from pathlib import Path

from fcmtrust import InferenceConfig, run_inference
from fcmtrust import documents as docs

DATA = Path(__file__).resolve().parent.parent / "data"


def main() -> int:
    model = docs.model_from_document(docs.read_document(DATA / "models" / "two_concept_loop.json"))
    initial = docs.state_from_document(
        docs.read_document(DATA / "states" / "two_concept_loop.initial.json"), model
    )

    print(f"{'epsilon':>10}  {'max_iter':>8}  {'verdict':<16} {'iterations':>10}  final state")
    for epsilon in (1e-3, 1e-5, 1e-8):
        for max_iterations in (50, 100, 1000, 5000):
            config = InferenceConfig(
                epsilon=epsilon, max_iterations=max_iterations, cycle_window=min(50, max_iterations)
            )
            outcome = run_inference(model, initial, config)
            kind = outcome.kind.value + (f"({outcome.period})" if outcome.period else "")
            state = ", ".join(f"{v:+.6f}" for v in outcome.final_state.values)
            print(
                f"{epsilon:>10g}  {max_iterations:>8}  {kind:<16} {len(outcome.trace) - 1:>10}  ({state})"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
