#!/usr/bin/env python3
"""Classify the bundled blood-panel records and show why each rule fired or not."""
from __future__ import annotations

from pathlib import Path

from fcmtrust import classify, explain, parse_rules
from fcmtrust.documents import patients_from_csv

DATA = Path(__file__).resolve().parent.parent / "data"


def main() -> int:
    rules = parse_rules((DATA / "rules" / "blood_panel.rules").read_text(encoding="utf-8"))
    records = patients_from_csv((DATA / "patients" / "blood_panel.csv").read_text(encoding="utf-8"))

    for record in records:
        prediction = classify(rules, record)
        fired = f"via {prediction.fired_rule}" if prediction.fired_rule else "by default"
        print(f"{record.record_id}: {prediction.class_label} ({fired})")
        for evaluation in explain(rules, record):
            holds = sum(ce.holds for ce in evaluation.conditions)
            print(f"  {evaluation.rule_id}: {holds}/{len(evaluation.conditions)} conditions hold")
            for ce in evaluation.conditions:
                mark = "+" if ce.holds else "-"
                c = ce.condition
                print(f"    {mark} {c.feature} {c.comparator.value} {c.threshold:g} (actual {ce.actual:g})")
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
