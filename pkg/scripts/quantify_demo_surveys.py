#!/usr/bin/env python3
"""Quantify trust for the bundled demo surveys and print the comparison table.

The four bundled surveys are illustrative mental models, so the absolute
trust numbers are properties of the demo data; the band pattern they are
designed to produce is Trust / Distrust / Trust / Ignorance.
"""
from __future__ import annotations

import sys
from pathlib import Path

from fcmtrust import InferenceConfig, quantify_trust
from fcmtrust import documents as docs

SURVEY_DIR = Path(__file__).resolve().parent.parent / "data" / "surveys"


def main() -> int:
    config = InferenceConfig()
    reports = []
    for path in sorted(SURVEY_DIR.glob("*.survey.json")):
        survey = docs.survey_from_document(docs.read_document(path))
        reports.append(quantify_trust(survey, config))
    if not reports:
        print(f"no surveys found under {SURVEY_DIR}", file=sys.stderr)
        return 1
    print(docs.summary_table(reports), end="")

    print("\ntrust continuum ([-1, 1], markers at -0.5, 0, +0.5):")
    width = 61
    for report in reports:
        position = round((report.trust_value + 1.0) / 2.0 * (width - 1))
        axis = ["-"] * width
        for value in (-0.5, 0.0, 0.5):
            axis[round((value + 1.0) / 2.0 * (width - 1))] = "|"
        axis[position] = "*"
        print(f"  {report.expert_id:>4}  [{''.join(axis)}]  {report.trust_value:+.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
