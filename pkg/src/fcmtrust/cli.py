"""Command-line entry points.

    fcmtrust trust-quantify SURVEY.json [...] --out DIR
    fcmtrust fcm-run MODEL.json --initial STATE.json --out DIR
    fcmtrust rules-classify RULES.rules PATIENTS.csv [--explain]
    fcmtrust serve [--port P]

Exit codes are stable for scripting: 0 success, 2 input error, 3 I/O
failure, 4 internal invariant breach.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import documents, service
from .errors import FcmTrustError
from .fcm import Activation, InferenceConfig, productive_iterations, run_inference, validate_model
from .rules import classify, explain, parse_rules
from .trust import quantify_trust, validate_survey

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--epsilon", type=float, default=1e-5, help="fixed-point tolerance (default 1e-5)")
    parser.add_argument("--max-iter", type=int, default=100, help="iteration budget (default 100)")
    parser.add_argument(
        "--cycle-window", type=int, default=None,
        help="limit-cycle search window (default min(50, --max-iter))",
    )


def _config_from_args(args: argparse.Namespace) -> InferenceConfig:
    window = args.cycle_window if args.cycle_window is not None else min(50, args.max_iter)
    return InferenceConfig(epsilon=args.epsilon, max_iterations=args.max_iter, cycle_window=window)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fcmtrust",
        description="Concept-map trust quantification, inference and rule classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trust-quantify", help="quantify trust for one or more survey files")
    p.add_argument("surveys", nargs="*", help="survey document paths")
    p.add_argument("--out", default=".", help="directory for report documents and the summary")
    p.add_argument("--strict-labels", action="store_true", help="require exact label matches")
    p.add_argument("--trust-initial", type=float, default=0.0, help="initial trust activation (default 0)")
    _add_config_flags(p)

    p = sub.add_parser("fcm-run", help="run inference on a model file")
    p.add_argument("model", help="model document path")
    p.add_argument("--initial", required=True, help="initial-state document path")
    p.add_argument("--activation", choices=["tanh", "sigmoid"], help="override the model's activation")
    p.add_argument("--out", default=".", help="directory for the trace and outcome files")
    _add_config_flags(p)

    p = sub.add_parser("rules-classify", help="classify patient records with a rule file")
    p.add_argument("rules", help="rule DSL path")
    p.add_argument("patients", help="patients CSV path (record_id first column)")
    p.add_argument("--explain", action="store_true", help="print per-condition evaluations")
    p.add_argument("--out", help="optionally write predictions.csv to this directory")

    p = sub.add_parser("serve", help="start the local HTTP service")
    p.add_argument("--host", default="127.0.0.1", help="bind address (loopback unless --allow-remote)")
    p.add_argument("--port", type=int, default=service.DEFAULT_PORT)
    p.add_argument("--allow-remote", action="store_true", help="permit non-loopback bind addresses")

    return parser


def cmd_trust_quantify(args: argparse.Namespace) -> int:
    if not args.surveys:
        print("error: no surveys given", file=sys.stderr)
        return EXIT_INPUT
    config = _config_from_args(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    reports = []
    for path in args.surveys:
        try:
            survey = documents.survey_from_document(documents.read_document(path))
            validate_survey(survey, strict_labels=args.strict_labels)
            report = quantify_trust(
                survey,
                config,
                trust_initial=args.trust_initial,
                strict_labels=args.strict_labels,
            )
        except FcmTrustError as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return EXIT_INPUT
        reports.append(report)
        documents.write_document(
            out_dir / (Path(path).stem + ".report.json"),
            documents.report_to_document(report, config),
        )
    table = documents.summary_table(reports)
    (out_dir / "summary.txt").write_text(table, encoding="utf-8")
    print(table, end="")
    return EXIT_OK


def cmd_fcm_run(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    model = documents.model_from_document(documents.read_document(args.model))
    if args.activation:
        model = dataclasses.replace(model, activation=Activation(args.activation))
    violations = validate_model(model)
    if violations:
        print(f"error: {args.model}: model is invalid:", file=sys.stderr)
        for violation in violations:
            print(f"  - {violation}", file=sys.stderr)
        return EXIT_INPUT
    initial = documents.state_from_document(documents.read_document(args.initial), model)
    outcome = run_inference(model, initial, config)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.model).stem
    (out_dir / f"{stem}.trace.csv").write_text(
        documents.trace_to_csv(outcome.trace, model.concept_ids()), encoding="utf-8"
    )
    documents.write_document(
        out_dir / f"{stem}.outcome.json", documents.outcome_to_document(outcome, model, config)
    )

    kind = outcome.kind.value + (f" (period {outcome.period})" if outcome.period else "")
    print(f"outcome: {kind}")
    print(
        f"iterations: {len(outcome.trace) - 1} "
        f"({productive_iterations(outcome.trace, config.epsilon)} productive)"
    )
    print("terminal state:")
    for concept, value in zip(model.concepts, outcome.final_state.values):
        print(f"  {concept.id}: {value!r}")
    return EXIT_OK


def cmd_rules_classify(args: argparse.Namespace) -> int:
    rules = parse_rules(Path(args.rules).read_text(encoding="utf-8"))
    records = documents.patients_from_csv(Path(args.patients).read_text(encoding="utf-8"))
    rows = [("record", "class", "fired_rule")]
    predictions = []
    for record in records:
        prediction = classify(rules, record)
        predictions.append(prediction)
        rows.append((prediction.record_id, prediction.class_label, prediction.fired_rule or "-"))
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    for row in rows:
        print("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())

    if args.explain:
        for record in records:
            print(f"\n{record.record_id}:")
            for evaluation in explain(rules, record):
                verdict = "fires" if evaluation.fires else "does not fire"
                print(f"  {evaluation.rule_id} -> {evaluation.class_label} ({verdict})")
                for ce in evaluation.conditions:
                    mark = "ok " if ce.holds else "FAIL"
                    c = ce.condition
                    print(f"    [{mark}] {c.feature} {c.comparator.value} {c.threshold!r} (actual {ce.actual!r})")

    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        lines = ["record_id,class,fired_rule"]
        lines += [f"{p.record_id},{p.class_label},{p.fired_rule or ''}" for p in predictions]
        (out_dir / "predictions.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    service.serve(host=args.host, port=args.port, allow_remote=args.allow_remote)
    return EXIT_OK


_COMMANDS = {
    "trust-quantify": cmd_trust_quantify,
    "fcm-run": cmd_fcm_run,
    "rules-classify": cmd_rules_classify,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FcmTrustError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except KeyboardInterrupt:
        return EXIT_OK
    except Exception as exc:  # pragma: no cover - invariant breach
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
