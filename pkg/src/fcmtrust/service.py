"""Local HTTP facade over the engine, for interactive tooling.

Every endpoint is a pure function of its request body: there is no session
state, so concurrent requests are safe and produce exactly what sequential
execution would.  Responses reuse the same serialization path as the CLI,
so the two emit byte-identical documents for identical inputs.

This is an elicitation workbench, not a deployment target: the server binds
to loopback and refuses other interfaces unless explicitly overridden.

Endpoints (JSON in, JSON out):

    GET  /scales            built-in linguistic scales with crisp values
    POST /survey/validate   {survey doc}                 -> validation result
    POST /trust             {survey doc} or {"survey":.., "config":..,
                            "trust_initial":..}          -> trust report
    POST /fcm/step          {"model":.., "state":..}     -> next state
    POST /fcm/run           {"model":.., "initial":..,
                            "config":..}                 -> outcome with trace
    POST /rules/classify    {"rules": dsl, "records":[..],
                            "explain": bool}             -> predictions
"""
from __future__ import annotations

import ipaddress
import json
import socket
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any, Callable, Mapping

from . import documents
from .errors import FcmTrustError, InvalidConfig, MalformedDocument
from .fcm import InferenceConfig, run_inference, step, validate_model
from .rules import PatientRecord, classify, explain, parse_rules
from .trust import quantify_trust, validate_survey

DEFAULT_PORT = 8760


def _survey_request(body: Mapping[str, Any]):
    """Accept either a bare survey document or a {"survey": ..} wrapper."""
    if "survey" in body:
        survey = documents.survey_from_document(body["survey"])
        config = documents.config_from_document(body.get("config", {}))
        trust_initial = body.get("trust_initial", 0.0)
        if not isinstance(trust_initial, (int, float)) or isinstance(trust_initial, bool):
            raise MalformedDocument(f"trust_initial must be a number, got {trust_initial!r}")
        strict = bool(body.get("strict_labels", False))
        return survey, config, float(trust_initial), strict
    return documents.survey_from_document(body), InferenceConfig(), 0.0, False


def handle_scales(_body: Mapping[str, Any] | None = None) -> dict:
    from .fuzzy import BUILTIN_SCALES

    return {
        "format": "fcm-trust/scales",
        "version": documents.FORMAT_VERSION,
        "scales": [documents.scale_to_document(s) for s in BUILTIN_SCALES.values()],
    }


def handle_survey_validate(body: Mapping[str, Any]) -> dict:
    errors = []
    try:
        survey, _, _, strict = _survey_request(body)
        validate_survey(survey, strict_labels=strict)
    except FcmTrustError as exc:
        errors.append({"error": type(exc).__name__, "message": str(exc)})
    return {
        "format": "fcm-trust/validation",
        "version": documents.FORMAT_VERSION,
        "valid": not errors,
        "errors": errors,
    }


def handle_trust(body: Mapping[str, Any]) -> dict:
    survey, config, trust_initial, strict = _survey_request(body)
    report = quantify_trust(survey, config, trust_initial=trust_initial, strict_labels=strict)
    return documents.report_to_document(report, config)


def _load_model(body: Mapping[str, Any]):
    model = documents.model_from_document(body.get("model", {}))
    violations = validate_model(model)
    if violations:
        raise MalformedDocument("invalid model: " + "; ".join(violations))
    return model


def handle_fcm_step(body: Mapping[str, Any]) -> dict:
    model = _load_model(body)
    state = documents.state_from_document(body.get("state", {}), model)
    return documents.state_to_document(step(model, state), model)


def handle_fcm_run(body: Mapping[str, Any]) -> dict:
    model = _load_model(body)
    initial = documents.state_from_document(body.get("initial", {}), model)
    config = documents.config_from_document(body.get("config", {}))
    outcome = run_inference(model, initial, config)
    return documents.outcome_to_document(outcome, model, config)


def handle_rules_classify(body: Mapping[str, Any]) -> dict:
    source = body.get("rules")
    if not isinstance(source, str):
        raise MalformedDocument("'rules' must be the DSL source text")
    rules = parse_rules(source)
    raw_records = body.get("records")
    if not isinstance(raw_records, list):
        raise MalformedDocument("'records' must be a list of {record_id, features} objects")
    records = []
    for entry in raw_records:
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("record_id"), str)
            or not isinstance(entry.get("features"), dict)
        ):
            raise MalformedDocument(f"record entries need 'record_id' and 'features': {entry!r}")
        features = {}
        for name, value in entry["features"].items():
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise MalformedDocument(f"feature {name!r} of {entry['record_id']!r} must be a number")
            features[str(name)] = float(value)
        records.append(PatientRecord(entry["record_id"], features))

    predictions = []
    explanations = []
    for record in records:
        prediction = classify(rules, record)
        predictions.append(
            {
                "record_id": prediction.record_id,
                "class": prediction.class_label,
                "fired_rule": prediction.fired_rule,
            }
        )
        if body.get("explain"):
            explanations.append(
                {
                    "record_id": record.record_id,
                    "rules": [
                        {
                            "rule_id": ev.rule_id,
                            "class": ev.class_label,
                            "fires": ev.fires,
                            "conditions": [
                                {
                                    "feature": ce.condition.feature,
                                    "comparator": ce.condition.comparator.value,
                                    "threshold": ce.condition.threshold,
                                    "actual": ce.actual,
                                    "holds": ce.holds,
                                }
                                for ce in ev.conditions
                            ],
                        }
                        for ev in explain(rules, record)
                    ],
                }
            )
    doc = {
        "format": documents.PREDICTIONS_FORMAT,
        "version": documents.FORMAT_VERSION,
        "predictions": predictions,
    }
    if body.get("explain"):
        doc["explanations"] = explanations
    return doc


POST_ROUTES: dict[str, Callable[[Mapping[str, Any]], dict]] = {
    "/survey/validate": handle_survey_validate,
    "/trust": handle_trust,
    "/fcm/step": handle_fcm_step,
    "/fcm/run": handle_fcm_run,
    "/rules/classify": handle_rules_classify,
}

GET_ROUTES: dict[str, Callable[[Mapping[str, Any] | None], dict]] = {
    "/scales": handle_scales,
}


def _error_document(name: str, message: str) -> dict:
    return {
        "format": documents.ERROR_FORMAT,
        "version": documents.FORMAT_VERSION,
        "error": name,
        "message": message,
    }


class _Handler(BaseHTTPRequestHandler):
    server_version = "fcmtrust"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default; tests capture stdout
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    def _send(self, status: int, payload: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(payload)

    def _send_document(self, status: int, doc: Mapping[str, Any]) -> None:
        self._send(status, documents.to_json_bytes(doc))

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        handler = GET_ROUTES.get(self.path)
        if handler is None:
            self._send_document(404, _error_document("NotFound", f"no route {self.path!r}"))
            return
        self._send_document(200, handler(None))

    def do_POST(self):
        # consume the body before routing so keep-alive connections stay in sync
        length = int(self.headers.get("Content-Length", "0"))
        raw = self.rfile.read(length)
        handler = POST_ROUTES.get(self.path)
        if handler is None:
            self._send_document(404, _error_document("NotFound", f"no route {self.path!r}"))
            return
        try:
            body = json.loads(raw.decode("utf-8")) if raw else {}
            if not isinstance(body, dict):
                raise json.JSONDecodeError("expected a JSON object", "", 0)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            self._send_document(400, _error_document("BadRequest", f"request body is not a JSON object: {exc}"))
            return
        try:
            self._send_document(200, handler(body))
        except FcmTrustError as exc:
            self._send_document(422, _error_document(type(exc).__name__, str(exc)))
        except Exception as exc:  # pragma: no cover - defensive
            self._send_document(500, _error_document("Internal", f"{type(exc).__name__}: {exc}"))


def _is_loopback(host: str) -> bool:
    if host in ("localhost", ""):
        return True
    try:
        return ipaddress.ip_address(host).is_loopback
    except ValueError:
        try:
            resolved = socket.gethostbyname(host)
        except OSError:
            return False
        return ipaddress.ip_address(resolved).is_loopback


def create_server(
    host: str = "127.0.0.1", port: int = DEFAULT_PORT, allow_remote: bool = False, verbose: bool = False
) -> ThreadingHTTPServer:
    """Bind the service; non-loopback hosts need ``allow_remote``."""
    if not allow_remote and not _is_loopback(host):
        raise InvalidConfig(
            f"refusing to bind non-loopback address {host!r} without --allow-remote"
        )
    server = ThreadingHTTPServer((host, port), _Handler)
    server.verbose = verbose
    return server


def serve(host: str = "127.0.0.1", port: int = DEFAULT_PORT, allow_remote: bool = False) -> None:
    server = create_server(host, port, allow_remote, verbose=True)
    # flush so supervisors reading a pipe see the bound port immediately
    print(f"fcmtrust service listening on http://{host}:{server.server_address[1]}/", flush=True)
    try:
        server.serve_forever()
    finally:
        server.server_close()
