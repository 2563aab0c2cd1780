"""JSON interchange form of an SLA document.

The layout mirrors the document structure::

    {
      "title": ..., "id": ..., "application_type": ...,
      "start_date": "YYYY-MM-DD", "end_date": "YYYY-MM-DD",
      "parties":    [{"id", "name", "role"}, ...],
      "app_slos":   [{"id", "constraints": [...]}, ...],
      "activities": [{"id", "kind", "required_services": [...]}, ...],
      "services":   [{"id", "kind", "deployed_on", "slos": [...], "config": [...]}, ...],
      "resources":  [{"id", "kind", "slos": [...], "config": [...]}, ...]
    }

Constraints are ``{"metric", "comparator", "value", "unit"?}`` and config
entries ``{"term", "value", "unit"?}``.  A document holding objectives
whose target resolves to nothing also carries an ``"unattached_slos"``
array of ``{"id", "target", "constraints"}`` so nothing is lost.

Numbers are written with their exact decimal digits and read back as
Fractions, so values like 99.95 survive any number of round trips
unchanged.  Writing is done by a small emitter here rather than
``json.dumps`` precisely to keep control of number formatting; reading
uses the stdlib parser with Fraction number hooks.
"""

from __future__ import annotations

import json
import re
from datetime import date
from decimal import Decimal
from fractions import Fraction
from typing import Any

from .constraints import COMPARATORS, TypedValue, decimal_repr
from .errors import DomainError, DuplicateIdError, SchemaViolationError
from .model import (
    ACTIVITY_KINDS,
    APP_TARGET,
    PARTY_ROLES,
    RESOURCE_KINDS,
    SERVICE_KINDS,
    ConfigParam,
    InfraResourceSpec,
    MetricConstraint,
    Party,
    ServiceSpec,
    SlaDocument,
    Slo,
    WorkflowActivity,
    build_document,
)
from .parser import KEYWORDS

__all__ = ["to_interchange", "from_interchange", "emit_json"]

_IDENT_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


# -- writing -----------------------------------------------------------------

_STR_ESCAPES = {
    '"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t",
    "\b": "\\b", "\f": "\\f",
}


def _emit_str(value: str) -> str:
    out = ['"']
    for char in value:
        if char in _STR_ESCAPES:
            out.append(_STR_ESCAPES[char])
        elif ord(char) < 0x20:
            out.append(f"\\u{ord(char):04x}")
        else:
            out.append(char)
    out.append('"')
    return "".join(out)


def _emit(value: Any, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction)):
        try:
            return decimal_repr(value)
        except DomainError:
            # No finite decimal form (e.g. a mean of 4/3): fall back to a
            # string so the output stays valid JSON and stays exact.
            frac = Fraction(value)
            return _emit_str(f"{frac.numerator}/{frac.denominator}")
    if isinstance(value, str):
        return _emit_str(value)
    if isinstance(value, date):
        return _emit_str(value.isoformat())
    if isinstance(value, list):
        if not value:
            return "[]"
        parts = [f"{inner}{_emit(item, indent + 1)}" for item in value]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [
            f"{inner}{_emit_str(key)}: {_emit(item, indent + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    raise TypeError(f"cannot emit {type(value).__name__} as JSON")


def emit_json(value: Any) -> str:
    """Render a report structure as JSON with exact numbers.

    Accepts the usual JSON shapes plus Fraction and date.  Fractions print
    their exact decimal digits; ones with no finite decimal form become
    ``"n/d"`` strings rather than rounded floats.
    """
    return _emit(value, 0)


def _value_fields(value: TypedValue) -> dict:
    if value.tag == "numeric":
        fields: dict[str, Any] = {"value": value.magnitude}
        if value.unit is not None:
            fields["unit"] = value.unit
        return fields
    if value.tag == "boolean":
        return {"value": value.value}
    # text and enumerated both become JSON strings
    return {"value": value.value}


def _constraint_dict(constraint: MetricConstraint) -> dict:
    return {
        "metric": constraint.metric,
        "comparator": constraint.comparator,
        **_value_fields(constraint.value),
    }


def _slo_dict(slo: Slo, with_target: bool = False) -> dict:
    data: dict[str, Any] = {"id": slo.id}
    if with_target:
        data["target"] = slo.target
    data["constraints"] = [_constraint_dict(c) for c in slo.constraints]
    return data


def _config_dict(param: ConfigParam) -> dict:
    return {"term": param.term, **_value_fields(param.value)}


def to_interchange(doc: SlaDocument) -> str:
    """Render a document as interchange JSON (UTF-8 text)."""
    data: dict[str, Any] = {
        "title": doc.title,
        "id": doc.id,
        "application_type": doc.application_type,
        "start_date": doc.start_date,
        "end_date": doc.end_date,
        "parties": [
            {"id": p.id, "name": p.name, "role": p.role} for p in doc.parties
        ],
        "app_slos": [_slo_dict(s) for s in doc.app_slos],
        "activities": [
            {"id": a.id, "kind": a.kind, "required_services": list(a.required_services)}
            for a in doc.activities
        ],
        "services": [
            {
                "id": s.id,
                "kind": s.kind,
                "deployed_on": s.deployed_on,
                "slos": [_slo_dict(slo) for slo in s.slos],
                "config": [_config_dict(c) for c in s.config],
            }
            for s in doc.services
        ],
        "resources": [
            {
                "id": r.id,
                "kind": r.kind,
                "slos": [_slo_dict(slo) for slo in r.slos],
                "config": [_config_dict(c) for c in r.config],
            }
            for r in doc.resources
        ],
    }
    if doc.unattached_slos:
        data["unattached_slos"] = [
            _slo_dict(s, with_target=True) for s in doc.unattached_slos
        ]
    return _emit(data, 0) + "\n"


# -- reading -----------------------------------------------------------------


def _parse_number(text: str) -> Fraction:
    # Exact: go through Decimal so exponent notation stays precise.
    return Fraction(Decimal(text))


def _want(data: dict, key: str, pointer: str) -> Any:
    if key not in data:
        raise SchemaViolationError(f"{pointer}/{key}", "missing required field")
    return data[key]


def _want_str(data: dict, key: str, pointer: str) -> str:
    value = _want(data, key, pointer)
    if not isinstance(value, str):
        raise SchemaViolationError(f"{pointer}/{key}", "must be a string")
    return value


def _want_ident(data: dict, key: str, pointer: str) -> str:
    value = _want_str(data, key, pointer)
    if not _IDENT_RE.match(value) or value in KEYWORDS:
        raise SchemaViolationError(
            f"{pointer}/{key}",
            "must be a lowercase identifier ([a-z][a-z0-9_]*) and not a keyword",
        )
    return value


def _want_list(data: dict, key: str, pointer: str, default: list | None = None) -> list:
    if key not in data:
        if default is not None:
            return default
        raise SchemaViolationError(f"{pointer}/{key}", "missing required field")
    value = data[key]
    if not isinstance(value, list):
        raise SchemaViolationError(f"{pointer}/{key}", "must be an array")
    return value


def _want_object(value: Any, pointer: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaViolationError(pointer, "must be an object")
    return value


def _want_date(data: dict, key: str, pointer: str) -> date:
    raw = _want_str(data, key, pointer)
    try:
        return date.fromisoformat(raw)
    except ValueError:
        raise SchemaViolationError(f"{pointer}/{key}", "must be a YYYY-MM-DD date") from None


def _check_keys(data: dict, allowed: set[str], pointer: str):
    for key in data:
        if key not in allowed:
            raise SchemaViolationError(f"{pointer}/{key}", "unknown field")


def _read_typed_value(data: dict, pointer: str) -> TypedValue:
    raw = _want(data, "value", pointer)
    unit = data.get("unit")
    if unit is not None and not isinstance(unit, str):
        raise SchemaViolationError(f"{pointer}/unit", "must be a string")
    if isinstance(raw, bool):
        if unit is not None:
            raise SchemaViolationError(f"{pointer}/unit", "booleans carry no unit")
        return TypedValue.boolean(raw)
    if isinstance(raw, (int, Fraction)):
        magnitude = Fraction(raw)
        if magnitude < 0:
            raise SchemaViolationError(f"{pointer}/value", "must be non-negative")
        return TypedValue("numeric", magnitude, unit)
    if isinstance(raw, str):
        if unit is not None:
            raise SchemaViolationError(f"{pointer}/unit", "text values carry no unit")
        return TypedValue.text(raw)
    raise SchemaViolationError(f"{pointer}/value", "must be a number, boolean, or string")


def _read_constraint(value: Any, pointer: str) -> MetricConstraint:
    data = _want_object(value, pointer)
    _check_keys(data, {"metric", "comparator", "value", "unit"}, pointer)
    metric = _want_ident(data, "metric", pointer)
    comparator = _want_str(data, "comparator", pointer)
    if comparator not in COMPARATORS:
        raise SchemaViolationError(
            f"{pointer}/comparator", f"must be one of {', '.join(COMPARATORS)}"
        )
    return MetricConstraint(metric, comparator, _read_typed_value(data, pointer))


def _read_slo(value: Any, pointer: str, target: str, with_target: bool = False) -> Slo:
    data = _want_object(value, pointer)
    allowed = {"id", "constraints"} | ({"target"} if with_target else set())
    _check_keys(data, allowed, pointer)
    slo_id = _want_ident(data, "id", pointer)
    if with_target:
        target = _want_ident(data, "target", pointer)
    raw_constraints = _want_list(data, "constraints", pointer)
    if not raw_constraints:
        raise SchemaViolationError(f"{pointer}/constraints", "must not be empty")
    constraints = tuple(
        _read_constraint(item, f"{pointer}/constraints/{i}")
        for i, item in enumerate(raw_constraints)
    )
    return Slo(slo_id, target, constraints)


def _read_config(value: Any, pointer: str) -> ConfigParam:
    data = _want_object(value, pointer)
    _check_keys(data, {"term", "value", "unit"}, pointer)
    term = _want_ident(data, "term", pointer)
    return ConfigParam(term, _read_typed_value(data, pointer))


def _read_kind(data: dict, pointer: str, kinds: tuple[str, ...]) -> str:
    kind = _want_str(data, "kind", pointer)
    if kind not in kinds:
        raise SchemaViolationError(f"{pointer}/kind", f"must be one of {', '.join(kinds)}")
    return kind


def from_interchange(text: str | bytes) -> SlaDocument:
    """Parse interchange JSON back into a document.

    Raises :class:`SchemaViolationError` with a JSON-pointer path on any
    structural problem.  Semantic checks still belong to the validator.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError:
            raise SchemaViolationError("/", "input is not valid UTF-8") from None
    try:
        data = json.loads(text, parse_float=_parse_number, parse_int=_parse_number)
    except (json.JSONDecodeError, ValueError) as exc:
        raise SchemaViolationError("/", f"invalid JSON: {exc}") from None
    data = _want_object(data, "/")
    _check_keys(
        data,
        {"title", "id", "application_type", "start_date", "end_date", "parties",
         "app_slos", "activities", "services", "resources", "unattached_slos"},
        "",
    )

    title = _want_str(data, "title", "")
    doc_id = _want_ident(data, "id", "")
    app_type = _want_ident(data, "application_type", "")
    start_date = _want_date(data, "start_date", "")
    end_date = _want_date(data, "end_date", "")

    parties = []
    for i, item in enumerate(_want_list(data, "parties", "")):
        pointer = f"/parties/{i}"
        obj = _want_object(item, pointer)
        _check_keys(obj, {"id", "name", "role"}, pointer)
        role = _want_str(obj, "role", pointer)
        if role not in PARTY_ROLES:
            raise SchemaViolationError(
                f"{pointer}/role", f"must be one of {', '.join(PARTY_ROLES)}"
            )
        parties.append(Party(_want_ident(obj, "id", pointer),
                             _want_str(obj, "name", pointer), role))

    slos = [
        _read_slo(item, f"/app_slos/{i}", APP_TARGET)
        for i, item in enumerate(_want_list(data, "app_slos", ""))
    ]

    activities = []
    for i, item in enumerate(_want_list(data, "activities", "")):
        pointer = f"/activities/{i}"
        obj = _want_object(item, pointer)
        _check_keys(obj, {"id", "kind", "required_services"}, pointer)
        refs = _want_list(obj, "required_services", pointer)
        if not refs:
            raise SchemaViolationError(f"{pointer}/required_services", "must not be empty")
        for j, ref in enumerate(refs):
            if not isinstance(ref, str) or not _IDENT_RE.match(ref) or ref in KEYWORDS:
                raise SchemaViolationError(
                    f"{pointer}/required_services/{j}", "must be an identifier"
                )
        activities.append(WorkflowActivity(
            _want_ident(obj, "id", pointer),
            _read_kind(obj, pointer, ACTIVITY_KINDS),
            tuple(refs),
        ))

    services = []
    for i, item in enumerate(_want_list(data, "services", "")):
        pointer = f"/services/{i}"
        obj = _want_object(item, pointer)
        _check_keys(obj, {"id", "kind", "deployed_on", "slos", "config"}, pointer)
        svc_id = _want_ident(obj, "id", pointer)
        slos.extend(
            _read_slo(slo_item, f"{pointer}/slos/{j}", svc_id)
            for j, slo_item in enumerate(_want_list(obj, "slos", pointer, default=[]))
        )
        services.append(ServiceSpec(
            svc_id,
            _read_kind(obj, pointer, SERVICE_KINDS),
            _want_ident(obj, "deployed_on", pointer),
            config=tuple(
                _read_config(cfg, f"{pointer}/config/{j}")
                for j, cfg in enumerate(_want_list(obj, "config", pointer, default=[]))
            ),
        ))

    resources = []
    for i, item in enumerate(_want_list(data, "resources", "")):
        pointer = f"/resources/{i}"
        obj = _want_object(item, pointer)
        _check_keys(obj, {"id", "kind", "slos", "config"}, pointer)
        res_id = _want_ident(obj, "id", pointer)
        slos.extend(
            _read_slo(slo_item, f"{pointer}/slos/{j}", res_id)
            for j, slo_item in enumerate(_want_list(obj, "slos", pointer, default=[]))
        )
        resources.append(InfraResourceSpec(
            res_id,
            _read_kind(obj, pointer, RESOURCE_KINDS),
            config=tuple(
                _read_config(cfg, f"{pointer}/config/{j}")
                for j, cfg in enumerate(_want_list(obj, "config", pointer, default=[]))
            ),
        ))

    slos.extend(
        _read_slo(item, f"/unattached_slos/{i}", "", with_target=True)
        for i, item in enumerate(_want_list(data, "unattached_slos", "", default=[]))
    )

    try:
        return build_document(
            title=title,
            doc_id=doc_id,
            application_type=app_type,
            start_date=start_date,
            end_date=end_date,
            parties=tuple(parties),
            slos=tuple(slos),
            activities=tuple(activities),
            services=tuple(services),
            resources=tuple(resources),
        )
    except DuplicateIdError as exc:
        raise SchemaViolationError("/", str(exc)) from None
