"""Concrete syntax for SLA documents.

The language is line-oriented only by convention; any whitespace separates
tokens, and ``#`` starts a comment running to the end of the line.

Grammar sketch (sections must appear in this order)::

    sla "Title" {
      id = my_sla
      application = smart_health
      starts = 2026-01-01
      ends = 2027-01-01
    }

    party hospital {
      name = "City Hospital"
      role = consumer
    }

    slo fast on app {
      end_to_end_response_time <= 5 time_unit
    }

    activity capture : capture_eoi requires sensing_svc

    service sensing_svc : sensing on sensor {
      sampling_rate = 5 hz
    }

    resource sensor : iot_device {
    }

A value may be followed by a unit identifier.  Because config keys and
constraint metrics are also identifiers, the parser looks one token past a
candidate unit: if the token after it is ``=`` or a comparator, the
identifier starts the next clause instead of naming a unit.

``parse`` is total: every input (including arbitrary bytes) produces
either a document or a :class:`ParseError`, never a crash.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date
from fractions import Fraction

from .constraints import COMPARATORS, TypedValue, decimal_repr
from .errors import ParseError
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
    SourceSpan,
    WorkflowActivity,
    build_document,
)

__all__ = ["KEYWORDS", "parse", "serialize"]

KEYWORDS = frozenset(
    {"sla", "party", "slo", "on", "app", "activity", "requires",
     "service", "resource", "true", "false"}
)

_IDENT_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>[ \t\r\n]+)
    | (?P<comment>\#[^\n]*)
    | (?P<date>\d{4}-\d{2}-\d{2})
    | (?P<number>\d+(?:\.\d+)?)
    | (?P<ident>[a-z][a-z0-9_]*)
    | (?P<string>"(?:\\.|[^"\\\n])*")
    | (?P<op>==|<=|>=|[{}=:,<>])
    """,
    re.VERBOSE,
)

_STRING_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


@dataclass(frozen=True)
class _Token:
    type: str  # date | number | ident | string | op | eof
    text: str
    line: int
    col: int
    end_line: int
    end_col: int


def _decode(text: str | bytes) -> str:
    if isinstance(text, str):
        return text
    try:
        return text.decode("utf-8")
    except UnicodeDecodeError as exc:
        prefix = text[: exc.start]
        line = prefix.count(b"\n") + 1
        col = exc.start - (prefix.rfind(b"\n") + 1) + 1
        raise ParseError("input is not valid UTF-8", line, col) from None


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    line = 1
    col = 1
    length = len(text)
    while pos < length:
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            char = text[pos]
            if char == '"':
                raise ParseError("unterminated string literal", line, col)
            raise ParseError(f"unexpected character {char!r}", line, col)
        kind = match.lastgroup
        raw = match.group()
        if kind in ("ws", "comment"):
            newlines = raw.count("\n")
            if newlines:
                line += newlines
                col = len(raw) - raw.rfind("\n")
            else:
                col += len(raw)
        else:
            assert kind is not None
            end_col = col + len(raw)
            tokens.append(_Token(kind, raw, line, col, line, end_col))
            col = end_col
        pos = match.end()
    tokens.append(_Token("eof", "", line, col, line, col))
    return tokens


def _unescape_string(token: _Token) -> str:
    body = token.text[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        char = body[i]
        if char == "\\":
            escape = body[i + 1]
            if escape not in _STRING_ESCAPES:
                raise ParseError(
                    f"invalid escape sequence '\\{escape}'", token.line, token.col
                )
            out.append(_STRING_ESCAPES[escape])
            i += 2
        else:
            out.append(char)
            i += 1
    return "".join(out)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.seen_ids: dict[str, _Token] = {}

    # -- token plumbing ----------------------------------------------------

    def peek(self, ahead: int = 0) -> _Token:
        index = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        if token.type != "eof":
            self.pos += 1
        return token

    def fail(self, message: str, token: _Token, expected: frozenset[str] | None = None):
        raise ParseError(message, token.line, token.col, expected)

    def _describe(self, token: _Token) -> str:
        if token.type == "eof":
            return "end of input"
        return repr(token.text)

    def expect_op(self, op: str) -> _Token:
        token = self.peek()
        if token.type != "op" or token.text != op:
            self.fail(
                f"expected {op!r}, found {self._describe(token)}",
                token,
                frozenset({op}),
            )
        return self.advance()

    def expect_keyword(self, word: str) -> _Token:
        token = self.peek()
        if token.type != "ident" or token.text != word:
            self.fail(
                f"expected {word!r}, found {self._describe(token)}",
                token,
                frozenset({word}),
            )
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        token = self.peek()
        return token.type == "ident" and token.text == word

    def expect_ident(self, what: str = "identifier") -> _Token:
        token = self.peek()
        if token.type != "ident":
            self.fail(f"expected {what}, found {self._describe(token)}", token,
                      frozenset({what}))
        if token.text in KEYWORDS:
            self.fail(f"{token.text!r} is a reserved keyword", token)
        return self.advance()

    def expect_string(self, what: str) -> tuple[str, _Token]:
        token = self.peek()
        if token.type != "string":
            self.fail(f"expected {what} (a quoted string), found {self._describe(token)}",
                      token, frozenset({"string"}))
        self.advance()
        return _unescape_string(token), token

    def expect_date(self, what: str) -> tuple[date, _Token]:
        token = self.peek()
        if token.type != "date":
            self.fail(f"expected {what} (YYYY-MM-DD), found {self._describe(token)}",
                      token, frozenset({"date"}))
        try:
            value = date.fromisoformat(token.text)
        except ValueError:
            self.fail(f"invalid calendar date {token.text!r}", token)
        self.advance()
        return value, token

    def declare_id(self, token: _Token) -> str:
        if token.text in self.seen_ids:
            self.fail(f"duplicate identifier {token.text!r}", token)
        self.seen_ids[token.text] = token
        return token.text

    @staticmethod
    def span(start: _Token, end: _Token) -> SourceSpan:
        return SourceSpan(start.line, start.col, end.end_line, end.end_col)

    def prev(self) -> _Token:
        return self.tokens[self.pos - 1]

    # -- field helpers -----------------------------------------------------

    def field_ident(self, key: str, what: str) -> _Token:
        self.expect_keyword(key)
        self.expect_op("=")
        return self.expect_ident(what)

    def field_string(self, key: str, what: str) -> str:
        self.expect_keyword(key)
        self.expect_op("=")
        value, _ = self.expect_string(what)
        return value

    def field_date(self, key: str, what: str) -> date:
        self.expect_keyword(key)
        self.expect_op("=")
        value, _ = self.expect_date(what)
        return value

    # -- values ------------------------------------------------------------

    def parse_value(self) -> TypedValue:
        token = self.peek()
        if token.type == "number":
            self.advance()
            magnitude = Fraction(token.text)
            unit = self.maybe_unit()
            return TypedValue("numeric", magnitude, unit)
        if token.type == "ident" and token.text in ("true", "false"):
            self.advance()
            self.reject_unit_after("a boolean")
            return TypedValue.boolean(token.text == "true")
        if token.type == "string":
            self.advance()
            self.reject_unit_after("a text")
            return TypedValue.text(_unescape_string(token))
        self.fail(
            f"expected a value (number, true/false, or string), "
            f"found {self._describe(token)}",
            token,
            frozenset({"number", "true", "false", "string"}),
        )
        raise AssertionError("unreachable")

    def maybe_unit(self) -> str | None:
        # A trailing identifier is a unit unless it starts the next clause
        # (config key followed by '=', or constraint metric followed by a
        # comparator).
        token = self.peek()
        if token.type != "ident" or token.text in KEYWORDS:
            return None
        following = self.peek(1)
        if following.type == "op" and following.text in ("=",) + COMPARATORS:
            return None
        self.advance()
        return token.text

    def reject_unit_after(self, what: str):
        unit = self.maybe_unit()
        if unit is not None:
            self.fail(f"{what} value cannot carry a unit", self.prev())

    # -- productions ---------------------------------------------------------

    def parse_document(self) -> SlaDocument:
        start = self.peek()
        self.expect_keyword("sla")
        title, _ = self.expect_string("the agreement title")
        self.expect_op("{")
        doc_id_token = self.field_ident("id", "the agreement id")
        self.declare_id(doc_id_token)
        app_type = self.field_ident("application", "an application type").text
        start_date = self.field_date("starts", "the start date")
        end_date = self.field_date("ends", "the end date")
        self.expect_op("}")
        header_span = self.span(start, self.prev())

        parties = []
        while self.at_keyword("party"):
            parties.append(self.parse_party())
        slos = []
        while self.at_keyword("slo"):
            slos.append(self.parse_slo())
        activities = []
        while self.at_keyword("activity"):
            activities.append(self.parse_activity())
        services = []
        while self.at_keyword("service"):
            services.append(self.parse_service())
        resources = []
        while self.at_keyword("resource"):
            resources.append(self.parse_resource())

        trailing = self.peek()
        if trailing.type != "eof":
            self.fail(
                f"expected a party/slo/activity/service/resource block or end "
                f"of input, found {self._describe(trailing)}",
                trailing,
                frozenset({"party", "slo", "activity", "service", "resource"}),
            )

        return build_document(
            title=title,
            doc_id=doc_id_token.text,
            application_type=app_type,
            start_date=start_date,
            end_date=end_date,
            parties=tuple(parties),
            slos=tuple(slos),
            activities=tuple(activities),
            services=tuple(services),
            resources=tuple(resources),
            span=header_span,
        )

    def parse_party(self) -> Party:
        start = self.expect_keyword("party")
        id_token = self.expect_ident("a party id")
        self.declare_id(id_token)
        self.expect_op("{")
        name = self.field_string("name", "the party name")
        self.expect_keyword("role")
        self.expect_op("=")
        role_token = self.peek()
        if role_token.type != "ident" or role_token.text not in PARTY_ROLES:
            self.fail(
                f"expected a party role ({', '.join(PARTY_ROLES)}), "
                f"found {self._describe(role_token)}",
                role_token,
                frozenset(PARTY_ROLES),
            )
        self.advance()
        self.expect_op("}")
        return Party(id_token.text, name, role_token.text,
                     span=self.span(start, self.prev()))

    def parse_slo(self) -> Slo:
        start = self.expect_keyword("slo")
        id_token = self.expect_ident("an slo id")
        self.declare_id(id_token)
        self.expect_keyword("on")
        target_token = self.peek()
        if target_token.type == "ident" and target_token.text == APP_TARGET:
            self.advance()
            target = APP_TARGET
        else:
            target = self.expect_ident("an slo target (app or an entity id)").text
        self.expect_op("{")
        constraints = [self.parse_constraint()]
        while not (self.peek().type == "op" and self.peek().text == "}"):
            if self.peek().type != "ident" or self.peek().text in KEYWORDS:
                break
            constraints.append(self.parse_constraint())
        self.expect_op("}")
        return Slo(id_token.text, target, tuple(constraints),
                   span=self.span(start, self.prev()))

    def parse_constraint(self) -> MetricConstraint:
        metric_token = self.expect_ident("a metric name")
        op_token = self.peek()
        if op_token.type != "op" or op_token.text not in COMPARATORS:
            self.fail(
                f"expected a comparator ({', '.join(COMPARATORS)}), "
                f"found {self._describe(op_token)}",
                op_token,
                frozenset(COMPARATORS),
            )
        self.advance()
        value = self.parse_value()
        return MetricConstraint(
            metric_token.text, op_token.text, value,
            span=self.span(metric_token, self.prev()),
        )

    def parse_activity(self) -> WorkflowActivity:
        start = self.expect_keyword("activity")
        id_token = self.expect_ident("an activity id")
        self.declare_id(id_token)
        self.expect_op(":")
        kind_token = self.expect_ident("an activity kind")
        if kind_token.text not in ACTIVITY_KINDS:
            self.fail(f"unknown activity kind {kind_token.text!r}", kind_token,
                      frozenset(ACTIVITY_KINDS))
        self.expect_keyword("requires")
        required = [self.expect_ident("a service id").text]
        while self.peek().type == "op" and self.peek().text == ",":
            self.advance()
            required.append(self.expect_ident("a service id").text)
        return WorkflowActivity(id_token.text, kind_token.text, tuple(required),
                                span=self.span(start, self.prev()))

    def parse_config_block(self) -> list[ConfigParam]:
        self.expect_op("{")
        params: list[ConfigParam] = []
        while self.peek().type == "ident" and self.peek().text not in KEYWORDS:
            term_token = self.expect_ident("a configuration term")
            self.expect_op("=")
            value = self.parse_value()
            params.append(ConfigParam(term_token.text, value,
                                      span=self.span(term_token, self.prev())))
        self.expect_op("}")
        return params

    def parse_service(self) -> ServiceSpec:
        start = self.expect_keyword("service")
        id_token = self.expect_ident("a service id")
        self.declare_id(id_token)
        self.expect_op(":")
        kind_token = self.expect_ident("a service kind")
        if kind_token.text not in SERVICE_KINDS:
            self.fail(f"unknown service kind {kind_token.text!r}", kind_token,
                      frozenset(SERVICE_KINDS))
        self.expect_keyword("on")
        deployed_on = self.expect_ident("a resource id").text
        config = self.parse_config_block()
        return ServiceSpec(id_token.text, kind_token.text, deployed_on,
                           config=tuple(config),
                           span=self.span(start, self.prev()))

    def parse_resource(self) -> InfraResourceSpec:
        start = self.expect_keyword("resource")
        id_token = self.expect_ident("a resource id")
        self.declare_id(id_token)
        self.expect_op(":")
        kind_token = self.expect_ident("a resource kind")
        if kind_token.text not in RESOURCE_KINDS:
            self.fail(f"unknown resource kind {kind_token.text!r}", kind_token,
                      frozenset(RESOURCE_KINDS))
        config = self.parse_config_block()
        return InfraResourceSpec(id_token.text, kind_token.text,
                                 config=tuple(config),
                                 span=self.span(start, self.prev()))


def parse(text: str | bytes) -> SlaDocument:
    """Parse SLA source text.

    Raises :class:`ParseError` (and only ParseError) on any malformed
    input, with the 1-based position of the first offending token.  Kind
    and role words are checked during parsing because the model cannot
    represent unknown ones; everything semantic beyond that is left to the
    validator.
    """
    decoded = _decode(text)
    try:
        return _Parser(_tokenize(decoded)).parse_document()
    except ValueError as exc:
        # Defensive: model constructors reject some malformed values before
        # the parser sees them; surface those as ordinary parse errors.
        raise ParseError(str(exc), 1, 1) from exc


# -- serialization ---------------------------------------------------------


def _escape_string(value: str) -> str:
    out = value.replace("\\", "\\\\").replace('"', '\\"')
    out = out.replace("\n", "\\n").replace("\t", "\\t")
    return f'"{out}"'


def _format_value(value: TypedValue) -> str:
    if value.tag == "numeric":
        text = decimal_repr(value.magnitude)
        if value.unit is not None:
            return f"{text} {value.unit}"
        return text
    if value.tag == "boolean":
        return "true" if value.value else "false"
    # text and enumerated both serialize as quoted strings; a reparse reads
    # them back as text.
    return _escape_string(str(value.value))


def _slo_block(slo: Slo, target: str) -> str:
    lines = [f"slo {slo.id} on {target} {{"]
    for c in slo.constraints:
        lines.append(f"  {c.metric} {c.comparator} {_format_value(c.value)}")
    lines.append("}")
    return "\n".join(lines)


def _config_lines(params: tuple[ConfigParam, ...]) -> list[str]:
    return [f"  {p.term} = {_format_value(p.value)}" for p in params]


def serialize(doc: SlaDocument) -> str:
    """Canonical text form: two-space indent, one blank line between blocks.

    Deterministic, and a fixed point: serializing a document parsed from
    canonical text reproduces that text byte for byte.  Comments are not
    part of the model, so they do not survive.
    """
    blocks: list[str] = []
    blocks.append("\n".join([
        f"sla {_escape_string(doc.title)} {{",
        f"  id = {doc.id}",
        f"  application = {doc.application_type}",
        f"  starts = {doc.start_date.isoformat()}",
        f"  ends = {doc.end_date.isoformat()}",
        "}",
    ]))

    for party in doc.parties:
        blocks.append("\n".join([
            f"party {party.id} {{",
            f"  name = {_escape_string(party.name)}",
            f"  role = {party.role}",
            "}",
        ]))

    for slo in doc.app_slos:
        blocks.append(_slo_block(slo, APP_TARGET))
    for svc in doc.services:
        for slo in svc.slos:
            blocks.append(_slo_block(slo, svc.id))
    for res in doc.resources:
        for slo in res.slos:
            blocks.append(_slo_block(slo, res.id))
    for slo in doc.unattached_slos:
        blocks.append(_slo_block(slo, slo.target))

    for act in doc.activities:
        requires = ", ".join(act.required_services)
        blocks.append(f"activity {act.id} : {act.kind} requires {requires}")

    for svc in doc.services:
        lines = [f"service {svc.id} : {svc.kind} on {svc.deployed_on} {{"]
        lines.extend(_config_lines(svc.config))
        lines.append("}")
        blocks.append("\n".join(lines))

    for res in doc.resources:
        lines = [f"resource {res.id} : {res.kind} {{"]
        lines.extend(_config_lines(res.config))
        lines.append("}")
        blocks.append("\n".join(lines))

    return "\n\n".join(blocks) + "\n"
