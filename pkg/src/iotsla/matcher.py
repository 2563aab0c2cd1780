"""Match SLA requirements against provider capability offers.

An offer states, per metric, the bound the provider guarantees.  The
direction of the bound comes from the vocabulary: for a lower_is_better
metric like latency the figure is an upper bound (delivered values range
from 0 up to it), for higher_is_better like availability a lower bound
(the provider may overdeliver without limit), and for everything else the
exact delivered value.

A constraint counts as satisfied only when it would hold for every value
the provider might deliver under that reading.  A metric the offer does
not mention is ``unspecified``, which scores the same as violated: absence
of a guarantee is not a guarantee.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .constraints import (
    SATISFIED,
    UNSPECIFIED,
    VIOLATED,
    TypedValue,
    convert,
    decimal_repr,
)
from .errors import (
    IncompatibleUnitsError,
    SchemaViolationError,
    TypeMismatchError,
    UnitMismatchError,
)
from .model import MetricConstraint
from .vocabulary import Catalog, VocabularyEntry, VALID_CONCEPTS

__all__ = [
    "ProviderOffer",
    "MatchReport",
    "satisfies_capability",
    "score_offer",
    "rank_offers",
    "load_offer",
    "render_report_table",
]


@dataclass(frozen=True)
class ProviderOffer:
    """A provider's guaranteed bounds for one concept's metrics."""

    provider_id: str
    concept: str
    capabilities: Mapping[str, TypedValue]

    def __post_init__(self):
        if self.concept not in VALID_CONCEPTS:
            raise ValueError(f"unknown concept: {self.concept!r}")


@dataclass(frozen=True)
class MatchReport:
    """Outcome of evaluating one offer against the requirements."""

    provider_id: str
    verdicts: tuple[str, ...]  # aligned with the requirements list
    score: Fraction
    rank: int

    def to_dict(self) -> dict:
        return {
            "provider_id": self.provider_id,
            "rank": self.rank,
            "score": decimal_str_or_fraction(self.score),
            "verdicts": list(self.verdicts),
        }


def decimal_str_or_fraction(value: Fraction) -> str:
    """Exact human-readable rendering: decimal when finite, else n/d."""
    from .errors import DomainError

    try:
        return decimal_repr(value)
    except DomainError:
        return f"{value.numerator}/{value.denominator}"


def _to_canonical(value: TypedValue, entry: VocabularyEntry, what: str) -> Fraction:
    if value.unit is None or value.unit == entry.canonical_unit:
        return value.magnitude
    try:
        return convert(value.magnitude, value.unit, entry.canonical_unit)
    except IncompatibleUnitsError as exc:
        raise UnitMismatchError(f"{what} for {entry.term!r}: {exc}") from None


def _delivered_interval(
    bound: Fraction, entry: VocabularyEntry
) -> tuple[Fraction, Fraction | None]:
    """Range of values the provider may deliver, as (lo, hi); hi None = unbounded.

    Metric magnitudes in this model are non-negative (the source grammar
    cannot express a sign), so a lower_is_better bound spans [0, bound].
    """
    if entry.direction == "lower_is_better":
        return (Fraction(0), bound)
    if entry.direction == "higher_is_better":
        return (bound, None)
    # target_equality / none: the bound is exactly what is delivered
    return (bound, bound)


def _interval_satisfies(
    comparator: str, lo: Fraction, hi: Fraction | None, threshold: Fraction
) -> bool:
    """Does every value in [lo, hi] satisfy ``value <comparator> threshold``?"""
    if comparator == "<":
        return hi is not None and hi < threshold
    if comparator == "<=":
        return hi is not None and hi <= threshold
    if comparator == ">":
        return lo > threshold
    if comparator == ">=":
        return lo >= threshold
    if comparator == "==":
        return hi is not None and lo == hi == threshold
    raise ValueError(f"unknown comparator: {comparator!r}")


def satisfies_capability(
    constraint: MetricConstraint, offer: ProviderOffer, catalog: Catalog
) -> str:
    """Verdict for one constraint against one offer.

    Returns ``unspecified`` when the offer does not mention the metric;
    otherwise ``satisfied`` iff the guaranteed bound implies the constraint
    for every deliverable value.
    """
    entry = catalog.lookup(constraint.metric, offer.concept)
    if entry is None:
        raise ValueError(
            f"metric {constraint.metric!r} is not defined for {offer.concept!r}"
        )
    capability = offer.capabilities.get(constraint.metric)
    if capability is None and constraint.metric != entry.term:
        # constraint written with an alias; the offer may use the canonical
        capability = offer.capabilities.get(entry.term)
    if capability is None:
        for alias in entry.aliases:
            capability = offer.capabilities.get(alias)
            if capability is not None:
                break
    if capability is None:
        return UNSPECIFIED

    if entry.value_type == "numeric":
        if constraint.value.tag != "numeric" or capability.tag != "numeric":
            raise TypeMismatchError(
                f"{entry.term}: numeric metric needs numeric constraint and capability"
            )
        threshold = _to_canonical(constraint.value, entry, "constraint unit")
        bound = _to_canonical(capability, entry, "offer unit")
        lo, hi = _delivered_interval(bound, entry)
        ok = _interval_satisfies(constraint.comparator, lo, hi, threshold)
        return SATISFIED if ok else VIOLATED

    # Non-numeric capabilities are exact: delivered == advertised.
    if constraint.comparator != "==":
        raise TypeMismatchError(
            f"{entry.term}: {entry.value_type} metric only supports '=='"
        )
    return SATISFIED if capability.value == constraint.value.value else VIOLATED


def _weight_of(weights: Mapping[str, Fraction | int] | None, metric: str) -> Fraction:
    if weights is None:
        return Fraction(1)
    weight = Fraction(weights.get(metric, 1))
    if weight <= 0:
        raise ValueError(f"weight for {metric!r} must be positive")
    return weight


def score_offer(
    requirements: Iterable[MetricConstraint],
    offer: ProviderOffer,
    weights: Mapping[str, Fraction | int] | None,
    catalog: Catalog,
) -> Fraction:
    """Weighted fraction of satisfied requirements, in [0, 1].

    Metrics missing from ``weights`` weigh 1.  With no requirements at all
    there is nothing to fail, so the score is 1.
    """
    total = Fraction(0)
    satisfied = Fraction(0)
    for constraint in requirements:
        weight = _weight_of(weights, constraint.metric)
        total += weight
        if satisfies_capability(constraint, offer, catalog) == SATISFIED:
            satisfied += weight
    if total == 0:
        return Fraction(1)
    return satisfied / total


def rank_offers(
    requirements: list[MetricConstraint],
    offers: Iterable[ProviderOffer],
    weights: Mapping[str, Fraction | int] | None,
    catalog: Catalog,
) -> list[MatchReport]:
    """Evaluate and rank all offers.

    Sorted by descending score, ties broken by ascending provider_id.
    Ranks use competition numbering: equal scores share a rank and the
    next distinct score skips past them (1, 2, 2, 4).
    """
    offers = list(offers)
    concepts = {o.concept for o in offers}
    if len(concepts) > 1:
        raise ValueError(
            f"offers span multiple concepts: {', '.join(sorted(concepts))}"
        )
    scored: list[tuple[ProviderOffer, tuple[str, ...], Fraction]] = []
    for offer in offers:
        verdicts = tuple(
            satisfies_capability(c, offer, catalog) for c in requirements
        )
        scored.append((offer, verdicts, score_offer(requirements, offer, weights, catalog)))

    scored.sort(key=lambda item: (-item[2], item[0].provider_id))
    reports: list[MatchReport] = []
    for position, (offer, verdicts, score) in enumerate(scored):
        if position > 0 and score == scored[position - 1][2]:
            rank = reports[-1].rank
        else:
            rank = position + 1
        reports.append(MatchReport(offer.provider_id, verdicts, score, rank))
    return reports


def load_offer(text: str | bytes, catalog: Catalog) -> ProviderOffer:
    """Parse one ``.offer.json`` document and check it against the catalog.

    Format: ``{"provider_id", "concept", "capabilities": [{"metric",
    "value", "unit"?}, ...]}``.  Raises :class:`SchemaViolationError` on
    structural problems, including capability terms the catalog does not
    define for the offer's concept.
    """
    from .interchange import _parse_number, _read_typed_value  # shared readers

    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError:
            raise SchemaViolationError("/", "input is not valid UTF-8") from None
    try:
        data = json.loads(text, parse_float=_parse_number, parse_int=_parse_number)
    except (json.JSONDecodeError, ValueError) as exc:
        raise SchemaViolationError("/", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaViolationError("/", "offer must be an object")
    for key in data:
        if key not in ("provider_id", "concept", "capabilities"):
            raise SchemaViolationError(f"/{key}", "unknown field")
    provider_id = data.get("provider_id")
    if not isinstance(provider_id, str) or not provider_id:
        raise SchemaViolationError("/provider_id", "must be a non-empty string")
    concept = data.get("concept")
    if concept not in VALID_CONCEPTS:
        raise SchemaViolationError(
            "/concept", f"must be one of {', '.join(VALID_CONCEPTS)}"
        )
    raw_caps = data.get("capabilities")
    if not isinstance(raw_caps, list):
        raise SchemaViolationError("/capabilities", "must be an array")

    capabilities: dict[str, TypedValue] = {}
    for i, item in enumerate(raw_caps):
        pointer = f"/capabilities/{i}"
        if not isinstance(item, dict):
            raise SchemaViolationError(pointer, "must be an object")
        for key in item:
            if key not in ("metric", "value", "unit"):
                raise SchemaViolationError(f"{pointer}/{key}", "unknown field")
        metric = item.get("metric")
        if not isinstance(metric, str):
            raise SchemaViolationError(f"{pointer}/metric", "must be a string")
        entry = catalog.lookup(metric, concept)
        if entry is None:
            raise SchemaViolationError(
                f"{pointer}/metric", f"{metric!r} is not defined for {concept!r}"
            )
        if entry.term in capabilities:
            raise SchemaViolationError(
                f"{pointer}/metric", f"duplicate capability for {entry.term!r}"
            )
        capabilities[entry.term] = _read_typed_value(item, pointer)
    return ProviderOffer(provider_id, concept, capabilities)


def render_report_table(
    reports: list[MatchReport], requirements: list[MetricConstraint]
) -> str:
    """Aligned text table of a ranking."""
    headers = ["rank", "provider", "score"] + [c.metric for c in requirements]
    rows = [
        [str(r.rank), r.provider_id, decimal_str_or_fraction(r.score), *r.verdicts]
        for r in reports
    ]
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))).rstrip(),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)
