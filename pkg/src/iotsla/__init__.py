"""SLA toolkit for IoT applications.

Specify agreements in a small text language (or JSON), check them against
a vocabulary of per-concept QoS metrics and configuration parameters,
rank provider offers against the stated requirements, and evaluate SLOs
over telemetry streams.
"""

from .constraints import (
    COMPARATORS,
    KNOWN_UNITS,
    SATISFIED,
    UNIT_FAMILIES,
    UNSPECIFIED,
    VIOLATED,
    TypedValue,
    check_constraint_against_value,
    convert,
    normalize_unit,
    units_convertible,
)
from .errors import (
    DomainError,
    DuplicateIdError,
    EmptyWindowError,
    IncompatibleUnitsError,
    ParseError,
    SchemaViolationError,
    SlaError,
    TelemetryFormatError,
    TypeMismatchError,
    UnitMismatchError,
    UnknownActivityError,
    VocabularyIntegrityError,
)
from .interchange import from_interchange, to_interchange
from .matcher import (
    MatchReport,
    ProviderOffer,
    load_offer,
    rank_offers,
    satisfies_capability,
    score_offer,
)
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
    concept_of_target,
    resolve,
    services_for_activity,
)
from .monitor import (
    EvaluationWindow,
    MonitorReport,
    TelemetryRecord,
    ViolationEvent,
    availability_ratio,
    data_completeness,
    end_to_end_response,
    evaluate_window,
    miss_ratio,
    monitor_document,
    parse_telemetry,
)
from .parser import parse, serialize
from .validator import Diagnostic, compatibility, format_diagnostic, validate
from .vocabulary import (
    APPLICATION_CONCEPT,
    TABLE_CONCEPTS,
    VALID_CONCEPTS,
    Catalog,
    VocabularyEntry,
    application_slo_terms,
    load_builtin_catalog,
)

__version__ = "0.1.0"
