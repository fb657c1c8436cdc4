"""Self-hostable metadata portal for micrometeorological observation networks.

Validated network/site/sensor records, an embedded catalog with faceted
search, a 16-metric FAIR rule engine, a DOI-minting archive client and
dimensional analytics, all behind one HTTP API and CLI.
"""

from .model import (
    Contact,
    DatasetLink,
    DateRange,
    GeoPoint,
    LocalEnvironment,
    Network,
    Season,
    Sensor,
    Site,
    Vocabulary,
    DEFAULT_VOCABULARY,
    is_valid_doi,
)
from .derive import (
    completeness_checklist,
    completeness_score,
    derive_seasonality,
    expected_record_count,
)
from .validation import ValidationIssue, ValidationReport, validate_network
from .interchange import (
    DocumentError,
    NetworkRecord,
    build_document,
    canonical_json,
    parse_document,
)
from .store import (
    CatalogSnapshot,
    CatalogStore,
    NotFoundError,
    StoreError,
    ValidationFailedError,
    VersionConflictError,
)
from .search import SearchEngine, SearchQuery, SearchResult, network_matches
from .fair import (
    FairAssessment,
    MetricId,
    MetricOutcome,
    Rubric,
    WriteAccessPolicy,
    assess,
    rollup,
)
from .archive import (
    ArchiveClient,
    ArchiveError,
    DepositDraft,
    HttpArchive,
    StubArchive,
    make_archive_client,
)
from .analytics import CubeQuery, CubeResult, cube, summary_metrics
from .api import create_app
from .config import ServiceConfig

__version__ = "0.1.0"

__all__ = [
    "ArchiveClient",
    "ArchiveError",
    "CatalogSnapshot",
    "CatalogStore",
    "Contact",
    "CubeQuery",
    "CubeResult",
    "DatasetLink",
    "DateRange",
    "DEFAULT_VOCABULARY",
    "DepositDraft",
    "DocumentError",
    "FairAssessment",
    "GeoPoint",
    "HttpArchive",
    "LocalEnvironment",
    "MetricId",
    "MetricOutcome",
    "Network",
    "NetworkRecord",
    "NotFoundError",
    "Rubric",
    "Season",
    "Sensor",
    "SearchEngine",
    "SearchQuery",
    "SearchResult",
    "ServiceConfig",
    "Site",
    "StoreError",
    "StubArchive",
    "ValidationFailedError",
    "ValidationIssue",
    "ValidationReport",
    "VersionConflictError",
    "Vocabulary",
    "WriteAccessPolicy",
    "assess",
    "build_document",
    "canonical_json",
    "completeness_checklist",
    "completeness_score",
    "create_app",
    "cube",
    "derive_seasonality",
    "expected_record_count",
    "is_valid_doi",
    "make_archive_client",
    "network_matches",
    "parse_document",
    "rollup",
    "summary_metrics",
    "validate_network",
]
