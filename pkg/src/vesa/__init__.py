"""Knowledge-graph-backed dataset discovery engine.

Metadata from heterogeneous scientific repositories is parsed into a common
schema, linked in an embedded typed property graph, scored with TF-IDF, and
served through a stateless cross-filter search API that feeds a
coordinated-views dashboard.
"""

from .build import build_store
from .errors import (
    BuildPhaseError,
    ConfigError,
    CorruptDump,
    DuplicateNode,
    EmptyStore,
    FieldError,
    IllegalEndpointKind,
    MissingEndpoint,
    MissingNode,
    NetworkError,
    NodeInUse,
    ParseError,
    RemoteFormatError,
    SchemaViolation,
    UnknownAuthor,
    UnknownDataset,
    UnknownKeyword,
    VesaError,
)
from .graph import GraphEdge, GraphNode, GraphStore, dump, load
from .harvest import harvest_remote
from .ingest import (
    AuthorRef,
    IngestReport,
    NormalizedDataset,
    PublicationRecord,
    SpatialExtent,
    TemporalCoverage,
    ingest,
    parse_pangaea_record,
    parse_publication_record,
    parse_stac_collection,
)
from .keywords import (
    KeywordScore,
    TokenizerConfig,
    compute_tfidf,
    link_common_keywords,
    mediate_stac_keywords,
    related_keywords,
    select_cloud_keywords,
    tokenize,
)
from .query import (
    FilterResult,
    SelectionState,
    SpatialBox,
    TimeRange,
    coauthor_matrix,
    dataset_list,
    evaluate,
    keyword_cloud,
    map_points,
    temporal_histogram,
)

__version__ = "0.1.0"
