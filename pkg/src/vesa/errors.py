"""Exception hierarchy shared across the graph, ingestion, query and API layers."""


class VesaError(Exception):
    """Base class for all errors raised by this package."""


# ---- graph store ----


class GraphError(VesaError):
    """Base class for graph store errors."""


class DuplicateNode(GraphError):
    """A node with the same id already exists."""


class SchemaViolation(GraphError):
    """Node attributes do not conform to the per-kind attribute schema."""


class MissingNode(GraphError):
    """Referenced node id does not exist."""


class MissingEndpoint(GraphError):
    """An edge endpoint does not resolve to an existing node."""


class IllegalEndpointKind(GraphError):
    """Edge endpoints have node kinds the edge kind does not allow."""


class NodeInUse(GraphError):
    """Node cannot be removed while incident edges exist."""


class BuildPhaseError(GraphError):
    """Operation requires the store in a different phase (frozen vs. build)."""


class CorruptDump(GraphError):
    """A dump file failed schema or referential-integrity validation on load."""


# ---- ingestion ----


class IngestError(VesaError):
    """Base class for ingestion errors."""


class ParseError(IngestError):
    """Source document is structurally malformed."""


class FieldError(IngestError):
    """A field value violates the common schema (bad range, reversed interval, ...)."""


class NetworkError(IngestError):
    """Remote endpoint unreachable after the retry policy was exhausted."""


class RemoteFormatError(IngestError):
    """Remote endpoint answered with an unexpected payload shape."""


# ---- semantics / query ----


class EmptyStore(VesaError):
    """Operation requires at least one dataset node in the store."""


class UnknownKeyword(VesaError):
    """Keyword term is not known to the store."""


class UnknownAuthor(VesaError):
    """Author node id is not known to the store."""


class UnknownDataset(VesaError):
    """Dataset node id is not known to the store."""


# ---- configuration ----


class ConfigError(VesaError):
    """Service or source configuration is invalid."""
