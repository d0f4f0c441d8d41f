"""Exception types shared across the package."""


class HydroQueryError(Exception):
    """Base class for all package errors."""


# --- doc ingestion ---

class EmptyCorpus(HydroQueryError):
    pass


class DuplicateId(HydroQueryError):
    pass


class SchemaError(HydroQueryError):
    pass


# --- embedding ---

class DimensionMismatch(HydroQueryError):
    pass


class DegenerateInput(HydroQueryError):
    pass


class DegenerateVector(HydroQueryError):
    pass


class IncompatibleEmbedders(HydroQueryError):
    pass


# --- vector index ---

class EmptyIndex(HydroQueryError):
    pass


class EmbedFailure(HydroQueryError):
    pass


class FormatVersionMismatch(HydroQueryError):
    pass


class ChecksumMismatch(HydroQueryError):
    pass


# --- prompting ---

class NoRetrievals(HydroQueryError):
    pass


class MalformedFunctionBlock(HydroQueryError):
    pass


class EmptyGeneration(HydroQueryError):
    pass


# --- llm client ---

class ProviderUnavailable(HydroQueryError):
    def __init__(self, message: str, retryable: bool = True):
        super().__init__(message)
        self.retryable = retryable


class TranscriptMiss(HydroQueryError):
    def __init__(self, prompt_hash: str, digest: str):
        super().__init__(
            f"no transcript entry for prompt {prompt_hash[:12]}… ({digest})"
        )
        self.prompt_hash = prompt_hash
        self.digest = digest


class RateLimited(HydroQueryError):
    pass


# --- sandbox ---

class MissingPlaceholder(HydroQueryError):
    pass


class ExecutorNotFound(HydroQueryError):
    pass


class SpawnFailure(HydroQueryError):
    pass


# --- pipeline ---

class IndexMissing(HydroQueryError):
    pass


class NetworkUnknown(HydroQueryError):
    pass


class AssetDrift(HydroQueryError):
    def __init__(self, asset: str, message: str):
        super().__init__(f"{asset}: {message}")
        self.asset = asset


# --- benchmark ---

class SuiteSchemaError(HydroQueryError):
    pass


class OracleFailure(HydroQueryError):
    pass
