"""Exception hierarchy shared by all dinfra modules."""


class DinfraError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(DinfraError):
    """Invalid or inconsistent configuration (bad parameter, mismatched inputs)."""


class CorpusError(DinfraError):
    """Corpus ingestion failure: unreadable file, bad encoding, empty corpus."""


class DataError(DinfraError):
    """Input data is structurally valid but unusable (degenerate matrix, etc.)."""


class DatasetError(DataError):
    """Word-pair dataset failed to parse or failed an integrity check."""


class CoverageError(DataError):
    """Too few scorable pairs to compute a correlation."""


class TermNotFoundError(DinfraError):
    """A queried term is out of vocabulary or has no trained vector."""

    def __init__(self, term: str):
        super().__init__(f"term not found: {term!r}")
        self.term = term


class UndefinedSimilarityError(DinfraError):
    """A similarity measure is undefined for the given vectors (zero norm or variance)."""


class UndefinedCorrelationError(DinfraError):
    """Rank correlation is undefined (constant input list)."""


class RegistryError(DinfraError):
    """Model persistence failure: duplicate key, missing file, checksum mismatch."""
