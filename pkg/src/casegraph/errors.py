"""Exception hierarchy. All input-attributable failures derive from CasegraphError."""


class CasegraphError(Exception):
    """Base class for errors caused by bad input data or configuration."""


class CorpusFormatError(CasegraphError):
    """Malformed annotated-corpus file. Carries the 1-based line number when known."""

    def __init__(self, line: int | None, message: str):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class TagMappingError(CasegraphError):
    """Bad mapping-rule file, manifest mismatch, or related load failure."""


class UnmappedTagError(TagMappingError):
    """A (category, features) pair with no rule and no bare-category fallback."""


class ThesaurusError(CasegraphError):
    """Bad thesaurus file or category counts that contradict the manifest."""


class NTriplesError(CasegraphError):
    """Malformed N-Triples input. Carries the 1-based line number when known."""

    def __init__(self, line: int | None, message: str):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class QueryError(CasegraphError):
    """Malformed query text or a projection of a variable no pattern binds."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ConfigError(CasegraphError):
    """Missing or invalid pipeline configuration."""
