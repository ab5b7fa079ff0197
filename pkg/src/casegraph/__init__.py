"""casegraph: annotated criminal-case documents to a linked knowledge base.

The pipeline stages, in order:

1. ``ingest`` — read/write the annotated-corpus format; a rule-based
   baseline annotator covers raw text.
2. ``tagmap`` — convert dependency-style POS tags to EAGLES tags through a
   manifest-checked rule table.
3. ``events`` — one structured event per predicate, with actor / object /
   place / time mentions expanded to full dependency subtrees.
4. ``lexicon`` — exact and edit-distance matching of event strings against
   classified thesauri.
5. ``kb`` — triple store, population, queries, and canonical N-Triples.

``distance`` holds the Levenshtein kernel both stages above share; it runs
on numba or pure numpy, selected by CASEGRAPH_DISTANCE_BACKEND.
"""

from .distance import active_backend, levenshtein
from .errors import (
    CasegraphError,
    ConfigError,
    CorpusFormatError,
    NTriplesError,
    QueryError,
    TagMappingError,
    ThesaurusError,
    UnmappedTagError,
)
from .events import Event, Mention, Provenance, extract_events
from .ingest import annotate_baseline, parse_corpus, serialize_corpus
from .lexicon import (
    FuzzyPolicy,
    LexiconEntry,
    MatchMethod,
    MatchResult,
    TermCategory,
    TermSource,
    Thesaurus,
    load_thesaurus,
    match_events,
)
from .model import Document, RoleLabel, Sentence, Token, validate_document
from .tagmap import MappingTable, convert_document, convert_tag, load_mapping_table

__version__ = "0.1.0"

__all__ = [
    "CasegraphError",
    "ConfigError",
    "CorpusFormatError",
    "Document",
    "Event",
    "FuzzyPolicy",
    "LexiconEntry",
    "MappingTable",
    "MatchMethod",
    "MatchResult",
    "Mention",
    "NTriplesError",
    "Provenance",
    "QueryError",
    "RoleLabel",
    "Sentence",
    "TagMappingError",
    "TermCategory",
    "TermSource",
    "Thesaurus",
    "Token",
    "UnmappedTagError",
    "active_backend",
    "annotate_baseline",
    "convert_document",
    "convert_tag",
    "extract_events",
    "levenshtein",
    "load_mapping_table",
    "load_thesaurus",
    "match_events",
    "parse_corpus",
    "serialize_corpus",
    "validate_document",
    "__version__",
]
