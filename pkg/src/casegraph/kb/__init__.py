"""Triple store, queries, serialization, and graph population."""

from .ntriples import parse, serialize, serialize_term, serialize_triple
from .populate import (
    DEFAULT_NAMESPACE,
    RDF_TYPE,
    RDFS_LABEL,
    RDFS_SUBCLASS_OF,
    SchemaVocabulary,
    event_triples,
    load_schema,
    match_triples,
    populate,
    schema_triples,
)
from .query import (
    Query,
    QueryForm,
    ResultTable,
    ask,
    construct,
    describe,
    evaluate,
    insert,
    delete,
    parse_query,
    select,
    solve,
)
from .store import Term, TermKind, Triple, TriplePattern, TripleStore, Var, unify

__all__ = [
    "DEFAULT_NAMESPACE",
    "RDF_TYPE",
    "RDFS_LABEL",
    "RDFS_SUBCLASS_OF",
    "Query",
    "QueryForm",
    "ResultTable",
    "SchemaVocabulary",
    "Term",
    "TermKind",
    "Triple",
    "TriplePattern",
    "TripleStore",
    "Var",
    "ask",
    "construct",
    "delete",
    "describe",
    "evaluate",
    "event_triples",
    "insert",
    "load_schema",
    "match_triples",
    "parse",
    "parse_query",
    "populate",
    "schema_triples",
    "select",
    "serialize",
    "serialize_term",
    "serialize_triple",
    "solve",
    "unify",
]
