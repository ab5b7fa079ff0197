"""Mapping event records and thesaurus matches onto graph triples.

Every event becomes an IRI typed as an Event, carrying its action as a
literal and linked to its document; documents link to their case. Each
mention becomes an entity IRI, namespaced by its class so that the same
label names the same node wherever it recurs — that shared node is what
connects events across documents and cases. Thesaurus matches attach the
matched concept IRI to the event (for action hits) or the entity (for
mention hits).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable
from urllib.parse import quote

from ..events import Event, Mention
from ..lexicon import MatchResult, Thesaurus
from .store import Term, Triple, TripleStore

DEFAULT_NAMESPACE = "http://agatha.example/onto#"

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_SUBCLASS_OF = "http://www.w3.org/2000/01/rdf-schema#subClassOf"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"

EVENT_CLASS = "Event"
ACTOR_CLASS = "Actor"
OBJECT_CLASS = "Object"
PLACE_CLASS = "Place"
TIME_CLASS = "Time"
ORGANIZATION_CLASS = "Organization"
CURRENCY_CLASS = "Currency"

CLASS_NAMES = (
    EVENT_CLASS,
    ACTOR_CLASS,
    OBJECT_CLASS,
    PLACE_CLASS,
    TIME_CLASS,
    ORGANIZATION_CLASS,
    CURRENCY_CLASS,
)


@dataclass(frozen=True)
class SchemaVocabulary:
    """IRI mint for one namespace; every graph IRI goes through here."""

    namespace: str = DEFAULT_NAMESPACE

    def __post_init__(self) -> None:
        Term.iri(self.namespace + "x")  # fail fast on a namespace that cannot prefix IRIs

    def class_term(self, name: str) -> Term:
        return Term.iri(self.namespace + name)

    def property_term(self, name: str) -> Term:
        return Term.iri(self.namespace + name)

    def event_term(self, event_id: str) -> Term:
        return Term.iri(self.namespace + "event/" + quote(event_id, safe=""))

    def entity_term(self, class_name: str, label: str) -> Term:
        return Term.iri(
            self.namespace + "entity/" + class_name + "/" + quote(label, safe="")
        )

    def document_term(self, doc_id: str) -> Term:
        return Term.iri(self.namespace + "document/" + quote(doc_id, safe=""))

    def case_term(self, case_id: str) -> Term:
        return Term.iri(self.namespace + "case/" + quote(case_id, safe=""))


_TYPE = Term.iri(RDF_TYPE)
_SUBCLASS_OF = Term.iri(RDFS_SUBCLASS_OF)
_LABEL = Term.iri(RDFS_LABEL)


def _slots(event: Event) -> list[tuple[Mention, str, str]]:
    """(mention, entity class, linking property) for every mention slot."""
    out: list[tuple[Mention, str, str]] = []
    out.extend((m, ACTOR_CLASS, "hasActor") for m in event.actors)
    out.extend((m, OBJECT_CLASS, "hasObject") for m in event.objects)
    if event.place is not None:
        out.append((event.place, PLACE_CLASS, "hasPlace"))
    if event.time is not None:
        out.append((event.time, TIME_CLASS, "hasTime"))
    out.extend((m, ORGANIZATION_CLASS, "hasOrganization") for m in event.organizations)
    out.extend((m, CURRENCY_CLASS, "hasCurrency") for m in event.currencies)
    return out


def event_triples(event: Event, vocab: SchemaVocabulary) -> list[Triple]:
    """The base triples for one event (no thesaurus links)."""
    event_iri = vocab.event_term(event.event_id)
    doc_iri = vocab.document_term(event.provenance.doc_id)
    case_iri = vocab.case_term(event.provenance.case_id)
    triples = [
        Triple(event_iri, _TYPE, vocab.class_term(EVENT_CLASS)),
        Triple(event_iri, vocab.property_term("hasAction"), Term.literal(event.action)),
        Triple(event_iri, vocab.property_term("inDocument"), doc_iri),
        Triple(doc_iri, vocab.property_term("inCase"), case_iri),
    ]
    for mention, class_name, prop in _slots(event):
        entity_iri = vocab.entity_term(class_name, mention.normalized)
        triples.append(Triple(event_iri, vocab.property_term(prop), entity_iri))
        triples.append(Triple(entity_iri, _TYPE, vocab.class_term(class_name)))
        triples.append(Triple(entity_iri, _LABEL, Term.literal(mention.normalized)))
    return triples


def match_triples(
    event: Event, matches: Iterable[MatchResult], vocab: SchemaVocabulary
) -> list[Triple]:
    """linkedConcept triples for one event's thesaurus matches.

    A match whose surface is the event's action links the event IRI to the
    concept; a match whose surface equals a mention's normalized form links
    that mention's entity IRI. Surfaces matching nothing are ignored.
    """
    linked = vocab.property_term("linkedConcept")
    event_iri = vocab.event_term(event.event_id)
    by_surface: dict[str, list[Term]] = {}
    by_surface.setdefault(event.action.lower(), []).append(event_iri)
    for mention, class_name, _ in _slots(event):
        by_surface.setdefault(mention.normalized, []).append(
            vocab.entity_term(class_name, mention.normalized)
        )

    triples: list[Triple] = []
    for match in matches:
        concept = Term.iri(match.concept_iri)
        for subject in by_surface.get(match.surface, ()):
            triples.append(Triple(subject, linked, concept))
    return triples


def populate(
    store: TripleStore,
    events: Iterable[Event],
    matches: dict[str, list[MatchResult]] | None = None,
    vocab: SchemaVocabulary | None = None,
) -> int:
    """Insert all triples for the events (and their matches); returns how
    many were new to the store."""
    if vocab is None:
        vocab = SchemaVocabulary()
    if matches is None:
        matches = {}
    added = 0
    for event in events:
        added += store.insert(event_triples(event, vocab))
        event_matches = matches.get(event.event_id)
        if event_matches:
            added += store.insert(match_triples(event, event_matches, vocab))
    return added


def schema_triples(thesaurus: Thesaurus, vocab: SchemaVocabulary) -> list[Triple]:
    """One subClassOf triple per thesaurus entry, concept under its category class."""
    return [
        Triple(
            Term.iri(entry.concept_iri),
            _SUBCLASS_OF,
            vocab.class_term(entry.category.value),
        )
        for entry in thesaurus.entries
    ]


def load_schema(
    store: TripleStore, thesaurus: Thesaurus, vocab: SchemaVocabulary | None = None
) -> int:
    if vocab is None:
        vocab = SchemaVocabulary()
    return store.insert(schema_triples(thesaurus, vocab))
