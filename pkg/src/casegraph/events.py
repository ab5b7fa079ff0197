"""Turning role-annotated sentences into structured event records.

Every predicate of a sentence yields one Event. Tokens carrying the A0
role for that predicate become actor mentions, A1 tokens become object
mentions, and the first AM-LOC / AM-TMP token becomes the place / time
(later ones are logged and ignored). A mention's text is the full
dependency subtree of the role-bearing token, so "banco" annotated inside
"o banco de Évora" surfaces as the whole phrase. Organization and currency
named-entity runs in the sentence are attached to each of its events as
context.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from .model import Document, RoleLabel, Sentence

log = logging.getLogger(__name__)

_STRIP_CHARS = ".,;:!?…\"'`«»()[]{}“”‘’—–"


@dataclass(frozen=True)
class Mention:
    """One entity mention: raw span text, matching key, and head token index."""

    text: str
    normalized: str
    head_index: int  # 1-based index of the role-bearing (or run-initial) token


@dataclass(frozen=True)
class Provenance:
    doc_id: str
    case_id: str
    sentence: int
    predicate: int


@dataclass(frozen=True)
class Event:
    event_id: str
    action: str
    provenance: Provenance
    actors: tuple[Mention, ...] = ()
    objects: tuple[Mention, ...] = ()
    place: Mention | None = None
    time: Mention | None = None
    organizations: tuple[Mention, ...] = ()
    currencies: tuple[Mention, ...] = ()

    def mentions(self) -> tuple[Mention, ...]:
        """All mentions attached to the event, in slot order."""
        out: list[Mention] = list(self.actors) + list(self.objects)
        if self.place is not None:
            out.append(self.place)
        if self.time is not None:
            out.append(self.time)
        out.extend(self.organizations)
        out.extend(self.currencies)
        return tuple(out)


def normalize_mention(text: str) -> str:
    """Lowercase, trim outer punctuation, collapse inner whitespace."""
    return " ".join(text.lower().strip(_STRIP_CHARS).split())


def expand_span(sentence: Sentence, index: int) -> str:
    """Surface text of the dependency subtree rooted at the 1-based ``index``."""
    children: dict[int, list[int]] = {}
    for pos, tok in enumerate(sentence.tokens):
        if tok.head is not None:
            children.setdefault(tok.head, []).append(pos)

    collected: set[int] = set()
    stack = [index - 1]
    while stack:
        pos = stack.pop()
        if pos in collected:
            continue
        collected.add(pos)
        stack.extend(children.get(pos, ()))
    return " ".join(sentence.tokens[pos].surface for pos in sorted(collected))


def _mention_at(sentence: Sentence, index: int) -> Mention:
    text = expand_span(sentence, index)
    return Mention(text=text, normalized=normalize_mention(text), head_index=index)


def _entity_runs(sentence: Sentence, label: str) -> tuple[Mention, ...]:
    """Maximal runs of adjacent tokens sharing the NER label, one Mention each."""
    runs: list[Mention] = []
    current: list[int] = []
    for pos, tok in enumerate(sentence.tokens):
        if tok.ner == label:
            current.append(pos)
        elif current:
            runs.append(_run_mention(sentence, current))
            current = []
    if current:
        runs.append(_run_mention(sentence, current))
    return tuple(runs)


def _run_mention(sentence: Sentence, positions: list[int]) -> Mention:
    text = " ".join(sentence.tokens[pos].surface for pos in positions)
    return Mention(
        text=text,
        normalized=normalize_mention(text),
        head_index=positions[0] + 1,
    )


def extract_events(doc: Document) -> list[Event]:
    """One Event per predicate of every sentence, in document order."""
    events: list[Event] = []
    for sent in doc.sentences:
        organizations = _entity_runs(sent, "ORGANIZATION")
        currencies = _entity_runs(sent, "CURRENCY")
        for pred in sent.predicates:
            events.append(
                _build_event(doc, sent, pred, organizations, currencies)
            )
    return events


def _build_event(
    doc: Document,
    sent: Sentence,
    pred: int,
    organizations: tuple[Mention, ...],
    currencies: tuple[Mention, ...],
) -> Event:
    verb = sent.token_at(pred)
    actors: list[Mention] = []
    objects: list[Mention] = []
    place: Mention | None = None
    time: Mention | None = None

    for tok in sent.tokens:
        label = tok.roles.get(pred)
        if label is None:
            continue
        if label is RoleLabel.A0:
            actors.append(_mention_at(sent, tok.index))
        elif label is RoleLabel.A1:
            objects.append(_mention_at(sent, tok.index))
        elif label is RoleLabel.AM_LOC:
            if place is None:
                place = _mention_at(sent, tok.index)
            else:
                log.warning(
                    "%s sentence %d predicate %d: extra AM-LOC at token %d ignored",
                    doc.doc_id, sent.index, pred, tok.index,
                )
        elif label is RoleLabel.AM_TMP:
            if time is None:
                time = _mention_at(sent, tok.index)
            else:
                log.warning(
                    "%s sentence %d predicate %d: extra AM-TMP at token %d ignored",
                    doc.doc_id, sent.index, pred, tok.index,
                )

    return Event(
        event_id=f"{doc.doc_id}:s{sent.index}:p{pred}",
        action=verb.lemma or verb.surface.lower(),
        provenance=Provenance(doc.doc_id, doc.case_id, sent.index, pred),
        actors=tuple(actors),
        objects=tuple(objects),
        place=place,
        time=time,
        organizations=organizations,
        currencies=currencies,
    )


# ---------------------------------------------------------------------------
# JSON rendering

def _mention_dict(m: Mention) -> dict:
    return {"text": m.text, "normalized": m.normalized, "head_index": m.head_index}


def event_to_dict(event: Event) -> dict:
    return {
        "event_id": event.event_id,
        "action": event.action,
        "actors": [_mention_dict(m) for m in event.actors],
        "objects": [_mention_dict(m) for m in event.objects],
        "place": _mention_dict(event.place) if event.place else None,
        "time": _mention_dict(event.time) if event.time else None,
        "organizations": [_mention_dict(m) for m in event.organizations],
        "currencies": [_mention_dict(m) for m in event.currencies],
        "provenance": {
            "doc_id": event.provenance.doc_id,
            "case_id": event.provenance.case_id,
            "sentence": event.provenance.sentence,
            "predicate": event.provenance.predicate,
        },
    }


def events_to_jsonl(events: list[Event]) -> str:
    return "".join(
        json.dumps(event_to_dict(e), ensure_ascii=False, sort_keys=True) + "\n"
        for e in events
    )
