"""An in-memory triple store with indexed pattern matching.

Terms are IRIs or literals (optionally datatyped); triples require IRIs in
the subject and predicate positions. The store keeps one hash index per
position so pattern matching can start from whichever bound slot is most
selective. Patterns mix concrete terms with named variables; repeated
variables must unify with equal terms.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union


class TermKind(enum.Enum):
    IRI = "iri"
    LITERAL = "literal"


_SCHEME_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")


@dataclass(frozen=True)
class Term:
    kind: TermKind
    value: str
    datatype: str | None = None  # literals only

    def __post_init__(self) -> None:
        if self.kind is TermKind.IRI:
            if self.datatype is not None:
                raise ValueError("an IRI term cannot carry a datatype")
            if not _SCHEME_RE.match(self.value):
                raise ValueError(f"not an absolute IRI: {self.value!r}")
            if any(ch in self.value for ch in "<>\"\n"):
                raise ValueError(f"forbidden character in IRI: {self.value!r}")
        elif self.datatype is not None and not _SCHEME_RE.match(self.datatype):
            raise ValueError(f"datatype is not an absolute IRI: {self.datatype!r}")

    @classmethod
    def iri(cls, value: str) -> "Term":
        return cls(TermKind.IRI, value)

    @classmethod
    def literal(cls, value: str, datatype: str | None = None) -> "Term":
        return cls(TermKind.LITERAL, value, datatype)

    def is_iri(self) -> bool:
        return self.kind is TermKind.IRI


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Term
    obj: Term

    def __post_init__(self) -> None:
        if not self.subject.is_iri():
            raise ValueError("triple subject must be an IRI")
        if not self.predicate.is_iri():
            raise ValueError("triple predicate must be an IRI")


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self) -> None:
        if not self.name or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.name):
            raise ValueError(f"bad variable name {self.name!r}")


PatternSlot = Union[Term, Var]


@dataclass(frozen=True)
class TriplePattern:
    subject: PatternSlot
    predicate: PatternSlot
    obj: PatternSlot

    def slots(self) -> tuple[PatternSlot, PatternSlot, PatternSlot]:
        return (self.subject, self.predicate, self.obj)

    def variables(self) -> tuple[str, ...]:
        """Variable names in subject, predicate, object order, deduped."""
        names: list[str] = []
        for slot in self.slots():
            if isinstance(slot, Var) and slot.name not in names:
                names.append(slot.name)
        return tuple(names)

    def substitute(self, binding: dict[str, Term]) -> "TriplePattern":
        def fill(slot: PatternSlot) -> PatternSlot:
            if isinstance(slot, Var) and slot.name in binding:
                return binding[slot.name]
            return slot

        return TriplePattern(fill(self.subject), fill(self.predicate), fill(self.obj))


def unify(
    pattern: TriplePattern, triple: Triple, binding: dict[str, Term]
) -> dict[str, Term] | None:
    """Extend ``binding`` so the pattern equals the triple, or return None.

    A repeated variable must take the same term in every position it
    occupies. The input binding is never mutated.
    """
    result = dict(binding)
    for slot, term in zip(pattern.slots(), (triple.subject, triple.predicate, triple.obj)):
        if isinstance(slot, Var):
            bound = result.get(slot.name)
            if bound is None:
                result[slot.name] = term
            elif bound != term:
                return None
        elif slot != term:
            return None
    return result


class TripleStore:
    """Set semantics: inserting a triple twice stores it once."""

    def __init__(self, triples: Iterable[Triple] = ()) -> None:
        self._triples: set[Triple] = set()
        self._by_subject: dict[Term, set[Triple]] = {}
        self._by_predicate: dict[Term, set[Triple]] = {}
        self._by_object: dict[Term, set[Triple]] = {}
        self.insert(triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def triples(self) -> frozenset[Triple]:
        return frozenset(self._triples)

    def insert(self, triples: Iterable[Triple]) -> int:
        """Add triples; the return value counts only ones not already stored."""
        added = 0
        for triple in triples:
            if triple in self._triples:
                continue
            self._triples.add(triple)
            self._by_subject.setdefault(triple.subject, set()).add(triple)
            self._by_predicate.setdefault(triple.predicate, set()).add(triple)
            self._by_object.setdefault(triple.obj, set()).add(triple)
            added += 1
        return added

    def delete(self, pattern: TriplePattern) -> int:
        """Remove every triple the pattern matches; returns how many."""
        doomed = [t for t in self.candidates(pattern) if unify(pattern, t, {}) is not None]
        for triple in doomed:
            self._triples.discard(triple)
            self._discard_index(self._by_subject, triple.subject, triple)
            self._discard_index(self._by_predicate, triple.predicate, triple)
            self._discard_index(self._by_object, triple.obj, triple)
        return len(doomed)

    @staticmethod
    def _discard_index(index: dict[Term, set[Triple]], key: Term, triple: Triple) -> None:
        bucket = index.get(key)
        if bucket is not None:
            bucket.discard(triple)
            if not bucket:
                del index[key]

    def candidates(self, pattern: TriplePattern) -> set[Triple]:
        """Triples worth testing against the pattern: the smallest index
        bucket among its concrete slots, or everything if none is concrete."""
        best: set[Triple] | None = None
        for slot, index in (
            (pattern.subject, self._by_subject),
            (pattern.predicate, self._by_predicate),
            (pattern.obj, self._by_object),
        ):
            if isinstance(slot, Var):
                continue
            bucket = index.get(slot, set())
            if best is None or len(bucket) < len(best):
                best = bucket
        return self._triples if best is None else best

    def matching(self, pattern: TriplePattern) -> list[Triple]:
        return [t for t in self.candidates(pattern) if unify(pattern, t, {}) is not None]
