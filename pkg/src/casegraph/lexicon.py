"""Classified thesaurus loading and term matching for event records.

A thesaurus file is TSV with four columns — term, category, concept IRI,
source — where category is one of Actor, Event, Place, Object. A manifest
CSV pins per-category entry counts (plus a TOTAL row) so the data files
cannot drift silently. Matching is case-insensitive: exact lookup first,
then a Levenshtein scan whose allowed distance grows with the length of
the query string (short words must match exactly; "frauda" still finds
"fraud").
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass

from .distance import levenshtein
from .errors import ThesaurusError


class TermCategory(enum.Enum):
    ACTOR = "Actor"
    EVENT = "Event"
    PLACE = "Place"
    OBJECT = "Object"

    @classmethod
    def parse(cls, text: str) -> "TermCategory":
        for member in cls:
            if member.value == text:
                return member
        raise ThesaurusError(f"unknown term category {text!r}")


class TermSource(enum.Enum):
    EUROVOC_CRIMINAL_LAW = "eurovoc"
    EXTENDED_ONTOLOGY = "extended"

    @classmethod
    def parse(cls, text: str) -> "TermSource":
        for member in cls:
            if member.value == text:
                return member
        raise ThesaurusError(f"unknown term source {text!r}")


class MatchMethod(enum.Enum):
    EXACT = "EXACT"
    LEVENSHTEIN = "LEVENSHTEIN"


@dataclass(frozen=True)
class LexiconEntry:
    term: str
    category: TermCategory
    concept_iri: str
    source: TermSource


@dataclass(frozen=True)
class Thesaurus:
    entries: tuple[LexiconEntry, ...]

    def __post_init__(self) -> None:
        index: dict[str, LexiconEntry] = {}
        for entry in self.entries:
            key = entry.term.lower()
            if key in index:
                raise ThesaurusError(
                    f"terms {index[key].term!r} and {entry.term!r} collide "
                    "case-insensitively"
                )
            index[key] = entry
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, lowercase_term: str) -> LexiconEntry | None:
        return self._index.get(lowercase_term)  # type: ignore[attr-defined]

    def count_by_category(self) -> dict[TermCategory, int]:
        counts: dict[TermCategory, int] = {}
        for entry in self.entries:
            counts[entry.category] = counts.get(entry.category, 0) + 1
        return counts


@dataclass(frozen=True)
class MatchResult:
    """One thesaurus hit for one mention (or action) string."""

    surface: str  # the full normalized mention the hit belongs to
    term: str
    category: TermCategory
    concept_iri: str
    source: TermSource
    method: MatchMethod
    distance: int

    def sort_key(self) -> tuple:
        return (self.distance, self.term.lower(), self.surface, self.concept_iri)


@dataclass(frozen=True)
class FuzzyPolicy:
    """Length-tiered distance budget: (min_query_length, max_distance) pairs.

    Tiers are checked in descending min-length order; the first tier whose
    minimum the query length meets supplies the budget. The default allows
    two edits for queries of eight or more characters, one edit from four
    characters, and none below that.
    """

    tiers: tuple[tuple[int, int], ...] = ((8, 2), (4, 1), (0, 0))

    def __post_init__(self) -> None:
        if not self.tiers:
            raise ValueError("FuzzyPolicy needs at least one tier")
        last = None
        for min_len, dist in self.tiers:
            if min_len < 0 or dist < 0:
                raise ValueError(f"negative tier value in {self.tiers}")
            if last is not None and min_len >= last:
                raise ValueError("tiers must be in strictly descending min-length order")
            last = min_len
        if self.tiers[-1][0] != 0:
            raise ValueError("the final tier must start at length 0")

    def threshold(self, length: int) -> int:
        for min_len, dist in self.tiers:
            if length >= min_len:
                return dist
        return 0

    @classmethod
    def flat(cls, max_distance: int) -> "FuzzyPolicy":
        """A single-tier policy: the same budget at every query length."""
        return cls(tiers=((0, max_distance),))


# ---------------------------------------------------------------------------
# loading

def load_thesaurus(tsv_content: str, manifest_content: str) -> Thesaurus:
    """Parse a thesaurus TSV and verify it against its manifest CSV."""
    entries: list[LexiconEntry] = []
    for line_no, line in enumerate(tsv_content.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) != 4:
            raise ThesaurusError(
                f"line {line_no}: expected 4 tab-separated columns, got {len(columns)}"
            )
        term, category_text, concept_iri, source_text = (c.strip() for c in columns)
        if not term:
            raise ThesaurusError(f"line {line_no}: empty term")
        if not concept_iri:
            raise ThesaurusError(f"line {line_no}: empty concept IRI for {term!r}")
        entries.append(
            LexiconEntry(
                term=term,
                category=TermCategory.parse(category_text),
                concept_iri=concept_iri,
                source=TermSource.parse(source_text),
            )
        )
    thesaurus = Thesaurus(tuple(entries))
    _check_manifest(thesaurus, manifest_content)
    return thesaurus


def _check_manifest(thesaurus: Thesaurus, manifest_content: str) -> None:
    expected: dict[TermCategory, int] = {}
    total: int | None = None
    for line_no, line in enumerate(manifest_content.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        for row in csv.reader(io.StringIO(line)):
            if not row:
                continue
            if len(row) != 2:
                raise ThesaurusError(
                    f"manifest line {line_no}: expected 2 columns, got {len(row)}"
                )
            name, count_text = (cell.strip() for cell in row)
            try:
                count = int(count_text)
            except ValueError:
                raise ThesaurusError(
                    f"manifest line {line_no}: non-integer count {count_text!r}"
                ) from None
            if name == "TOTAL":
                total = count
            else:
                category = TermCategory.parse(name)
                if category in expected:
                    raise ThesaurusError(
                        f"manifest line {line_no}: duplicate category {name}"
                    )
                expected[category] = count
    if total is None:
        raise ThesaurusError("manifest is missing the TOTAL row")

    actual = thesaurus.count_by_category()
    for category, count in expected.items():
        if actual.get(category, 0) != count:
            raise ThesaurusError(
                f"manifest expects {count} {category.value} terms, "
                f"file has {actual.get(category, 0)}"
            )
    for category in actual:
        if category not in expected:
            raise ThesaurusError(
                f"file has {category.value} terms not listed in the manifest"
            )
    if len(thesaurus) != total:
        raise ThesaurusError(
            f"manifest expects {total} terms in total, file has {len(thesaurus)}"
        )


# ---------------------------------------------------------------------------
# matching

def match_exact(thesaurus: Thesaurus, text: str) -> LexiconEntry | None:
    """Case-insensitive index lookup. ``text`` must already be lowercase."""
    if text != text.lower():
        raise ValueError(f"match_exact expects lowercase input, got {text!r}")
    return thesaurus.get(text)


def match_fuzzy(
    thesaurus: Thesaurus, text: str, policy: FuzzyPolicy
) -> list[tuple[LexiconEntry, int]]:
    """Scan every term; keep those within the policy budget for ``text``.

    Results are sorted by (distance, term). Exact hits appear with
    distance 0. Terms whose length differs from the query by more than the
    budget are skipped without computing the distance.
    """
    if text != text.lower():
        raise ValueError(f"match_fuzzy expects lowercase input, got {text!r}")
    budget = policy.threshold(len(text))
    hits: list[tuple[LexiconEntry, int]] = []
    for entry in thesaurus.entries:
        term = entry.term.lower()
        if abs(len(term) - len(text)) > budget:
            continue
        distance = levenshtein(text, term)
        if distance <= budget:
            hits.append((entry, distance))
    hits.sort(key=lambda hit: (hit[1], hit[0].term.lower()))
    return hits


def candidate_pieces(text: str) -> list[str]:
    """Strings to try against the thesaurus: the mention, then its words."""
    pieces = [text]
    words = text.split()
    if len(words) > 1:
        pieces.extend(words)
    seen: set[str] = set()
    out: list[str] = []
    for piece in pieces:
        if piece and piece not in seen:
            seen.add(piece)
            out.append(piece)
    return out


def match_mention(
    thesaurus: Thesaurus, text: str, policy: FuzzyPolicy
) -> list[MatchResult]:
    """Match one normalized mention string against the thesaurus.

    Both the whole string and (for multiword mentions) each word are tried;
    an entry's distance is the best any piece achieved. All results carry
    the full mention as their ``surface`` so callers can map hits back to
    the mention they came from.
    """
    best: dict[str, tuple[int, LexiconEntry]] = {}
    for piece in candidate_pieces(text):
        for entry, distance in match_fuzzy(thesaurus, piece, policy):
            key = entry.term.lower()
            if key not in best or distance < best[key][0]:
                best[key] = (distance, entry)

    results = [
        MatchResult(
            surface=text,
            term=entry.term,
            category=entry.category,
            concept_iri=entry.concept_iri,
            source=entry.source,
            method=MatchMethod.EXACT if distance == 0 else MatchMethod.LEVENSHTEIN,
            distance=distance,
        )
        for distance, entry in best.values()
    ]
    results.sort(key=MatchResult.sort_key)
    return results


def match_events(
    thesaurus: Thesaurus, events, policy: FuzzyPolicy | None = None
) -> dict[str, list[MatchResult]]:
    """Match every event's action and mentions; keyed by event id.

    The strings tried per event are the action plus the normalized actor,
    object, place and time mentions (organization and currency context is
    named-entity typed already and skips thesaurus matching). Duplicate
    strings within an event are matched once.
    """
    if policy is None:
        policy = FuzzyPolicy()
    matched: dict[str, list[MatchResult]] = {}
    for event in events:
        strings: list[str] = [event.action.lower()]
        for mention in (
            list(event.actors)
            + list(event.objects)
            + ([event.place] if event.place else [])
            + ([event.time] if event.time else [])
        ):
            strings.append(mention.normalized)
        seen: set[str] = set()
        results: list[MatchResult] = []
        for text in strings:
            if not text or text in seen:
                continue
            seen.add(text)
            results.extend(match_mention(thesaurus, text, policy))
        results.sort(key=MatchResult.sort_key)
        matched[event.event_id] = results
    return matched
