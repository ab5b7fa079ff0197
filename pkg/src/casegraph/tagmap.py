"""Conversion between dependency-style POS tags and EAGLES tags.

A mapping table is a set of rules, each keyed by a coarse category plus a
(possibly empty) bag of ``key=value`` morphological features, yielding one
EAGLES tag. Rules live in a CSV file; a companion manifest CSV pins the
expected number of rules per category so an edited or truncated rules file
fails loudly at load time.

Source tags to be converted are written ``CATEGORY|key=value|key=value``
(for example ``VERB|Mood=Ind|Number=Sing|Person=3|Tense=Past``). Lookup is
exact on the feature set first, then falls back to the bare-category rule
if one exists.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass

from .errors import TagMappingError, UnmappedTagError
from .model import Document, Sentence, Token

log = logging.getLogger(__name__)

CATEGORIES = (
    "NOUN",
    "VERB",
    "PROPN",
    "PRON",
    "ADJ",
    "DET",
    "AUX",
    "ADP",
    "NUM",
    "PUNCT",
    "CCONJ",
    "SCONJ",
    "INTJ",
    "ADV",
)

FeatureKey = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class MappingRule:
    category: str
    features: FeatureKey
    eagles: str


@dataclass(frozen=True)
class MappingTable:
    rules: tuple[MappingRule, ...]

    def __post_init__(self) -> None:
        index: dict[tuple[str, FeatureKey], str] = {}
        for rule in self.rules:
            key = (rule.category, rule.features)
            if key in index:
                raise TagMappingError(f"duplicate mapping rule for {_format_key(key)}")
            index[key] = rule.eagles
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.rules)

    def count_by_category(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for rule in self.rules:
            counts[rule.category] = counts.get(rule.category, 0) + 1
        return counts

    def lookup(self, category: str, features: FeatureKey) -> str | None:
        return self._index.get((category, features))  # type: ignore[attr-defined]


def _format_key(key: tuple[str, FeatureKey]) -> str:
    category, features = key
    if not features:
        return category
    return category + "|" + "|".join(f"{k}={v}" for k, v in features)


def canonical_features(pairs: list[tuple[str, str]]) -> FeatureKey:
    return tuple(sorted(pairs))


# ---------------------------------------------------------------------------
# loading

def load_mapping_table(rules_csv: str, manifest_csv: str) -> MappingTable:
    """Parse the rules CSV and check it against the manifest CSV.

    The manifest lists ``category,count`` rows and ends with ``TOTAL,<n>``;
    any mismatch with the actual rule counts raises TagMappingError.
    """
    rules: list[MappingRule] = []
    for row_no, row in _csv_rows(rules_csv):
        if len(row) != 3:
            raise TagMappingError(f"rules row {row_no}: expected 3 columns, got {len(row)}")
        category, features_text, eagles = (cell.strip() for cell in row)
        if category not in CATEGORIES:
            raise TagMappingError(f"rules row {row_no}: unknown category {category!r}")
        if not eagles:
            raise TagMappingError(f"rules row {row_no}: empty EAGLES tag")
        rules.append(
            MappingRule(
                category=category,
                features=_parse_features(features_text, row_no),
                eagles=eagles,
            )
        )
    table = MappingTable(tuple(rules))

    expected: dict[str, int] = {}
    total: int | None = None
    for row_no, row in _csv_rows(manifest_csv):
        if len(row) != 2:
            raise TagMappingError(
                f"manifest row {row_no}: expected 2 columns, got {len(row)}"
            )
        name, count_text = (cell.strip() for cell in row)
        try:
            count = int(count_text)
        except ValueError:
            raise TagMappingError(
                f"manifest row {row_no}: non-integer count {count_text!r}"
            ) from None
        if name == "TOTAL":
            total = count
        elif name in CATEGORIES:
            if name in expected:
                raise TagMappingError(f"manifest row {row_no}: duplicate category {name}")
            expected[name] = count
        else:
            raise TagMappingError(f"manifest row {row_no}: unknown category {name!r}")
    if total is None:
        raise TagMappingError("manifest is missing the TOTAL row")

    actual = table.count_by_category()
    for name, count in expected.items():
        if actual.get(name, 0) != count:
            raise TagMappingError(
                f"manifest expects {count} {name} rules, rules file has "
                f"{actual.get(name, 0)}"
            )
    for name in actual:
        if name not in expected:
            raise TagMappingError(f"rules file has {name} rules not listed in manifest")
    if len(table) != total:
        raise TagMappingError(
            f"manifest expects {total} rules in total, rules file has {len(table)}"
        )
    return table


def _csv_rows(content: str) -> list[tuple[int, list[str]]]:
    rows: list[tuple[int, list[str]]] = []
    for line_no, line in enumerate(content.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        rows.extend(
            (line_no, row) for row in csv.reader(io.StringIO(line)) if row
        )
    return rows


def _parse_features(text: str, row_no: int) -> FeatureKey:
    if not text:
        return ()
    pairs: list[tuple[str, str]] = []
    for item in text.split("|"):
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise TagMappingError(
                f"rules row {row_no}: malformed feature {item!r} "
                "(expected key=value)"
            )
        pairs.append((key, value))
    features = canonical_features(pairs)
    if len(dict(features)) != len(features):
        raise TagMappingError(f"rules row {row_no}: repeated feature key in {text!r}")
    return features


# ---------------------------------------------------------------------------
# conversion

def parse_source_tag(tag: str) -> tuple[str, FeatureKey]:
    """Split a ``CATEGORY|key=value|...`` source tag into its lookup key."""
    head, _, rest = tag.partition("|")
    category = head.strip()
    if category not in CATEGORIES:
        raise UnmappedTagError(f"unknown source category {category!r} in tag {tag!r}")
    if not rest:
        return category, ()
    pairs: list[tuple[str, str]] = []
    for item in rest.split("|"):
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise UnmappedTagError(f"malformed feature {item!r} in tag {tag!r}")
        pairs.append((key, value))
    return category, canonical_features(pairs)


def convert_tag(table: MappingTable, tag: str) -> str:
    """Convert one source tag to EAGLES, or raise UnmappedTagError.

    Exact feature match wins; otherwise the bare-category rule applies.
    """
    category, features = parse_source_tag(tag)
    eagles = table.lookup(category, features)
    if eagles is None and features:
        eagles = table.lookup(category, ())
    if eagles is None:
        raise UnmappedTagError(f"no mapping rule for tag {tag!r}")
    return eagles


def convert_document(table: MappingTable, doc: Document) -> Document:
    """Return a copy of ``doc`` with every POS column converted to EAGLES.

    Tokens whose tag only matches through the bare-category fallback are
    counted and reported once via the logger; a token with no applicable
    rule at all raises UnmappedTagError naming its coordinates.
    """
    fallbacks = 0
    sentences: list[Sentence] = []
    for sent in doc.sentences:
        tokens: list[Token] = []
        for tok in sent.tokens:
            try:
                category, features = parse_source_tag(tok.pos)
                eagles = table.lookup(category, features)
                if eagles is None and features:
                    eagles = table.lookup(category, ())
                    if eagles is not None:
                        fallbacks += 1
                if eagles is None:
                    raise UnmappedTagError(f"no mapping rule for tag {tok.pos!r}")
            except UnmappedTagError as exc:
                raise UnmappedTagError(
                    f"{doc.doc_id}: sentence {sent.index}, token {tok.index}: {exc}"
                ) from None
            tokens.append(
                Token(
                    index=tok.index,
                    surface=tok.surface,
                    lemma=tok.lemma,
                    pos=eagles,
                    ner=tok.ner,
                    head=tok.head,
                    deprel=tok.deprel,
                    roles=dict(tok.roles),
                )
            )
        sentences.append(
            Sentence(index=sent.index, tokens=tuple(tokens), predicates=sent.predicates)
        )
    if fallbacks:
        log.info(
            "%s: %d token(s) mapped through the bare-category fallback",
            doc.doc_id,
            fallbacks,
        )
    return Document(doc.doc_id, doc.case_id, doc.language, tuple(sentences))
