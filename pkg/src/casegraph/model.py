"""Layered annotation model shared by every pipeline stage.

A Document is a list of Sentences; a Sentence is a list of Tokens carrying
surface form, lemma, EAGLES part-of-speech tag, named-entity label,
dependency head, and verb-relative role assignments. Instances are frozen:
once built they are safe to share across threads.

Index conventions: Token.index is the 1-based position within its sentence
and is the value role keys and predicate lists refer to. Token.head is the
0-based position of the head token in the sentence's token list, or None
for the root.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

NER_LABELS = frozenset({"PERSON", "LOCATION", "ORGANIZATION", "DATE_TIME", "CURRENCY"})

#: EAGLES prefix conventions tied to NER labels.
DATE_POS_PREFIX = "W"
CURRENCY_POS_PREFIX = "Zm"
VERB_POS_PREFIX = "V"


class RoleLabel(enum.Enum):
    """Verb-relative semantic roles. The inventory is closed."""

    A0 = "A0"
    A1 = "A1"
    AM_TMP = "AM-TMP"
    AM_LOC = "AM-LOC"

    @classmethod
    def parse(cls, text: str) -> "RoleLabel | None":
        """Return the label for ``text``, or None when the string is not one of the four roles."""
        for label in cls:
            if label.value == text:
                return label
        return None


@dataclass(frozen=True)
class Token:
    index: int
    surface: str
    lemma: str
    pos: str
    ner: str | None = None
    head: int | None = None
    deprel: str = ""
    roles: dict[int, RoleLabel] = field(default_factory=dict)

    def is_verb(self) -> bool:
        return self.pos.startswith(VERB_POS_PREFIX)


@dataclass(frozen=True)
class Sentence:
    index: int
    tokens: tuple[Token, ...]
    predicates: tuple[int, ...] = ()

    @classmethod
    def from_tokens(cls, index: int, tokens: tuple[Token, ...]) -> "Sentence":
        """Build a sentence, deriving the predicate list from the tokens' role keys."""
        by_index = {tok.index: tok for tok in tokens}
        keys = {key for tok in tokens for key in tok.roles}
        predicates = tuple(
            sorted(k for k in keys if k in by_index and by_index[k].is_verb())
        )
        return cls(index=index, tokens=tokens, predicates=predicates)

    def token_at(self, index: int) -> Token:
        """Token with the given 1-based index."""
        return self.tokens[index - 1]


@dataclass(frozen=True)
class Document:
    doc_id: str
    case_id: str
    language: str
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True)
class Violation:
    """One broken invariant, locatable by sentence and token index."""

    sentence: int | None
    token: int | None
    rule: str
    detail: str

    def __str__(self) -> str:
        where = []
        if self.sentence is not None:
            where.append(f"sentence {self.sentence}")
        if self.token is not None:
            where.append(f"token {self.token}")
        location = ", ".join(where) or "document"
        return f"[{self.rule}] {location}: {self.detail}"


def validate_document(doc: Document) -> list[Violation]:
    """Check every model invariant; return one Violation per breach.

    Never raises: a structurally weird document yields descriptors, not
    exceptions. Pure and idempotent.
    """
    out: list[Violation] = []
    if not doc.doc_id:
        out.append(Violation(None, None, "empty-doc-id", "doc_id must be non-empty"))
    if not doc.case_id:
        out.append(Violation(None, None, "empty-case-id", "case_id must be non-empty"))

    for position, sent in enumerate(doc.sentences):
        out.extend(_validate_sentence(sent, position))
    return out


def _validate_sentence(sent: Sentence, position: int) -> list[Violation]:
    out: list[Violation] = []
    s = sent.index
    if sent.index != position:
        out.append(
            Violation(s, None, "sentence-index-mismatch",
                      f"sentence at position {position} carries index {sent.index}")
        )
    n = len(sent.tokens)
    if n == 0:
        out.append(Violation(s, None, "empty-sentence", "sentence has no tokens"))
        return out

    roots = 0
    for pos0, tok in enumerate(sent.tokens):
        if tok.index != pos0 + 1:
            out.append(
                Violation(s, tok.index, "token-index-mismatch",
                          f"token at position {pos0} carries index {tok.index}")
            )
        if tok.ner is not None and tok.ner not in NER_LABELS:
            out.append(Violation(s, tok.index, "unknown-ner-label", f"ner={tok.ner!r}"))
        if tok.pos.startswith(DATE_POS_PREFIX) and tok.ner not in (None, "DATE_TIME"):
            out.append(
                Violation(s, tok.index, "date-pos-ner-mismatch",
                          f"pos {tok.pos!r} requires DATE_TIME, got {tok.ner!r}")
            )
        if tok.pos.startswith(CURRENCY_POS_PREFIX) and tok.ner not in (None, "CURRENCY"):
            out.append(
                Violation(s, tok.index, "currency-pos-ner-mismatch",
                          f"pos {tok.pos!r} requires CURRENCY, got {tok.ner!r}")
            )
        if tok.head is None:
            roots += 1
        else:
            if not 0 <= tok.head < n:
                out.append(
                    Violation(s, tok.index, "head-out-of-range",
                              f"head {tok.head} outside 0..{n - 1}")
                )
            elif tok.head == pos0:
                out.append(Violation(s, tok.index, "self-head", "token is its own head"))
        for key in tok.roles:
            if not 1 <= key <= n:
                out.append(
                    Violation(s, tok.index, "role-key-missing-token",
                              f"role key {key} has no token")
                )
            elif not sent.token_at(key).is_verb():
                out.append(
                    Violation(s, tok.index, "role-key-not-verb",
                              f"role key {key} points at pos {sent.token_at(key).pos!r}")
                )

    if roots != 1:
        out.append(Violation(s, None, "root-count", f"expected exactly 1 root, found {roots}"))
    out.extend(_find_head_cycles(sent))

    role_keys = {key for tok in sent.tokens for key in tok.roles}
    for pred in sent.predicates:
        if pred not in role_keys:
            out.append(
                Violation(s, pred, "predicate-not-referenced",
                          f"predicate {pred} has no role filler")
            )
        if not 1 <= pred <= n:
            out.append(Violation(s, pred, "predicate-missing-token", f"predicate {pred} has no token"))
        elif not sent.token_at(pred).is_verb():
            out.append(
                Violation(s, pred, "predicate-not-verb",
                          f"predicate {pred} has pos {sent.token_at(pred).pos!r}")
            )
    return out


def _find_head_cycles(sent: Sentence) -> list[Violation]:
    # Walk head chains; a walk longer than the sentence proves a cycle.
    out = []
    n = len(sent.tokens)
    flagged: set[int] = set()
    for pos0 in range(n):
        seen = []
        cur: int | None = pos0
        while cur is not None and cur not in flagged:
            if cur in seen:
                cycle = seen[seen.index(cur):]
                flagged.update(cycle)
                if len(cycle) > 1:  # length-1 cycles are already reported as self-head
                    out.append(
                        Violation(
                            sent.index,
                            sent.tokens[cur].index,
                            "head-cycle",
                            "head chain " + " -> ".join(str(sent.tokens[i].index) for i in cycle),
                        )
                    )
                break
            seen.append(cur)
            head = sent.tokens[cur].head
            cur = head if head is not None and 0 <= head < n else None
    return out
