"""Corpus file I/O plus a deterministic rule-based baseline annotator.

Corpus file format (UTF-8, LF line endings):

    #doc <doc_id> <case_id> <lang>
    INDEX<TAB>SURFACE<TAB>LEMMA<TAB>POS<TAB>NER<TAB>HEAD<TAB>DEPREL<TAB>ROLES

One token per line, eight tab-separated columns; a blank line ends a
sentence. ``_`` marks an empty NER/DEPREL/ROLES field. HEAD is ``0`` for
the sentence root, otherwise the 1-based index of the head token. ROLES is
``_`` or a ``;``-joined list of ``predIndex:label`` pairs such as ``2:A0``.
Tabs, newlines and backslashes inside a field are escaped as ``\\t``,
``\\n`` and ``\\\\``; a literal single underscore in the DEPREL field
cannot be told apart from the empty marker.

The baseline annotator exists so the pipeline can run end-to-end on raw
text with no trained models: whitespace/punctuation tokenization, lexicon
POS lookup, date/currency tagging by pattern, gazetteer NER, and a crude
nearest-noun role heuristic.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import CorpusFormatError
from .model import (
    CURRENCY_POS_PREFIX,
    DATE_POS_PREFIX,
    NER_LABELS,
    Document,
    RoleLabel,
    Sentence,
    Token,
    validate_document,
)

log = logging.getLogger(__name__)

_COLUMNS = 8
_EMPTY = "_"


@dataclass(frozen=True)
class Gazetteer:
    """A flat list of lowercase surface forms mapped to one NER label."""

    name: str
    label: str
    entries: frozenset[str]


# ---------------------------------------------------------------------------
# field escaping

def escape_field(value: str) -> str:
    return value.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def unescape_field(value: str, line: int | None = None) -> str:
    if "\\" not in value:
        return value
    out: list[str] = []
    i = 0
    while i < len(value):
        ch = value[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(value):
            raise CorpusFormatError(line, "dangling backslash in field")
        nxt = value[i + 1]
        if nxt == "t":
            out.append("\t")
        elif nxt == "n":
            out.append("\n")
        elif nxt == "\\":
            out.append("\\")
        else:
            raise CorpusFormatError(line, f"unknown escape \\{nxt}")
        i += 2
    return "".join(out)


# ---------------------------------------------------------------------------
# parsing

def parse_corpus(content: str) -> list[Document]:
    """Parse annotated-corpus text into validated Documents.

    Raises CorpusFormatError naming the offending line for structural
    problems (column count, HEAD out of range, role pairs referencing a
    missing token, duplicate doc ids) and for any document that fails
    model validation.
    """
    docs: list[Document] = []
    seen_ids: set[str] = set()

    header: tuple[str, str, str] | None = None
    sentences: list[Sentence] = []
    pending: list[tuple[int, Token]] = []  # (line_no, token) of the open sentence

    def close_sentence() -> None:
        if not pending:
            return
        _check_references(pending)
        tokens = tuple(tok for _, tok in pending)
        sentences.append(Sentence.from_tokens(len(sentences), tokens))
        pending.clear()

    def close_document(line_no: int | None) -> None:
        nonlocal header, sentences
        close_sentence()
        if header is None:
            return
        doc_id, case_id, lang = header
        if doc_id in seen_ids:
            raise CorpusFormatError(line_no, f"duplicate doc_id {doc_id!r}")
        seen_ids.add(doc_id)
        docs.append(Document(doc_id, case_id, lang, tuple(sentences)))
        header = None
        sentences = []

    for line_no, line in enumerate(content.split("\n"), start=1):
        if line.startswith("#doc"):
            parts = line.split()
            if len(parts) != 4:
                raise CorpusFormatError(
                    line_no, "expected '#doc <doc_id> <case_id> <lang>'"
                )
            close_document(line_no)
            header = (parts[1], parts[2], parts[3])
            continue
        if not line.strip():
            close_sentence()
            continue
        if header is None:
            raise CorpusFormatError(line_no, "token line before any #doc header")
        pending.append((line_no, _parse_token_line(line, line_no, len(pending))))
    close_document(None)

    for doc in docs:
        violations = validate_document(doc)
        if violations:
            details = "; ".join(str(v) for v in violations)
            raise CorpusFormatError(
                None, f"document {doc.doc_id!r} fails validation: {details}"
            )
    return docs


def _parse_token_line(line: str, line_no: int, position: int) -> Token:
    columns = line.split("\t")
    if len(columns) != _COLUMNS:
        raise CorpusFormatError(
            line_no, f"expected {_COLUMNS} tab-separated columns, got {len(columns)}"
        )
    raw_index, surface, lemma, pos, ner, raw_head, deprel, raw_roles = columns

    index = _parse_int(raw_index, "INDEX", line_no)
    if index != position + 1:
        raise CorpusFormatError(
            line_no, f"token index {index} out of sequence (expected {position + 1})"
        )
    surface = unescape_field(surface, line_no)
    lemma = unescape_field(lemma, line_no)
    pos = unescape_field(pos, line_no)
    if not pos:
        raise CorpusFormatError(line_no, "empty POS column")

    ner_value = None if ner == _EMPTY else unescape_field(ner, line_no)
    if ner_value is not None and ner_value not in NER_LABELS:
        raise CorpusFormatError(line_no, f"unknown NER label {ner_value!r}")

    head_file = _parse_int(raw_head, "HEAD", line_no)
    if head_file < 0:
        raise CorpusFormatError(line_no, f"negative HEAD {head_file}")
    head = None if head_file == 0 else head_file - 1

    deprel_value = "" if deprel == _EMPTY else unescape_field(deprel, line_no)

    roles: dict[int, RoleLabel] = {}
    if raw_roles != _EMPTY:
        for pair in raw_roles.split(";"):
            pred_text, sep, label_text = pair.partition(":")
            if not sep:
                raise CorpusFormatError(line_no, f"malformed ROLES pair {pair!r}")
            pred = _parse_int(pred_text, "ROLES", line_no)
            label = RoleLabel.parse(label_text)
            if label is None:
                log.warning(
                    "line %d: dropping unknown role label %r", line_no, label_text
                )
                continue
            roles[pred] = label

    return Token(
        index=index,
        surface=surface,
        lemma=lemma,
        pos=pos,
        ner=ner_value,
        head=head,
        deprel=deprel_value,
        roles=roles,
    )


def _parse_int(text: str, column: str, line_no: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise CorpusFormatError(line_no, f"non-integer {column} column {text!r}") from None


def _check_references(pending: list[tuple[int, Token]]) -> None:
    n = len(pending)
    for line_no, tok in pending:
        if tok.head is not None and tok.head >= n:
            raise CorpusFormatError(
                line_no, f"HEAD {tok.head + 1} out of range for a {n}-token sentence"
            )
        if tok.head is not None and tok.head == tok.index - 1:
            raise CorpusFormatError(line_no, "HEAD points at the token itself")
        for pred in tok.roles:
            if not 1 <= pred <= n:
                raise CorpusFormatError(
                    line_no,
                    f"ROLES pair references predicate index {pred} "
                    f"missing from a {n}-token sentence",
                )


# ---------------------------------------------------------------------------
# serialization

def serialize_corpus(docs: list[Document]) -> str:
    """Render Documents in the corpus file format; inverse of parse_corpus."""
    for doc in docs:
        violations = validate_document(doc)
        if violations:
            raise ValueError(
                f"document {doc.doc_id!r} fails validation: {violations[0]}"
            )
        for field in (doc.doc_id, doc.case_id, doc.language):
            if not field or any(c.isspace() for c in field):
                raise ValueError(
                    f"document header field {field!r} must be non-empty "
                    "and whitespace-free"
                )

    lines: list[str] = []
    for doc in docs:
        lines.append(f"#doc {doc.doc_id} {doc.case_id} {doc.language}")
        for sent in doc.sentences:
            for tok in sent.tokens:
                lines.append(_format_token_line(tok))
            lines.append("")
    return "".join(line + "\n" for line in lines)


def _format_token_line(tok: Token) -> str:
    if tok.roles:
        roles = ";".join(
            f"{pred}:{label.value}" for pred, label in sorted(tok.roles.items())
        )
    else:
        roles = _EMPTY
    head = 0 if tok.head is None else tok.head + 1
    return "\t".join(
        [
            str(tok.index),
            escape_field(tok.surface),
            escape_field(tok.lemma),
            escape_field(tok.pos),
            tok.ner if tok.ner is not None else _EMPTY,
            str(head),
            escape_field(tok.deprel) if tok.deprel else _EMPTY,
            roles,
        ]
    )


# ---------------------------------------------------------------------------
# resource files

def load_gazetteer(path: str | Path) -> Gazetteer:
    """Read a gazetteer file: ``#label LABEL`` on the first line, one lowercase entry per line."""
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("#label"):
        raise CorpusFormatError(1, f"{path.name}: first line must be '#label <LABEL>'")
    parts = lines[0].split()
    if len(parts) != 2 or parts[1] not in NER_LABELS:
        raise CorpusFormatError(1, f"{path.name}: bad gazetteer label line {lines[0]!r}")
    entries = frozenset(
        line.strip().lower() for line in lines[1:] if line.strip()
    )
    if not entries:
        raise CorpusFormatError(None, f"{path.name}: gazetteer has no entries")
    return Gazetteer(name=path.stem, label=parts[1], entries=entries)


def load_pos_lexicon(path: str | Path) -> dict[str, str]:
    """Read a ``surface<TAB>EAGLES-tag`` lexicon file."""
    lexicon: dict[str, str] = {}
    for line_no, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.startswith("#"):
            continue
        surface, sep, tag = line.partition("\t")
        if not sep or not tag.strip():
            raise CorpusFormatError(line_no, f"bad lexicon line {line!r}")
        lexicon[surface] = tag.strip()
    return lexicon


# ---------------------------------------------------------------------------
# baseline annotator

_DATE_RE = re.compile(r"\d{1,2}/\d{1,2}/\d{2,4}")
_NUMBER_RE = re.compile(r"\d+(?:[.,]\d+)?")
_NUMBER_SYMBOL_RE = re.compile(r"\d+(?:[.,]\d+)?[€$£]")
_TOKEN_RE = re.compile(
    r"\d{1,2}/\d{1,2}/\d{2,4}"  # calendar dates stay one token
    r"|\d+(?:[.,]\d+)?[€$£]?"
    r"|\w+(?:-\w+)*"
    r"|[^\w\s]",
    re.UNICODE,
)

MONTH_NAMES = frozenset(
    """janeiro fevereiro março abril maio junho julho agosto setembro outubro
    novembro dezembro january february march april may june july august
    september october november december""".split()
)

CURRENCY_WORDS = frozenset(
    """euro euros eur dólar dólares dolar dolares dollar dollars real reais
    libra libras usd € $ £""".split()
)

_SENTENCE_END = frozenset({".", "!", "?"})
_DEFAULT_POS = "NCMS000"  # common noun fallback


def annotate_baseline(
    raw: str,
    pos_lexicon: dict[str, str],
    gazetteers: list[Gazetteer],
    *,
    doc_id: str = "doc",
    case_id: str = "case",
    language: str = "pt",
) -> Document:
    """Annotate raw text with rules only. Deterministic; accuracy is not the point.

    POS comes from the lexicon (falling back to a common-noun tag), date and
    currency tokens are recognized by pattern and tagged W / Zm, gazetteers
    assign the remaining NER labels, and every verb becomes a predicate with
    heuristic role fillers: nearest preceding person/organization/noun as A0,
    nearest following noun as A1, first location as AM-LOC, first date as
    AM-TMP.
    """
    if not raw.strip():
        return Document(doc_id, case_id, language, ())

    sentences: list[Sentence] = []
    for surfaces in _split_sentences(_TOKEN_RE.findall(raw)):
        sentences.append(
            _annotate_sentence(len(sentences), surfaces, pos_lexicon, gazetteers)
        )
    return Document(doc_id, case_id, language, tuple(sentences))


def _split_sentences(surfaces: list[str]) -> list[list[str]]:
    out: list[list[str]] = []
    current: list[str] = []
    for surface in surfaces:
        current.append(surface)
        if surface in _SENTENCE_END:
            out.append(current)
            current = []
    if current:
        out.append(current)
    return out


def _annotate_sentence(
    index: int,
    surfaces: list[str],
    pos_lexicon: dict[str, str],
    gazetteers: list[Gazetteer],
) -> Sentence:
    n = len(surfaces)
    pos_tags: list[str] = []
    ners: list[str | None] = []

    for i, surface in enumerate(surfaces):
        lower = surface.lower()
        nxt = surfaces[i + 1].lower() if i + 1 < n else None
        if _DATE_RE.fullmatch(surface) or lower in MONTH_NAMES:
            pos_tags.append(DATE_POS_PREFIX)
            ners.append("DATE_TIME")
        elif _NUMBER_SYMBOL_RE.fullmatch(surface) or (
            _NUMBER_RE.fullmatch(surface) and nxt in CURRENCY_WORDS
        ):
            pos_tags.append(CURRENCY_POS_PREFIX)
            ners.append("CURRENCY")
        else:
            pos_tags.append(
                pos_lexicon.get(surface) or pos_lexicon.get(lower) or _DEFAULT_POS
            )
            ner = None
            for gaz in gazetteers:
                if lower in gaz.entries:
                    ner = gaz.label
                    break
            ners.append(ner)

    verb_positions = [i for i, tag in enumerate(pos_tags) if tag.startswith("V")]
    root = verb_positions[0] if verb_positions else 0
    roles: list[dict[int, RoleLabel]] = [{} for _ in range(n)]
    for v in verb_positions:
        _assign_roles(v, pos_tags, ners, roles)

    tokens = tuple(
        Token(
            index=i + 1,
            surface=surfaces[i],
            lemma=surfaces[i].lower(),
            pos=pos_tags[i],
            ner=ners[i],
            head=None if i == root else root,
            deprel="root" if i == root else "dep",
            roles=roles[i],
        )
        for i in range(n)
    )
    return Sentence.from_tokens(index, tokens)


def _assign_roles(
    verb: int,
    pos_tags: list[str],
    ners: list[str | None],
    roles: list[dict[int, RoleLabel]],
) -> None:
    pred = verb + 1
    for j in range(verb - 1, -1, -1):
        if ners[j] in ("PERSON", "ORGANIZATION") or pos_tags[j].startswith("N"):
            roles[j][pred] = RoleLabel.A0
            break
    for j in range(verb + 1, len(pos_tags)):
        if pos_tags[j].startswith("N"):
            roles[j][pred] = RoleLabel.A1
            break
    for j, ner in enumerate(ners):
        if ner == "LOCATION" and pred not in roles[j]:
            roles[j][pred] = RoleLabel.AM_LOC
            break
    for j, ner in enumerate(ners):
        if ner == "DATE_TIME" and pred not in roles[j]:
            roles[j][pred] = RoleLabel.AM_TMP
            break
