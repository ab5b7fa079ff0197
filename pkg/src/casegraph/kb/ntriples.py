"""Line-based triple serialization, one ``<s> <p> <o> .`` statement per line.

Serialization is canonical: statements are sorted lexicographically and the
output ends with a newline, so equal stores produce byte-identical files.
The parser accepts the same dialect back (IRIs, plain literals, datatyped
literals; ``\\uXXXX``/``\\UXXXXXXXX`` escapes) and reports errors with line
numbers. Language-tagged literals and blank nodes are not part of the
dialect and are rejected.
"""

from __future__ import annotations

from typing import Iterable

from ..errors import NTriplesError
from .store import Term, Triple

_IRI_UNSAFE = set('<>"{}|^`\\') | {chr(c) for c in range(0x21)} | {chr(0x7F)}
_LITERAL_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


# ---------------------------------------------------------------------------
# writing

def _escape_codepoint(ch: str) -> str:
    code = ord(ch)
    if code > 0xFFFF:
        return f"\\U{code:08X}"
    return f"\\u{code:04X}"


def escape_iri(value: str) -> str:
    return "".join(
        _escape_codepoint(ch) if ch in _IRI_UNSAFE else ch for ch in value
    )


def escape_literal(value: str) -> str:
    out: list[str] = []
    for ch in value:
        if ch in _LITERAL_ESCAPES:
            out.append(_LITERAL_ESCAPES[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(_escape_codepoint(ch))
        else:
            out.append(ch)
    return "".join(out)


def serialize_term(term: Term) -> str:
    if term.is_iri():
        return f"<{escape_iri(term.value)}>"
    text = f'"{escape_literal(term.value)}"'
    if term.datatype is not None:
        text += f"^^<{escape_iri(term.datatype)}>"
    return text


def serialize_triple(triple: Triple) -> str:
    return (
        f"{serialize_term(triple.subject)} "
        f"{serialize_term(triple.predicate)} "
        f"{serialize_term(triple.obj)} ."
    )


def serialize(triples: Iterable[Triple]) -> str:
    """Canonical text for a set of triples: sorted, newline-terminated."""
    lines = sorted(serialize_triple(t) for t in triples)
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# reading

def parse(content: str) -> list[Triple]:
    """Parse serialized triples; duplicates collapse only in a store, not here."""
    triples: list[Triple] = []
    for line_no, line in enumerate(content.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        triples.append(_parse_statement(line, line_no))
    return triples


def _parse_statement(line: str, line_no: int) -> Triple:
    pos = _skip_space(line, 0)
    subject, pos = scan_term(line, pos, line_no)
    pos = _skip_space(line, pos)
    predicate, pos = scan_term(line, pos, line_no)
    pos = _skip_space(line, pos)
    obj, pos = scan_term(line, pos, line_no)
    pos = _skip_space(line, pos)
    if pos >= len(line) or line[pos] != ".":
        raise NTriplesError(line_no, "statement does not end with '.'")
    if line[pos + 1 :].strip():
        raise NTriplesError(line_no, "trailing content after '.'")
    try:
        return Triple(subject, predicate, obj)
    except ValueError as exc:
        raise NTriplesError(line_no, str(exc)) from None


def _skip_space(line: str, pos: int) -> int:
    while pos < len(line) and line[pos] in " \t":
        pos += 1
    return pos


def scan_term(line: str, pos: int, line_no: int | None = None) -> tuple[Term, int]:
    """Read one IRI or literal starting at ``pos``; returns (term, next pos)."""
    if pos >= len(line):
        raise NTriplesError(line_no, "expected a term, found end of line")
    ch = line[pos]
    if ch == "<":
        return _scan_iri(line, pos, line_no)
    if ch == '"':
        return _scan_literal(line, pos, line_no)
    raise NTriplesError(line_no, f"expected '<' or '\"' at column {pos + 1}")


def _scan_iri(line: str, pos: int, line_no: int | None) -> tuple[Term, int]:
    out: list[str] = []
    i = pos + 1
    while i < len(line):
        ch = line[i]
        if ch == ">":
            value = "".join(out)
            try:
                return Term.iri(value), i + 1
            except ValueError as exc:
                raise NTriplesError(line_no, str(exc)) from None
        if ch == "\\":
            decoded, i = _scan_uchar(line, i, line_no)
            out.append(decoded)
            continue
        out.append(ch)
        i += 1
    raise NTriplesError(line_no, "unterminated IRI")


_LITERAL_UNESCAPES = {
    "t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
    '"': '"', "'": "'", "\\": "\\",
}


def _scan_literal(line: str, pos: int, line_no: int | None) -> tuple[Term, int]:
    out: list[str] = []
    i = pos + 1
    while i < len(line):
        ch = line[i]
        if ch == '"':
            return _finish_literal(line, i + 1, "".join(out), line_no)
        if ch == "\\":
            if i + 1 >= len(line):
                raise NTriplesError(line_no, "dangling backslash in literal")
            nxt = line[i + 1]
            if nxt in _LITERAL_UNESCAPES:
                out.append(_LITERAL_UNESCAPES[nxt])
                i += 2
                continue
            decoded, i = _scan_uchar(line, i, line_no)
            out.append(decoded)
            continue
        out.append(ch)
        i += 1
    raise NTriplesError(line_no, "unterminated literal")


def _finish_literal(
    line: str, pos: int, value: str, line_no: int | None
) -> tuple[Term, int]:
    if pos < len(line) and line[pos] == "@":
        raise NTriplesError(line_no, "language-tagged literals are not supported")
    if line.startswith("^^", pos):
        datatype_term, pos = scan_term(line, pos + 2, line_no)
        if not datatype_term.is_iri():
            raise NTriplesError(line_no, "literal datatype must be an IRI")
        return Term.literal(value, datatype_term.value), pos
    return Term.literal(value), pos


def _scan_uchar(line: str, pos: int, line_no: int | None) -> tuple[str, int]:
    """Decode ``\\uXXXX`` or ``\\UXXXXXXXX`` at ``pos`` (which holds the backslash)."""
    if pos + 1 >= len(line):
        raise NTriplesError(line_no, "dangling backslash")
    marker = line[pos + 1]
    if marker == "u":
        width = 4
    elif marker == "U":
        width = 8
    else:
        raise NTriplesError(line_no, f"unknown escape \\{marker}")
    digits = line[pos + 2 : pos + 2 + width]
    if len(digits) != width or any(d not in "0123456789abcdefABCDEF" for d in digits):
        raise NTriplesError(line_no, f"bad \\{marker} escape")
    code = int(digits, 16)
    if code > 0x10FFFF:
        raise NTriplesError(line_no, f"\\{marker} escape out of Unicode range")
    if 0xD800 <= code <= 0xDFFF:
        # surrogates are not characters and cannot be written back as UTF-8
        raise NTriplesError(line_no, f"\\{marker} escape is a surrogate code point")
    return chr(code), pos + 2 + width
