"""Pattern queries and updates over a TripleStore.

Six verbs are supported. SELECT returns a deduplicated, sorted table of
variable bindings; ASK reports whether any solution exists; CONSTRUCT
instantiates a template once per solution; DESCRIBE returns every triple
an IRI participates in; INSERT adds concrete triples; DELETE removes all
triples matching each pattern.

The text form is line-oriented: an optional verb header, then one triple
pattern per line, terms written as ``<iri>``, ``"literal"`` (optionally
``^^<datatype>``) or ``?var``, with an optional trailing ``.``. A file
with no header is a SELECT over all its variables.

    SELECT ?who ?where
    ?e <http://agatha.example/onto#hasActor> ?who .
    ?e <http://agatha.example/onto#hasPlace> ?where .
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from ..errors import NTriplesError, QueryError
from .ntriples import scan_term, serialize_triple
from .store import Term, Triple, TriplePattern, TripleStore, Var, unify


class QueryForm(enum.Enum):
    SELECT = "SELECT"
    ASK = "ASK"
    CONSTRUCT = "CONSTRUCT"
    DESCRIBE = "DESCRIBE"
    INSERT = "INSERT"
    DELETE = "DELETE"


@dataclass(frozen=True)
class Query:
    form: QueryForm
    patterns: tuple[TriplePattern, ...] = ()
    projection: tuple[str, ...] | None = None  # SELECT; None selects every variable
    template: tuple[TriplePattern, ...] = ()  # CONSTRUCT
    subject: Term | None = None  # DESCRIBE


@dataclass(frozen=True)
class ResultTable:
    variables: tuple[str, ...]
    rows: tuple[tuple[Term, ...], ...]


# ---------------------------------------------------------------------------
# solving

def solve(store: TripleStore, patterns: tuple[TriplePattern, ...]) -> list[dict[str, Term]]:
    """All variable bindings satisfying every pattern simultaneously.

    Backtracking join; at each step the pattern with the fewest candidate
    triples under the current binding is expanded next.
    """
    solutions: list[dict[str, Term]] = []

    def backtrack(remaining: list[TriplePattern], binding: dict[str, Term]) -> None:
        if not remaining:
            solutions.append(binding)
            return
        best_pos = 0
        best_candidates = None
        for pos, pattern in enumerate(remaining):
            candidates = store.candidates(pattern.substitute(binding))
            if best_candidates is None or len(candidates) < len(best_candidates):
                best_pos, best_candidates = pos, candidates
        pattern = remaining[best_pos]
        rest = remaining[:best_pos] + remaining[best_pos + 1 :]
        for triple in best_candidates:
            extended = unify(pattern, triple, binding)
            if extended is not None:
                backtrack(rest, extended)

    backtrack(list(patterns), {})
    return solutions


def _pattern_variables(patterns: tuple[TriplePattern, ...]) -> tuple[str, ...]:
    names: list[str] = []
    for pattern in patterns:
        for name in pattern.variables():
            if name not in names:
                names.append(name)
    return tuple(names)


def select(store: TripleStore, query: Query) -> ResultTable:
    available = _pattern_variables(query.patterns)
    if query.projection is None:
        variables = available
    else:
        for name in query.projection:
            if name not in available:
                raise QueryError(f"projected variable ?{name} is not used in the query")
        variables = query.projection
    rows = {
        tuple(solution[name] for name in variables)
        for solution in solve(store, query.patterns)
    }
    ordered = sorted(rows, key=lambda row: tuple(_term_key(term) for term in row))
    return ResultTable(variables=variables, rows=tuple(ordered))


def _term_key(term: Term) -> str:
    from .ntriples import serialize_term

    return serialize_term(term)


def ask(store: TripleStore, query: Query) -> bool:
    return bool(solve(store, query.patterns))


def construct(store: TripleStore, query: Query) -> list[Triple]:
    """Template instantiations over all solutions, deduplicated and sorted.

    A template pattern is skipped for a solution that leaves one of its
    variables unbound or puts a literal in the subject or predicate slot.
    """
    built: set[Triple] = set()
    for solution in solve(store, query.patterns):
        for pattern in query.template:
            filled = pattern.substitute(solution)
            slots = filled.slots()
            if any(isinstance(slot, Var) for slot in slots):
                continue
            try:
                built.add(Triple(*slots))  # type: ignore[arg-type]
            except ValueError:
                continue
    return sorted(built, key=serialize_triple)


def describe(store: TripleStore, subject: Term) -> list[Triple]:
    found = set(store.matching(TriplePattern(subject, Var("p"), Var("o"))))
    found.update(store.matching(TriplePattern(Var("s"), Var("p"), subject)))
    return sorted(found, key=serialize_triple)


def insert(store: TripleStore, query: Query) -> int:
    triples = [Triple(*p.slots()) for p in query.patterns]  # type: ignore[arg-type]
    return store.insert(triples)


def delete(store: TripleStore, query: Query) -> int:
    return sum(store.delete(pattern) for pattern in query.patterns)


def evaluate(store: TripleStore, query: Query):
    """Run any query form; the result type depends on the verb."""
    if query.form is QueryForm.SELECT:
        return select(store, query)
    if query.form is QueryForm.ASK:
        return ask(store, query)
    if query.form is QueryForm.CONSTRUCT:
        return construct(store, query)
    if query.form is QueryForm.DESCRIBE:
        assert query.subject is not None
        return describe(store, query.subject)
    if query.form is QueryForm.INSERT:
        return insert(store, query)
    return delete(store, query)


# ---------------------------------------------------------------------------
# parsing

_VAR_RE = re.compile(r"\?([A-Za-z_][A-Za-z0-9_]*)")


def parse_query(text: str) -> Query:
    """Parse the line-oriented query text form. Errors carry line numbers."""
    lines = [
        (no, line.strip())
        for no, line in enumerate(text.split("\n"), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise QueryError("empty query")

    first_no, first = lines[0]
    verb = first.split(None, 1)[0].upper()
    if verb in QueryForm.__members__:
        return _parse_with_header(QueryForm[verb], first_no, first, lines[1:])
    patterns = tuple(_parse_pattern_line(line, no) for no, line in lines)
    return _checked(Query(QueryForm.SELECT, patterns=patterns))


def _parse_with_header(
    form: QueryForm, header_no: int, header: str, body: list[tuple[int, str]]
) -> Query:
    rest = header[len(form.value) :].strip()
    if form is QueryForm.SELECT:
        projection = _parse_projection(rest, header_no)
        patterns = tuple(_parse_pattern_line(line, no) for no, line in body)
        return _checked(Query(form, patterns=patterns, projection=projection))
    if form is QueryForm.ASK:
        if rest:
            raise QueryError("ASK takes no arguments", line=header_no)
        patterns = tuple(_parse_pattern_line(line, no) for no, line in body)
        return _checked(Query(form, patterns=patterns))
    if form is QueryForm.DESCRIBE:
        subject = _parse_describe_subject(rest, header_no)
        if body:
            raise QueryError(
                "DESCRIBE takes only an IRI, not pattern lines", line=body[0][0]
            )
        return Query(form, subject=subject)
    if form is QueryForm.CONSTRUCT:
        return _parse_construct(rest, header_no, body)
    # INSERT / DELETE
    if rest:
        raise QueryError(f"{form.value} takes no arguments", line=header_no)
    allow_vars = form is QueryForm.DELETE
    patterns = tuple(
        _parse_pattern_line(line, no, allow_vars=allow_vars) for no, line in body
    )
    return _checked(Query(form, patterns=patterns))


def _checked(query: Query) -> Query:
    if not query.patterns:
        raise QueryError(f"{query.form.value} needs at least one pattern line")
    return query


def _parse_projection(rest: str, line_no: int) -> tuple[str, ...] | None:
    if not rest or rest == "*":
        return None
    names: list[str] = []
    for token in rest.split():
        match = _VAR_RE.fullmatch(token)
        if not match:
            raise QueryError(
                f"bad SELECT projection token {token!r} (expected ?name or *)",
                line=line_no,
            )
        if match.group(1) in names:
            raise QueryError(f"variable ?{match.group(1)} projected twice", line=line_no)
        names.append(match.group(1))
    return tuple(names)


def _parse_describe_subject(rest: str, line_no: int) -> Term:
    if not rest:
        raise QueryError("DESCRIBE needs an IRI", line=line_no)
    term, pos = _scan_query_term(rest, 0, line_no, allow_vars=False)
    if rest[pos:].strip():
        raise QueryError("trailing content after DESCRIBE IRI", line=line_no)
    if not isinstance(term, Term) or not term.is_iri():
        raise QueryError("DESCRIBE subject must be an IRI", line=line_no)
    return term


def _parse_construct(
    rest: str, header_no: int, body: list[tuple[int, str]]
) -> Query:
    if rest != "{":
        raise QueryError("expected 'CONSTRUCT {'", line=header_no)
    template: list[TriplePattern] = []
    close_pos = None
    for pos, (no, line) in enumerate(body):
        if line == "}":
            close_pos = pos
            break
        template.append(_parse_pattern_line(line, no))
    if close_pos is None:
        raise QueryError("CONSTRUCT template is never closed with '}'", line=header_no)
    if not template:
        raise QueryError("CONSTRUCT template is empty", line=header_no)
    patterns = tuple(
        _parse_pattern_line(line, no) for no, line in body[close_pos + 1 :]
    )
    return _checked(Query(QueryForm.CONSTRUCT, patterns=patterns, template=tuple(template)))


def _parse_pattern_line(
    line: str, line_no: int, allow_vars: bool = True
) -> TriplePattern:
    slots: list[Term | Var] = []
    pos = 0
    for _ in range(3):
        pos = _skip(line, pos)
        slot, pos = _scan_query_term(line, pos, line_no, allow_vars=allow_vars)
        slots.append(slot)
    pos = _skip(line, pos)
    if pos < len(line):
        if line[pos] != "." or line[pos + 1 :].strip():
            raise QueryError(f"trailing content {line[pos:]!r}", line=line_no)
    pattern = TriplePattern(*slots)
    if not allow_vars:
        try:
            Triple(*pattern.slots())  # type: ignore[arg-type]
        except ValueError as exc:
            raise QueryError(str(exc), line=line_no) from None
    return pattern


def _skip(line: str, pos: int) -> int:
    while pos < len(line) and line[pos] in " \t":
        pos += 1
    return pos


def _scan_query_term(
    line: str, pos: int, line_no: int, allow_vars: bool
) -> tuple[Term | Var, int]:
    if pos >= len(line):
        raise QueryError("expected a term, found end of line", line=line_no)
    if line[pos] == "?":
        if not allow_vars:
            raise QueryError("variables are not allowed here", line=line_no)
        match = _VAR_RE.match(line, pos)
        if not match:
            raise QueryError(f"bad variable at column {pos + 1}", line=line_no)
        return Var(match.group(1)), match.end()
    try:
        return scan_term(line, pos, line_no)
    except NTriplesError as exc:
        raise QueryError(exc.message, line=line_no) from None
