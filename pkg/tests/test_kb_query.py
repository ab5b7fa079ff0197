"""Query parsing and evaluation for all six verbs."""

import random

import pytest

from casegraph.errors import QueryError
from casegraph.kb import (
    Query,
    QueryForm,
    Term,
    Triple,
    TriplePattern,
    TripleStore,
    Var,
    ask,
    construct,
    describe,
    evaluate,
    parse_query,
    select,
    solve,
)

from oracles import naive_ask, naive_construct, naive_describe, naive_select
from synth import random_patterns, random_store, random_template

E = "http://example.org/"
ACTOR = Term.iri(E + "hasActor")
PLACE = Term.iri(E + "hasPlace")


def small_store() -> TripleStore:
    store = TripleStore()
    store.insert(
        [
            Triple(Term.iri(E + "e1"), ACTOR, Term.iri(E + "ana")),
            Triple(Term.iri(E + "e1"), PLACE, Term.literal("évora")),
            Triple(Term.iri(E + "e2"), ACTOR, Term.iri(E + "ana")),
            Triple(Term.iri(E + "e2"), ACTOR, Term.iri(E + "rui")),
        ]
    )
    return store


class TestParse:
    def test_headerless_is_select_all(self):
        query = parse_query(f"?e <{E}hasActor> ?who .\n")
        assert query.form is QueryForm.SELECT
        assert query.projection is None
        assert query.patterns == (
            TriplePattern(Var("e"), ACTOR, Var("who")),
        )

    def test_select_projection(self):
        query = parse_query(f"SELECT ?who\n?e <{E}hasActor> ?who\n")
        assert query.projection == ("who",)

    def test_select_star(self):
        query = parse_query(f"SELECT *\n?e <{E}hasActor> ?who\n")
        assert query.projection is None

    def test_comments_skipped(self):
        query = parse_query(f"# find actors\nASK\n?e <{E}hasActor> ?who .\n")
        assert query.form is QueryForm.ASK

    def test_construct_template_and_where(self):
        text = (
            "CONSTRUCT {\n"
            f"?who <{E}actsIn> ?e .\n"
            "}\n"
            f"?e <{E}hasActor> ?who .\n"
        )
        query = parse_query(text)
        assert query.form is QueryForm.CONSTRUCT
        assert query.template == (
            TriplePattern(Var("who"), Term.iri(E + "actsIn"), Var("e")),
        )
        assert len(query.patterns) == 1

    def test_describe(self):
        query = parse_query(f"DESCRIBE <{E}ana>\n")
        assert query.form is QueryForm.DESCRIBE
        assert query.subject == Term.iri(E + "ana")

    def test_insert_ground_triples(self):
        query = parse_query(f"INSERT\n<{E}s> <{E}p> \"x\" .\n")
        assert query.form is QueryForm.INSERT
        assert query.patterns == (
            TriplePattern(Term.iri(E + "s"), Term.iri(E + "p"), Term.literal("x")),
        )

    def test_delete_allows_variables(self):
        query = parse_query(f"DELETE\n<{E}s> ?p ?o .\n")
        assert query.form is QueryForm.DELETE

    def test_typed_literal_term(self):
        query = parse_query(
            f'?e <{E}count> "5"^^<http://www.w3.org/2001/XMLSchema#integer>\n'
        )
        obj = query.patterns[0].obj
        assert obj == Term.literal(
            "5", datatype="http://www.w3.org/2001/XMLSchema#integer"
        )

    @pytest.mark.parametrize(
        "text,line",
        [
            ("", None),
            ("SELECT ?who\n", None),  # no pattern lines
            ("SELECT who\n?e ?p ?o\n", 1),  # projection token missing '?'
            ("SELECT ?a ?a\n?a ?p ?o\n", 1),  # duplicate projection
            ("ASK now\n?e ?p ?o\n", 1),  # ASK takes no arguments
            ("DESCRIBE\n", 1),  # missing IRI
            (f"DESCRIBE <{E}x> extra\n", 1),
            (f"DESCRIBE \"lit\"\n", 1),  # literal subject
            (f"DESCRIBE <{E}x>\n?e ?p ?o\n", 2),  # body not allowed
            ("CONSTRUCT\n?e ?p ?o\n", 1),  # missing '{'
            ("CONSTRUCT {\n?e ?p ?o\n", 1),  # never closed
            ("CONSTRUCT {\n}\n?e ?p ?o\n", 1),  # empty template
            (f"INSERT\n?e <{E}p> <{E}o>\n", 2),  # variable in INSERT
            (f"INSERT\n\"lit\" <{E}p> <{E}o>\n", 2),  # literal subject
            ("?e ?p\n", 1),  # two terms only
            (f"?e <{E}p> ?o junk\n", 1),  # trailing content
            (f"?e <{E}p> <bad iri>\n", 1),  # malformed IRI
            ("?e <http://e/p> ?o . ?x\n", 1),  # content after dot
        ],
    )
    def test_errors(self, text, line):
        with pytest.raises(QueryError) as exc_info:
            parse_query(text)
        if line is not None:
            assert exc_info.value.line == line


class TestEvaluate:
    def test_select_rows_sorted_and_deduplicated(self):
        store = small_store()
        table = select(store, parse_query(f"SELECT ?who\n?e <{E}hasActor> ?who\n"))
        assert table.variables == ("who",)
        # e1 and e2 both name ana; the duplicate collapses
        assert table.rows == (
            (Term.iri(E + "ana"),),
            (Term.iri(E + "rui"),),
        )

    def test_select_join_over_shared_variable(self):
        store = small_store()
        text = (
            "SELECT ?a ?b\n"
            f"?a <{E}hasActor> <{E}ana> .\n"
            f"?b <{E}hasActor> <{E}rui> .\n"
        )
        table = select(store, parse_query(text))
        assert table.rows == (
            (Term.iri(E + "e1"), Term.iri(E + "e2")),
            (Term.iri(E + "e2"), Term.iri(E + "e2")),
        )

    def test_select_unused_projection_rejected(self):
        store = small_store()
        with pytest.raises(QueryError, match="nosuch"):
            select(store, parse_query(f"SELECT ?nosuch\n?e <{E}hasActor> ?who\n"))

    def test_ask(self):
        store = small_store()
        yes = parse_query(f"ASK\n?e <{E}hasActor> <{E}rui>\n")
        no = parse_query(f"ASK\n?e <{E}hasPlace> <{E}rui>\n")
        assert ask(store, yes) is True
        assert ask(store, no) is False

    def test_construct_skips_literal_subjects(self):
        store = small_store()
        text = (
            "CONSTRUCT {\n"
            f"?v <{E}inverted> ?e .\n"
            "}\n"
            f"?e <{E}hasPlace> ?v .\n"
        )
        # ?v binds to a literal, which cannot be a subject: no output rows
        assert construct(store, parse_query(text)) == []

    def test_construct_builds_sorted_unique(self):
        store = small_store()
        text = (
            "CONSTRUCT {\n"
            f"?who <{E}actsIn> ?e .\n"
            f"?who <{E}seen> \"yes\" .\n"
            "}\n"
            f"?e <{E}hasActor> ?who .\n"
        )
        built = construct(store, parse_query(text))
        assert len(built) == 5  # 3 actsIn + 2 seen (ana deduplicated)
        assert built == sorted(built, key=lambda t: str(t))

    def test_describe_finds_both_positions(self):
        store = small_store()
        found = describe(store, Term.iri(E + "ana"))
        assert len(found) == 2
        assert all(
            t.obj == Term.iri(E + "ana") or t.subject == Term.iri(E + "ana")
            for t in found
        )

    def test_insert_and_delete_counts(self):
        store = small_store()
        inserted = evaluate(store, parse_query(
            f"INSERT\n<{E}e3> <{E}hasActor> <{E}ana> .\n"
            f"<{E}e1> <{E}hasActor> <{E}ana> .\n"
        ))
        assert inserted == 1  # the second line already exists
        deleted = evaluate(store, parse_query(f"DELETE\n?e <{E}hasActor> ?who\n"))
        assert deleted == 4
        assert len(store) == 1  # only the hasPlace triple remains

    def test_evaluate_dispatch(self):
        store = small_store()
        assert evaluate(store, parse_query(f"ASK\n?e <{E}hasActor> ?x\n")) is True
        table = evaluate(store, parse_query(f"?e <{E}hasActor> ?x\n"))
        assert table.variables == ("e", "x")

    def test_solve_empty_pattern_list_yields_one_empty_solution(self):
        assert solve(small_store(), ()) == [{}]


class TestAgainstOracle:
    def test_randomized_equivalence(self):
        rng = random.Random(4242)
        for round_no in range(60):
            store = random_store(rng, rng.randint(0, 120))
            triples = list(store)
            patterns = random_patterns(rng, store, rng.randint(1, 3))

            solutions = solve(store, tuple(patterns))
            variables = sorted({v for p in patterns for v in p.variables()})
            got_rows = {tuple(s[v] for v in variables) for s in solutions}
            assert got_rows == naive_select(triples, patterns, tuple(variables))

            query = Query(QueryForm.ASK, patterns=tuple(patterns))
            assert ask(store, query) == naive_ask(triples, patterns)

            template = random_template(rng, rng.randint(1, 2))
            cq = Query(QueryForm.CONSTRUCT, patterns=tuple(patterns),
                       template=tuple(template))
            assert set(construct(store, cq)) == naive_construct(
                triples, patterns, template)

            subject = Term.iri(f"http://ex.example/s{rng.randrange(15)}")
            assert set(describe(store, subject)) == naive_describe(triples, subject)
