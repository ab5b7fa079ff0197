"""N-Triples escaping, canonical serialization, and parser error handling."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casegraph.errors import NTriplesError
from casegraph.kb import (
    Term,
    Triple,
    parse,
    serialize,
    serialize_term,
    serialize_triple,
)
from casegraph.kb.ntriples import escape_literal

from synth import random_store

S = Term.iri("http://example.org/s")
P = Term.iri("http://example.org/p")


class TestEscaping:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("plain", '"plain"'),
            ('say "hi"', '"say \\"hi\\""'),
            ("back\\slash", '"back\\\\slash"'),
            ("tab\there", '"tab\\there"'),
            ("line\nbreak", '"line\\nbreak"'),
            ("évora", '"évora"'),
        ],
    )
    def test_literal_escapes(self, raw, expected):
        assert serialize_term(Term.literal(raw)) == expected

    def test_control_characters_become_uchar(self):
        assert escape_literal("\x07") == "\\u0007"

    def test_non_bmp_round_trip(self):
        term = Term.literal("emoji \U0001f310 end")
        line = serialize_triple(Triple(S, P, term))
        assert parse(line + "\n") == [Triple(S, P, term)]

    def test_iri_unicode_kept_raw(self):
        term = Term.iri("http://example.org/évora")
        assert serialize_term(term) == "<http://example.org/évora>"
        line = serialize_triple(Triple(S, P, term))
        assert parse(line + "\n") == [Triple(S, P, term)]


class TestSerialize:
    def test_statement_shape(self):
        line = serialize_triple(Triple(S, P, Term.literal("x")))
        assert line == '<http://example.org/s> <http://example.org/p> "x" .'

    def test_typed_literal(self):
        term = Term.literal("5", datatype="http://www.w3.org/2001/XMLSchema#integer")
        assert serialize_term(term) == (
            '"5"^^<http://www.w3.org/2001/XMLSchema#integer>'
        )

    def test_output_is_sorted_with_trailing_newline(self):
        t1 = Triple(S, P, Term.literal("b"))
        t2 = Triple(S, P, Term.literal("a"))
        text = serialize([t1, t2])
        lines = text.splitlines()
        assert text.endswith("\n")
        assert lines == sorted(lines)
        assert len(lines) == 2

    def test_serialization_is_canonical(self):
        rng = random.Random(17)
        store = random_store(rng, 120)
        triples = list(store)
        rng.shuffle(triples)
        assert serialize(triples) == serialize(reversed(triples))


class TestParse:
    def test_comments_and_blank_lines_skipped(self):
        text = "# comment\n\n<http://e/s> <http://e/p> <http://e/o> .\n"
        assert len(parse(text)) == 1

    def test_error_carries_line_number(self):
        text = "<http://e/s> <http://e/p> <http://e/o> .\nnot a triple\n"
        with pytest.raises(NTriplesError) as exc_info:
            parse(text)
        assert exc_info.value.line == 2

    @pytest.mark.parametrize(
        "bad",
        [
            "<http://e/s> <http://e/p> .",  # only two terms
            '<http://e/s> <http://e/p> "x"',  # missing terminal dot
            '<http://e/s> "lit" <http://e/o> .',  # literal predicate
            '<http://e/s> <http://e/p> "x"@en .',  # language tags unsupported
            '<http://e/s> <http://e/p> "\\q" .',  # unknown escape
            '<http://e/s> <http://e/p> "\\uDEAD" .',  # surrogate code point
            "<http://e/s> <http://e/p> <http://e/o> . extra",
        ],
    )
    def test_malformed_statements_rejected(self, bad):
        with pytest.raises(NTriplesError):
            parse(bad + "\n")

    def test_uchar_and_long_uchar(self):
        text = '<http://e/s> <http://e/p> "\\u00E9\\U0001F310" .\n'
        [triple] = parse(text)
        assert triple.obj == Term.literal("é\U0001f310")

    def test_uchar_out_of_range_rejected(self):
        with pytest.raises(NTriplesError):
            parse('<http://e/s> <http://e/p> "\\U00110000" .\n')


class TestRoundTrip:
    def test_random_stores_round_trip(self):
        rng = random.Random(23)
        for _ in range(25):
            store = random_store(rng, rng.randint(0, 80))
            text = serialize(store)
            assert set(parse(text)) == set(store)
            assert serialize(parse(text)) == text

    @settings(max_examples=150, deadline=None)
    @given(st.text(max_size=40))
    def test_any_literal_round_trips(self, value):
        triple = Triple(S, P, Term.literal(value))
        assert parse(serialize_triple(triple) + "\n") == [triple]
