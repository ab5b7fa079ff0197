"""Event extraction: slots, span expansion, ids, ordering, JSON form."""

import json
import random

import pytest

from casegraph.events import (
    Mention,
    events_to_jsonl,
    expand_span,
    extract_events,
    normalize_mention,
)
from casegraph.ingest import parse_corpus

from synth import random_corpus

CORPUS = """#doc d1 c1 pt
1\tJoão\tjoão\tNP00SP0\tPERSON\t2\tnsubj\t2:A0
2\troubou\troubar\tVMIS3S0\t_\t0\troot\t_
3\to\to\tDA0MS0\t_\t4\tdet\t_
4\tbanco\tbanco\tNCMS000\t_\t2\tobj\t2:A1
5\tde\tde\tSPS00\t_\t6\tcase\t_
6\tÉvora\tévora\tNP00G00\tLOCATION\t4\tnmod\t2:AM-LOC
7\t.\t.\tFp\t_\t2\tpunct\t_
"""


@pytest.fixture()
def doc():
    return parse_corpus(CORPUS)[0]


class TestExtraction:
    def test_one_event_per_predicate(self, doc):
        events = extract_events(doc)
        assert len(events) == 1
        assert events[0].event_id == "d1:s0:p2"
        assert events[0].action == "roubar"

    def test_role_slots(self, doc):
        event = extract_events(doc)[0]
        assert [m.normalized for m in event.actors] == ["joão"]
        assert [m.normalized for m in event.objects] == ["o banco de évora"]
        assert event.place is not None and event.place.normalized == "de évora"
        assert event.time is None

    def test_provenance(self, doc):
        prov = extract_events(doc)[0].provenance
        assert (prov.doc_id, prov.case_id, prov.sentence, prov.predicate) == (
            "d1", "c1", 0, 2,
        )

    def test_mention_text_keeps_original_casing(self, doc):
        event = extract_events(doc)[0]
        assert event.objects[0].text == "o banco de Évora"

    def test_two_predicates_two_events(self):
        corpus = (
            "#doc d2 c1 pt\n"
            "1\tAna\tana\tNP00SP0\tPERSON\t2\tnsubj\t2:A0;4:A0\n"
            "2\tcomprou\tcomprar\tVMIS3S0\t_\t0\troot\t_\n"
            "3\te\te\tCC\t_\t4\tcc\t_\n"
            "4\tvendeu\tvender\tVMIS3S0\t_\t2\tconj\t_\n"
            "5\tcasas\tcasa\tNCFP000\t_\t4\tobj\t4:A1\n"
        )
        events = extract_events(parse_corpus(corpus)[0])
        assert [e.event_id for e in events] == ["d2:s0:p2", "d2:s0:p4"]
        assert [m.normalized for m in events[0].actors] == ["ana"]
        assert [m.normalized for m in events[1].actors] == ["ana"]
        assert events[0].objects == ()
        assert [m.normalized for m in events[1].objects] == ["casas"]

    def test_extra_location_role_is_ignored_with_warning(self, caplog):
        corpus = (
            "#doc d3 c1 pt\n"
            "1\tfoi\tser\tVMIS3S0\t_\t0\troot\t_\n"
            "2\tLisboa\tlisboa\tNP00G00\tLOCATION\t1\tobl\t1:AM-LOC\n"
            "3\tPorto\tporto\tNP00G00\tLOCATION\t1\tobl\t1:AM-LOC\n"
        )
        with caplog.at_level("WARNING"):
            events = extract_events(parse_corpus(corpus)[0])
        assert events[0].place.normalized == "lisboa"
        assert "AM-LOC" in caplog.text

    def test_organization_and_currency_runs(self):
        corpus = (
            "#doc d4 c1 pt\n"
            "1\tBanco\tbanco\tNCMS000\tORGANIZATION\t3\tnsubj\t3:A0\n"
            "2\tCentral\tcentral\tAQ0MS0\tORGANIZATION\t1\tflat\t_\n"
            "3\tpagou\tpagar\tVMIS3S0\t_\t0\troot\t_\n"
            "4\t100\t100\tZm\tCURRENCY\t3\tobj\t3:A1\n"
            "5\teuros\teuro\tZm\tCURRENCY\t4\tflat\t_\n"
        )
        event = extract_events(parse_corpus(corpus)[0])[0]
        assert [m.normalized for m in event.organizations] == ["banco central"]
        assert [m.normalized for m in event.currencies] == ["100 euros"]


class TestExpandSpan:
    def test_subtree_in_index_order(self, doc):
        assert expand_span(doc.sentences[0], 4) == "o banco de Évora"

    def test_leaf_is_itself(self, doc):
        assert expand_span(doc.sentences[0], 1) == "João"

    def test_root_spans_whole_sentence(self, doc):
        assert expand_span(doc.sentences[0], 2) == "João roubou o banco de Évora ."


class TestNormalize:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("Évora", "évora"),
            ("«Banco»", "banco"),
            ('"a  fraude."', "a fraude"),
            ("Hit-and-run", "hit-and-run"),
            ("  spaced   out  ", "spaced out"),
        ],
    )
    def test_examples(self, raw, expected):
        assert normalize_mention(raw) == expected


class TestEventCountLaw:
    def test_events_match_sentence_predicate_pairs(self):
        rng = random.Random(99)
        for doc in random_corpus(rng, 30):
            events = extract_events(doc)
            expected = sum(len(s.predicates) for s in doc.sentences)
            assert len(events) == expected
            assert [e.event_id for e in events] == [
                f"{doc.doc_id}:s{s.index}:p{p}"
                for s in doc.sentences
                for p in s.predicates
            ]


class TestJsonl:
    def test_one_line_per_event_and_fields(self, doc):
        lines = events_to_jsonl(extract_events(doc)).splitlines()
        assert len(lines) == 1
        record = json.loads(lines[0])
        assert record["event_id"] == "d1:s0:p2"
        assert record["action"] == "roubar"
        assert record["place"]["normalized"] == "de évora"
        assert record["provenance"]["case_id"] == "c1"

    def test_non_ascii_kept_readable(self, doc):
        assert "évora" in events_to_jsonl(extract_events(doc))
