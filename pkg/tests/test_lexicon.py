"""Thesaurus loading, fuzzy policy tiers, and mention matching."""

import random

import pytest

from casegraph.errors import ThesaurusError
from casegraph.events import extract_events
from casegraph.ingest import parse_corpus
from casegraph.lexicon import (
    FuzzyPolicy,
    LexiconEntry,
    MatchMethod,
    TermCategory,
    TermSource,
    Thesaurus,
    load_thesaurus,
    match_events,
    match_exact,
    match_fuzzy,
    match_mention,
)

TSV = """# term\tcategory\tconcept_iri\tsource
fraude\tEvent\thttp://example.org/c/1\teurovoc
prisão\tPlace\thttp://example.org/c/2\teurovoc
vítima\tActor\thttp://example.org/c/3\textended
multa\tObject\thttp://example.org/c/4\textended
"""

MANIFEST = """# category,count
Actor,1
Event,1
Place,1
Object,1
TOTAL,4
"""


@pytest.fixture()
def thesaurus():
    return load_thesaurus(TSV, MANIFEST)


class TestLoading:
    def test_counts_and_lookup(self, thesaurus):
        assert len(thesaurus) == 4
        assert thesaurus.count_by_category() == {
            TermCategory.ACTOR: 1,
            TermCategory.EVENT: 1,
            TermCategory.PLACE: 1,
            TermCategory.OBJECT: 1,
        }
        entry = thesaurus.get("fraude")
        assert entry is not None
        assert entry.category is TermCategory.EVENT
        assert entry.source is TermSource.EUROVOC_CRIMINAL_LAW

    def test_manifest_mismatch_rejected(self):
        manifest = "# category,count\nActor,2\nEvent,1\nPlace,1\nObject,1\nTOTAL,5\n"
        with pytest.raises(ThesaurusError, match="Actor"):
            load_thesaurus(TSV, manifest)

    def test_total_mismatch_rejected(self):
        manifest = "# category,count\nActor,1\nEvent,1\nPlace,1\nObject,1\nTOTAL,7\n"
        with pytest.raises(ThesaurusError, match="in total"):
            load_thesaurus(TSV, manifest)

    def test_missing_total_rejected(self):
        manifest = "# category,count\nActor,1\nEvent,1\nPlace,1\nObject,1\n"
        with pytest.raises(ThesaurusError, match="TOTAL"):
            load_thesaurus(TSV, manifest)

    def test_unlisted_category_rejected(self):
        manifest = "# category,count\nActor,1\nEvent,1\nPlace,1\nTOTAL,3\n"
        with pytest.raises(ThesaurusError):
            load_thesaurus(TSV, manifest)

    def test_bad_column_count_rejected(self):
        with pytest.raises(ThesaurusError, match="column"):
            load_thesaurus("fraude\tEvent\thttp://example.org/c/1\n",
                           "# category,count\nEvent,1\nTOTAL,1\n")

    def test_unknown_category_rejected(self):
        with pytest.raises(ThesaurusError, match="Crime"):
            load_thesaurus("fraude\tCrime\thttp://example.org/c/1\teurovoc\n",
                           "# category,count\nEvent,1\nTOTAL,1\n")

    def test_unknown_source_rejected(self):
        with pytest.raises(ThesaurusError, match="wordnet"):
            load_thesaurus("fraude\tEvent\thttp://example.org/c/1\twordnet\n",
                           "# category,count\nEvent,1\nTOTAL,1\n")

    def test_duplicate_term_rejected_case_insensitive(self):
        entries = (
            LexiconEntry("Fraude", TermCategory.EVENT, "http://e/1",
                         TermSource.EUROVOC_CRIMINAL_LAW),
            LexiconEntry("fraude", TermCategory.EVENT, "http://e/2",
                         TermSource.EXTENDED_ONTOLOGY),
        )
        with pytest.raises(ThesaurusError, match="collide"):
            Thesaurus(entries=entries)


class TestFuzzyPolicy:
    def test_default_tiers(self):
        policy = FuzzyPolicy()
        assert policy.threshold(3) == 0
        assert policy.threshold(4) == 1
        assert policy.threshold(7) == 1
        assert policy.threshold(8) == 2
        assert policy.threshold(40) == 2

    def test_flat(self):
        policy = FuzzyPolicy.flat(3)
        assert policy.threshold(1) == 3
        assert policy.threshold(100) == 3

    def test_tiers_must_descend(self):
        with pytest.raises(ValueError):
            FuzzyPolicy(tiers=((4, 1), (8, 2), (0, 0)))

    def test_final_tier_must_reach_zero(self):
        with pytest.raises(ValueError):
            FuzzyPolicy(tiers=((4, 1),))


class TestMatching:
    def test_lowercase_input_enforced(self, thesaurus):
        with pytest.raises(ValueError):
            match_exact(thesaurus, "Fraude")
        with pytest.raises(ValueError):
            match_fuzzy(thesaurus, "Fraude", FuzzyPolicy())

    def test_exact_hit(self, thesaurus):
        entry = match_exact(thesaurus, "fraude")
        assert entry is not None
        assert entry.term == "fraude"

    def test_exact_miss(self, thesaurus):
        assert match_exact(thesaurus, "fraud") is None

    def test_fuzzy_within_threshold(self, thesaurus):
        hits = match_fuzzy(thesaurus, "fraud", FuzzyPolicy())
        assert [(entry.term, dist) for entry, dist in hits] == [("fraude", 1)]

    def test_fuzzy_orders_by_distance_then_term(self):
        entries = (
            LexiconEntry("roubo", TermCategory.EVENT, "http://e/1",
                         TermSource.EUROVOC_CRIMINAL_LAW),
            LexiconEntry("rouba", TermCategory.EVENT, "http://e/2",
                         TermSource.EUROVOC_CRIMINAL_LAW),
        )
        hits = match_fuzzy(Thesaurus(entries=entries), "roubou",
                           FuzzyPolicy.flat(2))
        assert [(e.term, d) for e, d in hits] == [("roubo", 1), ("rouba", 2)]

    def test_short_queries_never_fuzzy(self, thesaurus):
        # below four characters the allowed distance is zero
        assert match_fuzzy(thesaurus, "mul", FuzzyPolicy()) == []

    def test_mention_matches_each_word_of_multiword_span(self, thesaurus):
        results = match_mention(thesaurus, "a fraude anunciada", FuzzyPolicy())
        assert [r.term for r in results] == ["fraude"]
        assert results[0].method is MatchMethod.EXACT
        # surface reports the full mention, not the matching piece
        assert results[0].surface == "a fraude anunciada"

    def test_mention_prefers_best_distance_per_term(self, thesaurus):
        results = match_mention(thesaurus, "fraude fraud", FuzzyPolicy())
        assert [(r.term, r.distance) for r in results] == [("fraude", 0)]

    def test_mention_method_reflects_distance(self, thesaurus):
        results = match_mention(thesaurus, "fraud", FuzzyPolicy())
        assert [(r.method, r.distance) for r in results] == [
            (MatchMethod.LEVENSHTEIN, 1),
        ]


class TestMatchEvents:
    CORPUS = (
        "#doc d1 c1 pt\n"
        "1\tVítima\tvítima\tNCFS000\tPERSON\t2\tnsubj\t2:A0\n"
        "2\tpagou\tpagar\tVMIS3S0\t_\t0\troot\t_\n"
        "3\tmulta\tmulta\tNCFS000\t_\t2\tobj\t2:A1\n"
    )

    def test_matches_keyed_by_event(self, thesaurus):
        events = extract_events(parse_corpus(self.CORPUS)[0])
        by_event = match_events(thesaurus, events)
        assert list(by_event) == ["d1:s0:p2"]
        assert {r.term for r in by_event["d1:s0:p2"]} == {"vítima", "multa"}

    def test_event_without_hits_gets_empty_list(self, thesaurus):
        corpus = (
            "#doc d2 c1 pt\n"
            "1\tEle\tele\tPP3MS000\t_\t2\tnsubj\t2:A0\n"
            "2\tdormiu\tdormir\tVMIS3S0\t_\t0\troot\t_\n"
        )
        events = extract_events(parse_corpus(corpus)[0])
        assert match_events(thesaurus, events) == {"d2:s0:p2": []}

    def test_duplicate_strings_matched_once(self, thesaurus):
        corpus = (
            "#doc d3 c1 pt\n"
            "1\tmulta\tmulta\tNCFS000\t_\t2\tnsubj\t2:A0\n"
            "2\tcustou\tcustar\tVMIS3S0\t_\t0\troot\t_\n"
            "3\tmulta\tmulta\tNCFS000\t_\t2\tobj\t2:A1\n"
        )
        events = extract_events(parse_corpus(corpus)[0])
        results = match_events(thesaurus, events)["d3:s0:p2"]
        assert [(r.term, r.surface) for r in results] == [("multa", "multa")]


class TestShippedThesauri:
    def test_eurovoc_counts(self, data_dir):
        thesaurus = load_thesaurus(
            (data_dir / "eurovoc_criminal_law.tsv").read_text(encoding="utf-8"),
            (data_dir / "eurovoc_criminal_law_manifest.csv").read_text(
                encoding="utf-8"),
        )
        assert len(thesaurus) == 167

    def test_extended_counts_and_terms(self, data_dir):
        thesaurus = load_thesaurus(
            (data_dir / "extended_ontology.tsv").read_text(encoding="utf-8"),
            (data_dir / "extended_ontology_manifest.csv").read_text(
                encoding="utf-8"),
        )
        assert len(thesaurus) == 84
        for term in ("victim", "rape", "prison", "fine", "banco"):
            assert thesaurus.get(term) is not None


class TestAgainstBruteForce:
    def test_fuzzy_agrees_with_scan(self, thesaurus):
        from oracles import reference_levenshtein

        rng = random.Random(7)
        policy = FuzzyPolicy()
        alphabet = "fraudeprisãovítimamulta "
        for _ in range(200):
            query = "".join(
                rng.choice(alphabet) for _ in range(rng.randint(1, 10))
            ).strip() or "a"
            got = {(e.term, d) for e, d in match_fuzzy(thesaurus, query, policy)}
            want = set()
            for entry in thesaurus.entries:
                dist = reference_levenshtein(query, entry.term.lower())
                if dist <= policy.threshold(len(query)):
                    want.add((entry.term, dist))
            assert got == want
