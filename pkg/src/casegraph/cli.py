"""Command-line entry points.

Four subcommands cover the pipeline end to end:

    casegraph annotate raw.txt --out doc.tsv     # raw text -> annotated corpus
    casegraph run --config pipeline.toml         # corpus -> events/matches/kb
    casegraph query q.txt --kb out/kb.nt         # run a query file against a kb
    casegraph export out/kb.nt                   # canonicalize a triples file

Configuration is TOML; every key is optional and defaults to the packaged
demo data, so a bare ``casegraph run`` works out of the box. Paths inside
a config file are resolved relative to the file. Exit status is 0 on
success, 1 for input or configuration problems, 2 for internal errors.
"""

from __future__ import annotations

import argparse
import importlib.resources
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import events as events_mod
from . import ingest, lexicon, tagmap
from .errors import CasegraphError, ConfigError
from .kb import (
    Query,
    QueryForm,
    ResultTable,
    SchemaVocabulary,
    TripleStore,
    evaluate,
    load_schema,
    parse as parse_ntriples,
    parse_query,
    populate,
    serialize,
    serialize_term,
)
from .kb.populate import DEFAULT_NAMESPACE

log = logging.getLogger("casegraph")


# ---------------------------------------------------------------------------
# configuration

@dataclass
class PipelineConfig:
    corpus: Path
    pos_lexicon: Path
    gazetteers: list[Path]
    mapping_rules: Path
    mapping_manifest: Path
    apply_tagmap: bool
    thesauri: list[tuple[Path, Path]]  # (terms file, manifest file)
    include_schema: bool
    out_dir: Path
    namespace: str
    fuzzy_max: int | None
    workers: int
    case_id: str
    language: str


def _data_root() -> Path:
    return Path(str(importlib.resources.files("casegraph").joinpath("data")))


def default_config() -> PipelineConfig:
    data = _data_root()
    demo = data / "demo"
    return PipelineConfig(
        corpus=demo / "corpus.tsv",
        pos_lexicon=demo / "pos_lexicon.tsv",
        gazetteers=sorted((demo / "gazetteers").glob("*.txt")),
        mapping_rules=data / "tagmap_rules.csv",
        mapping_manifest=data / "tagmap_manifest.csv",
        apply_tagmap=False,
        thesauri=[
            (data / "eurovoc_criminal_law.tsv", data / "eurovoc_criminal_law_manifest.csv"),
            (data / "extended_ontology.tsv", data / "extended_ontology_manifest.csv"),
        ],
        include_schema=True,
        out_dir=Path("out"),
        namespace=DEFAULT_NAMESPACE,
        fuzzy_max=None,
        workers=4,
        case_id="case",
        language="pt",
    )


_CONFIG_KEYS = {
    "corpus", "pos_lexicon", "gazetteers", "mapping_rules", "mapping_manifest",
    "apply_tagmap", "thesauri", "include_schema", "out_dir", "namespace",
    "fuzzy_max", "workers", "case_id", "language",
}


def load_config(path: str | Path | None) -> PipelineConfig:
    """Packaged defaults, overlaid with the TOML file when one is given."""
    cfg = default_config()
    if path is None:
        return cfg
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"bad TOML in {path}: {exc}") from None

    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")

    base = path.parent

    def respath(value) -> Path:
        if not isinstance(value, str):
            raise ConfigError(f"expected a path string, got {value!r}")
        return base / value

    if "corpus" in raw:
        cfg.corpus = respath(raw["corpus"])
    if "pos_lexicon" in raw:
        cfg.pos_lexicon = respath(raw["pos_lexicon"])
    if "gazetteers" in raw:
        cfg.gazetteers = [respath(v) for v in _aslist(raw["gazetteers"], "gazetteers")]
    if "mapping_rules" in raw:
        cfg.mapping_rules = respath(raw["mapping_rules"])
    if "mapping_manifest" in raw:
        cfg.mapping_manifest = respath(raw["mapping_manifest"])
    if "apply_tagmap" in raw:
        cfg.apply_tagmap = _asbool(raw["apply_tagmap"], "apply_tagmap")
    if "thesauri" in raw:
        cfg.thesauri = []
        for item in _aslist(raw["thesauri"], "thesauri"):
            if not isinstance(item, dict) or set(item) != {"file", "manifest"}:
                raise ConfigError(
                    "each thesauri item needs exactly the keys 'file' and 'manifest'"
                )
            cfg.thesauri.append((respath(item["file"]), respath(item["manifest"])))
    if "include_schema" in raw:
        cfg.include_schema = _asbool(raw["include_schema"], "include_schema")
    if "out_dir" in raw:
        cfg.out_dir = respath(raw["out_dir"])
    if "namespace" in raw:
        if not isinstance(raw["namespace"], str):
            raise ConfigError("namespace must be a string")
        cfg.namespace = raw["namespace"]
    if "fuzzy_max" in raw:
        if not isinstance(raw["fuzzy_max"], int) or raw["fuzzy_max"] < 0:
            raise ConfigError("fuzzy_max must be a non-negative integer")
        cfg.fuzzy_max = raw["fuzzy_max"]
    if "workers" in raw:
        if not isinstance(raw["workers"], int) or raw["workers"] < 1:
            raise ConfigError("workers must be a positive integer")
        cfg.workers = raw["workers"]
    if "case_id" in raw:
        cfg.case_id = str(raw["case_id"])
    if "language" in raw:
        cfg.language = str(raw["language"])
    return cfg


def _aslist(value, key: str) -> list:
    if not isinstance(value, list):
        raise ConfigError(f"{key} must be an array")
    return value


def _asbool(value, key: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"{key} must be true or false")
    return value


def _read_text(path: Path, what: str) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {what} {path}: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands

def cmd_annotate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    raw_path = Path(args.rawfile)
    raw = _read_text(raw_path, "raw text file")
    pos_lexicon = ingest.load_pos_lexicon(cfg.pos_lexicon)
    gazetteers = [ingest.load_gazetteer(p) for p in cfg.gazetteers]
    doc = ingest.annotate_baseline(
        raw,
        pos_lexicon,
        gazetteers,
        doc_id=args.doc_id or raw_path.stem,
        case_id=args.case_id or cfg.case_id,
        language=args.language or cfg.language,
    )
    _emit(ingest.serialize_corpus([doc]), args.out)
    return 0


def _load_corpus(corpus: Path) -> list:
    if corpus.is_dir():
        paths = sorted(corpus.glob("*.tsv"))
        if not paths:
            raise ConfigError(f"corpus directory {corpus} holds no .tsv files")
    else:
        paths = [corpus]
    docs = []
    seen: set[str] = set()
    for path in paths:
        for doc in ingest.parse_corpus(_read_text(path, "corpus file")):
            if doc.doc_id in seen:
                raise ConfigError(
                    f"doc_id {doc.doc_id!r} appears in more than one corpus file"
                )
            seen.add(doc.doc_id)
            docs.append(doc)
    return docs


def cmd_run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.out:
        cfg.out_dir = Path(args.out)
    if args.fuzzy_max is not None:
        cfg.fuzzy_max = args.fuzzy_max
    if args.namespace:
        cfg.namespace = args.namespace

    docs = _load_corpus(cfg.corpus)
    if cfg.apply_tagmap:
        table = tagmap.load_mapping_table(
            _read_text(cfg.mapping_rules, "mapping rules"),
            _read_text(cfg.mapping_manifest, "mapping manifest"),
        )
        docs = [tagmap.convert_document(table, doc) for doc in docs]

    thesauri = [
        lexicon.load_thesaurus(
            _read_text(terms, "thesaurus"), _read_text(manifest, "thesaurus manifest")
        )
        for terms, manifest in cfg.thesauri
    ]
    policy = (
        lexicon.FuzzyPolicy.flat(cfg.fuzzy_max)
        if cfg.fuzzy_max is not None
        else lexicon.FuzzyPolicy()
    )

    def process(doc):
        doc_events = events_mod.extract_events(doc)
        matches: dict[str, list[lexicon.MatchResult]] = {}
        for thesaurus in thesauri:
            for event_id, results in lexicon.match_events(
                thesaurus, doc_events, policy
            ).items():
                matches.setdefault(event_id, []).extend(results)
        for results in matches.values():
            results.sort(key=lexicon.MatchResult.sort_key)
        return doc_events, matches

    workers = max(1, min(cfg.workers, len(docs) or 1))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        per_doc = list(pool.map(process, docs))

    all_events = [event for doc_events, _ in per_doc for event in doc_events]
    all_matches: dict[str, list[lexicon.MatchResult]] = {}
    for _, matches in per_doc:
        all_matches.update(matches)

    vocab = SchemaVocabulary(cfg.namespace)
    store = TripleStore()
    if cfg.include_schema:
        for thesaurus in thesauri:
            load_schema(store, thesaurus, vocab)
    populate(store, all_events, all_matches, vocab)

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    (cfg.out_dir / "events.jsonl").write_text(
        events_mod.events_to_jsonl(all_events), encoding="utf-8"
    )
    (cfg.out_dir / "matches.jsonl").write_text(
        _matches_jsonl(all_events, all_matches), encoding="utf-8"
    )
    (cfg.out_dir / "kb.nt").write_text(serialize(store), encoding="utf-8")

    method_counts = {"EXACT": 0, "LEVENSHTEIN": 0}
    for results in all_matches.values():
        for match in results:
            method_counts[match.method.value] += 1
    stats = {
        "document_count": len(docs),
        "sentence_count": sum(len(doc.sentences) for doc in docs),
        "event_count": len(all_events),
        "match_counts": method_counts,
        "triple_count": len(store),
    }
    (cfg.out_dir / "stats.json").write_text(
        json.dumps(stats, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(
        f"{stats['document_count']} document(s), {stats['event_count']} event(s), "
        f"{stats['triple_count']} triple(s) -> {cfg.out_dir}"
    )
    return 0


def _matches_jsonl(all_events, all_matches: dict[str, list]) -> str:
    lines = []
    for event in all_events:  # event order, then each event's sorted matches
        for match in all_matches.get(event.event_id, []):
            lines.append(
                json.dumps(
                    {
                        "event_id": event.event_id,
                        "surface": match.surface,
                        "term": match.term,
                        "category": match.category.value,
                        "concept_iri": match.concept_iri,
                        "source": match.source.value,
                        "method": match.method.value,
                        "distance": match.distance,
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                )
            )
    return "".join(line + "\n" for line in lines)


def format_result_table(table: ResultTable) -> str:
    lines = ["\t".join(f"?{name}" for name in table.variables)]
    for row in table.rows:
        lines.append("\t".join(serialize_term(term) for term in row))
    return "".join(line + "\n" for line in lines)


def cmd_query(args: argparse.Namespace) -> int:
    kb_path = Path(args.kb)
    store = TripleStore(parse_ntriples(_read_text(kb_path, "knowledge base")))
    query = parse_query(_read_text(Path(args.queryfile), "query file"))
    result = evaluate(store, query)

    if query.form is QueryForm.SELECT:
        _emit(format_result_table(result), args.out)
    elif query.form is QueryForm.ASK:
        _emit(("YES" if result else "NO") + "\n", args.out)
    elif query.form in (QueryForm.CONSTRUCT, QueryForm.DESCRIBE):
        _emit(serialize(result), args.out)
    else:  # INSERT / DELETE rewrite the kb file
        kb_path.write_text(serialize(store), encoding="utf-8")
        verb = "INSERTED" if query.form is QueryForm.INSERT else "DELETED"
        _emit(f"{verb} {result}\n", args.out)
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    triples = parse_ntriples(_read_text(Path(args.kbfile), "triples file"))
    _emit(serialize(set(triples)), args.out)
    return 0


def _emit(text: str, out: str | None) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casegraph",
        description="Annotated criminal-case documents to a queryable knowledge base.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p_annotate = sub.add_parser(
        "annotate", help="annotate raw text into the corpus format"
    )
    p_annotate.add_argument("rawfile", help="UTF-8 plain text file")
    p_annotate.add_argument("--config", help="pipeline TOML file")
    p_annotate.add_argument("--out", help="output path (default: stdout)")
    p_annotate.add_argument("--doc-id", help="document id (default: file stem)")
    p_annotate.add_argument("--case-id", help="case id")
    p_annotate.add_argument("--language", help="language code")
    p_annotate.set_defaults(func=cmd_annotate)

    p_run = sub.add_parser("run", help="run the full pipeline over a corpus")
    p_run.add_argument("--config", help="pipeline TOML file")
    p_run.add_argument("--out", help="output directory (overrides config)")
    p_run.add_argument(
        "--fuzzy-max",
        type=int,
        help="flat fuzzy-match distance budget (overrides the length-tiered default)",
    )
    p_run.add_argument("--namespace", help="IRI namespace for generated triples")
    p_run.set_defaults(func=cmd_run)

    p_query = sub.add_parser("query", help="run a query file against a knowledge base")
    p_query.add_argument("queryfile", help="query text file")
    p_query.add_argument("--kb", required=True, help="N-Triples knowledge-base file")
    p_query.add_argument("--out", help="output path (default: stdout)")
    p_query.set_defaults(func=cmd_query)

    p_export = sub.add_parser("export", help="canonicalize an N-Triples file")
    p_export.add_argument("kbfile", help="N-Triples file")
    p_export.add_argument("--out", help="output path (default: stdout)")
    p_export.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except CasegraphError as exc:
        log.error("%s", exc)
        return 1
    except Exception:  # pragma: no cover - defensive
        log.exception("internal error")
        return 2


if __name__ == "__main__":
    sys.exit(main())
