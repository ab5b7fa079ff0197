#!/usr/bin/env python3
"""Generate the two shipped thesaurus files and their manifests.

The criminal-law thesaurus is a curated term list in the EuroVoc style
(lowercase descriptors, numeric concept ids); the extended ontology is the
hand-picked list of additional crime, actor, place and object terms that
the matcher links mentions against. Category counts are fixed here and
pinned by the manifests.

Usage: python scripts/make_thesauri.py [--out-dir src/casegraph/data]
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path
from urllib.parse import quote

EUROVOC_BASE = "http://eurovoc.example/concept/"
EXTENDED_BASE = "http://agatha.example/onto#concept/"

EUROVOC_ACTORS = [
    "victim", "offender", "suspect", "defendant", "witness",
    "accomplice", "detainee", "hostage", "juvenile offender",
]

EUROVOC_EVENTS = [
    "theft", "fraud", "robbery", "burglary", "assault",
    "murder", "homicide", "manslaughter", "kidnapping", "abduction",
    "extortion", "blackmail", "bribery", "corruption", "embezzlement",
    "money laundering", "tax evasion", "smuggling", "trafficking in persons",
    "drug trafficking", "arms trafficking", "piracy", "hijacking", "terrorism",
    "arson", "vandalism", "sabotage", "espionage", "treason",
    "perjury", "obstruction of justice", "contempt of court", "forgery",
    "counterfeiting", "identity theft", "cybercrime", "hacking", "phishing",
    "spoofing", "harassment", "stalking", "intimidation", "coercion",
    "slander", "libel", "defamation", "sexual assault", "sexual abuse",
    "child abuse", "domestic violence", "infanticide", "genocide", "war crime",
    "crime against humanity", "torture", "enslavement", "slavery",
    "forced labour", "illegal detention", "false imprisonment", "hostage taking",
    "rioting", "public disorder", "trespassing", "poaching",
    "environmental crime", "insider trading", "market manipulation",
    "price fixing", "racketeering", "organised crime", "armed robbery",
    "aggravated assault", "battery", "mugging", "pickpocketing", "shoplifting",
    "carjacking", "vehicle theft", "receiving stolen goods", "drug possession",
    "drug production", "drug distribution", "drunk driving", "hit and run",
    "reckless driving", "criminal negligence", "malpractice", "breach of trust",
    "arrest", "indictment", "prosecution", "conviction", "sentencing",
    "acquittal", "appeal proceedings", "parole", "probation", "pardon",
    "amnesty", "extradition", "deportation", "expulsion", "imprisonment",
    "detention", "custody", "interrogation", "criminal investigation",
    "surveillance", "search and seizure", "confiscation", "forfeiture",
    "restitution", "compensation for victims", "rehabilitation of offenders",
    "recidivism", "repatriation", "capital punishment", "community service",
    "house arrest", "solitary confinement", "plea bargaining",
    "witness tampering", "jury tampering", "money forgery", "document fraud",
    "customs offence", "tax offence", "juvenile delinquency",
    "illegal immigration", "people smuggling", "wildlife trafficking",
    "cyberstalking",
]

EUROVOC_PLACES = [
    "prison", "penitentiary", "correctional facility", "detention centre",
    "remand centre", "jail", "courtroom", "courthouse", "police station",
    "prosecutor office", "forensic laboratory", "probation office",
    "penal colony", "open prison", "halfway house", "holding cell",
    "juvenile facility", "crime scene", "border checkpoint", "customs office",
    "tribunal", "reformatory school",
]

EUROVOC_OBJECTS = ["fine", "weapon", "criminal proceeds"]

EXTENDED_ACTORS = ["Victim", "Inmate", "Prisoner", "Hostage", "Hijacker", "Accomplice"]

EXTENDED_EVENTS = [
    "Slavery", "Trade", "Tax", "Evasion", "Spoofing", "Slander", "Shady",
    "Violence", "Sexual", "Scam", "Repentance", "Rehabilitation", "Refoulement",
    "Rape", "Punishment", "Ponzi", "Piracy", "Aggression", "Phishing",
    "Trafficking", "Pardon", "Harassment", "Mobbing", "Misdemeanour", "Libel",
    "Trading", "Imprisonment", "Restraint", "Theft", "Arrest", "Homicide",
    "Hit-and-run", "Hijacking", "Forgery", "Forfeiture", "Fraud", "Fight",
    "Falsification", "Extradition", "Expulsion", "Elimination", "Offence",
    "Drug", "Detention", "Deprivation", "Deportation", "Defamation", "Penalty",
    "Negligence", "Execution", "Counterfeit", "Corruption", "Confiscation",
    "Conditional", "Con", "Order", "Complicity", "Campaign", "Bully", "Breach",
    "Banish", "Aggravate", "Crime", "Abduction",
]

EXTENDED_OBJECTS = ["Fine", "Invoice", "Bill"]

EXTENDED_PLACES = [
    "Facility", "Institution", "Center", "Confinement", "Reformatory",
    "Penitentiary", "Penal", "Prison", "Jail", "Isolation", "Banco",
]

EXPECTED = {
    "eurovoc": {"Actor": 9, "Event": 133, "Place": 22, "Object": 3},
    "extended": {"Actor": 6, "Event": 64, "Object": 3, "Place": 11},
}


def build_eurovoc() -> list[tuple[str, str, str, str]]:
    rows = []
    concept = 1000
    for category, terms in (
        ("Actor", EUROVOC_ACTORS),
        ("Event", EUROVOC_EVENTS),
        ("Place", EUROVOC_PLACES),
        ("Object", EUROVOC_OBJECTS),
    ):
        for term in terms:
            rows.append((term, category, f"{EUROVOC_BASE}{concept}", "eurovoc"))
            concept += 1
    return rows


def build_extended() -> list[tuple[str, str, str, str]]:
    rows = []
    for category, terms in (
        ("Actor", EXTENDED_ACTORS),
        ("Event", EXTENDED_EVENTS),
        ("Object", EXTENDED_OBJECTS),
        ("Place", EXTENDED_PLACES),
    ):
        for term in terms:
            iri = EXTENDED_BASE + quote(term, safe="")
            rows.append((term, category, iri, "extended"))
    return rows


def check(name: str, rows: list[tuple[str, str, str, str]]) -> None:
    lowered = [term.lower() for term, _, _, _ in rows]
    if len(set(lowered)) != len(lowered):
        dupes = sorted({t for t in lowered if lowered.count(t) > 1})
        raise SystemExit(f"{name}: case-insensitive duplicate terms: {dupes}")
    counts: dict[str, int] = {}
    for _, category, _, _ in rows:
        counts[category] = counts.get(category, 0) + 1
    if counts != EXPECTED[name]:
        raise SystemExit(f"{name}: category counts {counts} != expected {EXPECTED[name]}")


def write_thesaurus(
    out_dir: Path, stem: str, comment: str, rows: list[tuple[str, str, str, str]]
) -> None:
    tsv_path = out_dir / f"{stem}.tsv"
    with tsv_path.open("w", encoding="utf-8") as fh:
        fh.write(f"# {comment}\n")
        fh.write("# term<TAB>category<TAB>concept_iri<TAB>source\n")
        for row in rows:
            fh.write("\t".join(row) + "\n")

    counts: dict[str, int] = {}
    for _, category, _, _ in rows:
        counts[category] = counts.get(category, 0) + 1
    manifest_path = out_dir / f"{stem}_manifest.csv"
    with manifest_path.open("w", encoding="utf-8", newline="") as fh:
        fh.write("# Expected term counts per category.\n")
        writer = csv.writer(fh)
        for category in ("Actor", "Event", "Place", "Object"):
            writer.writerow([category, counts.get(category, 0)])
        writer.writerow(["TOTAL", len(rows)])
    print(f"wrote {len(rows)} terms to {tsv_path}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir", type=Path, default=Path("src/casegraph/data"), help="target directory"
    )
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    eurovoc = build_eurovoc()
    check("eurovoc", eurovoc)
    write_thesaurus(
        args.out_dir,
        "eurovoc_criminal_law",
        "Criminal-justice descriptors, curated in the EuroVoc style.",
        eurovoc,
    )

    extended = build_extended()
    check("extended", extended)
    write_thesaurus(
        args.out_dir,
        "extended_ontology",
        "Extended crime-domain term list complementing the EuroVoc descriptors.",
        extended,
    )


if __name__ == "__main__":
    main()
