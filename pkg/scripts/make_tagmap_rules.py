#!/usr/bin/env python3
"""Generate the POS mapping rule table and its manifest.

For each source category the generator enumerates feature combinations
(absent features allowed) in a deterministic order — bare category first,
then combinations with few features — keeps the first N, and derives an
EAGLES tag for each combination positionally. N per category is fixed by
COUNTS below; the manifest written alongside the rules pins those counts
so the loader can detect drift.

Usage: python scripts/make_tagmap_rules.py [--out-dir src/casegraph/data]
"""

from __future__ import annotations

import argparse
import csv
import itertools
from pathlib import Path

COUNTS = {
    "NOUN": 20,
    "VERB": 101,
    "PROPN": 39,
    "PRON": 121,
    "ADJ": 70,
    "DET": 62,
    "AUX": 149,
    "ADP": 3,
    "NUM": 1,
    "PUNCT": 18,
    "CCONJ": 1,
    "SCONJ": 1,
    "INTJ": 1,
    "ADV": 2,
}

# Feature slots per category: (feature, candidate values). A combination may
# leave any slot absent, so each category also yields a bare fallback rule.
SLOTS: dict[str, list[tuple[str, list[str]]]] = {
    "NOUN": [
        ("Gender", ["Masc", "Fem"]),
        ("Number", ["Sing", "Plur"]),
        ("Degree", ["Aug", "Dim"]),
    ],
    "VERB": [
        ("Mood", ["Ind", "Sub", "Imp", "Cnd"]),
        ("VerbForm", ["Fin", "Inf", "Ger", "Part"]),
        ("Tense", ["Pres", "Past", "Imp", "Fut", "Pqp"]),
        ("Person", ["1", "2", "3"]),
        ("Number", ["Sing", "Plur"]),
    ],
    "PROPN": [
        ("Gender", ["Masc", "Fem"]),
        ("Number", ["Sing", "Plur"]),
        ("NameType", ["Giv", "Sur", "Geo", "Com", "Oth"]),
    ],
    "PRON": [
        ("PronType", ["Prs", "Dem", "Ind", "Int", "Rel", "Tot", "Neg"]),
        ("Person", ["1", "2", "3"]),
        ("Gender", ["Masc", "Fem"]),
        ("Number", ["Sing", "Plur"]),
        ("Case", ["Nom", "Acc", "Dat"]),
    ],
    "ADJ": [
        ("Gender", ["Masc", "Fem"]),
        ("Number", ["Sing", "Plur"]),
        ("Degree", ["Cmp", "Sup", "Abs"]),
        ("NumType", ["Ord"]),
    ],
    "DET": [
        ("PronType", ["Art", "Dem", "Ind", "Int", "Rel"]),
        ("Definite", ["Def", "Ind"]),
        ("Gender", ["Masc", "Fem"]),
        ("Number", ["Sing", "Plur"]),
    ],
    "AUX": [
        ("Mood", ["Ind", "Sub", "Imp", "Cnd"]),
        ("VerbForm", ["Fin", "Inf", "Ger", "Part"]),
        ("Tense", ["Pres", "Past", "Imp", "Fut", "Pqp"]),
        ("Person", ["1", "2", "3"]),
        ("Number", ["Sing", "Plur"]),
    ],
    "ADP": [
        ("AdpType", ["Prep"]),
        ("Gender", ["Masc"]),
    ],
    "NUM": [],
    "PUNCT": [
        ("PunctType", ["Peri", "Comm", "Brck", "Qest", "Excl", "Quot", "Dash", "Colo", "Semi"]),
        ("PunctSide", ["Ini", "Fin"]),
    ],
    "CCONJ": [],
    "SCONJ": [],
    "INTJ": [],
    "ADV": [("Polarity", ["Neg"])],
}


def combos(category: str, count: int) -> list[dict[str, str]]:
    slots = SLOTS[category]
    options = [[None, *values] for _, values in slots]
    enumerated = []
    for order, choice in enumerate(itertools.product(*options)):
        present = {
            slots[i][0]: value for i, value in enumerate(choice) if value is not None
        }
        enumerated.append((len(present), order, present))
    enumerated.sort(key=lambda item: (item[0], item[1]))
    if len(enumerated) < count:
        raise SystemExit(
            f"{category}: only {len(enumerated)} combinations available, need {count}"
        )
    return [present for _, _, present in enumerated[:count]]


# ---------------------------------------------------------------------------
# positional EAGLES tag derivation

def _gender(f: dict) -> str:
    return {"Masc": "M", "Fem": "F"}.get(f.get("Gender"), "C")


def _number(f: dict) -> str:
    return {"Sing": "S", "Plur": "P"}.get(f.get("Number"), "N")


def _mood(f: dict) -> str:
    mood = {"Ind": "I", "Sub": "S", "Imp": "M", "Cnd": "C"}.get(f.get("Mood"))
    if mood:
        return mood
    return {"Fin": "I", "Inf": "N", "Ger": "G", "Part": "P"}.get(f.get("VerbForm"), "0")


def _tense(f: dict) -> str:
    return {"Pres": "P", "Past": "S", "Imp": "I", "Fut": "F", "Pqp": "M"}.get(
        f.get("Tense"), "0"
    )


def _verb(type_char: str, f: dict) -> str:
    person = f.get("Person", "0")
    number = {"Sing": "S", "Plur": "P"}.get(f.get("Number"), "0")
    return f"V{type_char}{_mood(f)}{_tense(f)}{person}{number}0"


def tag_noun(f: dict) -> str:
    degree = {"Aug": "A", "Dim": "D"}.get(f.get("Degree"), "0")
    return f"NC{_gender(f)}{_number(f)}00{degree}"


def tag_propn(f: dict) -> str:
    semclass = {"Giv": "SP", "Sur": "SP", "Geo": "G0", "Com": "O0", "Oth": "V0"}.get(
        f.get("NameType"), "00"
    )
    return f"NP{_gender(f)}{_number(f)}{semclass}0"


def tag_pron(f: dict) -> str:
    ptype = {
        "Prs": "P", "Dem": "D", "Ind": "I", "Int": "T", "Rel": "R", "Tot": "I", "Neg": "I",
    }.get(f.get("PronType"), "P")
    person = f.get("Person", "0")
    case = {"Nom": "N", "Acc": "A", "Dat": "D"}.get(f.get("Case"), "0")
    return f"P{ptype}{person}{_gender(f)}{_number(f)}{case}00"


def tag_adj(f: dict) -> str:
    atype = "O" if f.get("NumType") == "Ord" else "Q"
    degree = {"Cmp": "C", "Sup": "S", "Abs": "A"}.get(f.get("Degree"), "0")
    return f"A{atype}{degree}{_gender(f)}{_number(f)}0"


def tag_det(f: dict) -> str:
    dtype = {"Art": "A", "Dem": "D", "Ind": "I", "Int": "T", "Rel": "R"}.get(
        f.get("PronType")
    )
    if dtype is None:
        dtype = {"Def": "A", "Ind": "I"}.get(f.get("Definite"), "A")
    return f"D{dtype}0{_gender(f)}{_number(f)}0"


def tag_adp(f: dict) -> str:
    if f.get("Gender"):
        return f"SPC{_gender(f)}S"  # contracted preposition carries agreement
    return "SPS00"


def tag_punct(f: dict) -> str:
    side = f.get("PunctSide")
    ptype = f.get("PunctType")
    if ptype == "Brck":
        return "Fpa" if side == "Ini" else "Fpt"
    if ptype == "Qest":
        return "Fia" if side == "Ini" else "Fit"
    if ptype == "Excl":
        return "Faa" if side == "Ini" else "Fat"
    base = {
        "Peri": "Fp", "Comm": "Fc", "Quot": "Fe", "Dash": "Fg", "Colo": "Fd", "Semi": "Fx",
    }.get(ptype, "Fz")
    return base


TAGGERS = {
    "NOUN": tag_noun,
    "VERB": lambda f: _verb("M", f),
    "PROPN": tag_propn,
    "PRON": tag_pron,
    "ADJ": tag_adj,
    "DET": tag_det,
    "AUX": lambda f: _verb("A", f),
    "ADP": tag_adp,
    "NUM": lambda f: "Z",
    "PUNCT": tag_punct,
    "CCONJ": lambda f: "CC",
    "SCONJ": lambda f: "CS",
    "INTJ": lambda f: "I",
    "ADV": lambda f: "RN" if f.get("Polarity") == "Neg" else "RG",
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir", type=Path, default=Path("src/casegraph/data"), help="target directory"
    )
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    rows: list[tuple[str, str, str]] = []
    for category, count in COUNTS.items():
        for features in combos(category, count):
            feature_text = "|".join(f"{k}={v}" for k, v in sorted(features.items()))
            rows.append((category, feature_text, TAGGERS[category](features)))

    rules_path = args.out_dir / "tagmap_rules.csv"
    with rules_path.open("w", encoding="utf-8", newline="") as fh:
        fh.write("# POS mapping rules: category,features,eagles\n")
        fh.write("# Generated by scripts/make_tagmap_rules.py; do not edit by hand.\n")
        csv.writer(fh).writerows(rows)

    manifest_path = args.out_dir / "tagmap_manifest.csv"
    with manifest_path.open("w", encoding="utf-8", newline="") as fh:
        fh.write("# Expected rule counts per category.\n")
        writer = csv.writer(fh)
        for category, count in COUNTS.items():
            writer.writerow([category, count])
        writer.writerow(["TOTAL", sum(COUNTS.values())])

    print(f"wrote {len(rows)} rules to {rules_path}")
    print(f"wrote manifest to {manifest_path}")


if __name__ == "__main__":
    main()
