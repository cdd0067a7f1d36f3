#!/usr/bin/env python3
"""Regenerates corpus200.jsonl, the synthetic fixture corpus used by the tests.

Deterministic: the output only depends on SEED. Planted content:
  * "rolling toy" patents in A63H, A63H+G09B and B60K, plus one
    "rolling mill toy crane" decoy in B21B that must not match the phrase;
  * "water seepage" patents in E21D, E02D, E04B, C09K, A61F and exactly four
    in B32B (granted 1977, 1987, 1995 and 2013).
"""

import json
import random
import sys
from pathlib import Path

SEED = 2024
TOTAL = 200

FIELDS = {
    "A63H": ["toy", "spinning top", "doll", "toy vehicle", "building block", "gaming", "ball"],
    "G09B": ["educational display", "teaching aid", "display", "learning module", "monitor"],
    "B60K": ["dual-mode drive", "vehicle controller", "hub motor", "battery pack", "wheel drive"],
    "F41A": ["launcher", "projectile", "firing mechanism", "rolling bomb", "trigger"],
    "A01C": ["seed planter", "fertilizer distribution", "soil sensor", "sowing machine"],
    "F21V": ["LED lamp", "light guide", "lighting module", "lens assembly", "LED"],
    "A62B": ["rescue device", "life jacket", "safety guard", "breathing apparatus"],
    "B08B": ["cleaning robot", "water spray", "nozzle cleaning", "dust removal"],
    "B06B": ["vibration generator", "eccentric mass", "vibrating motor", "resonator"],
    "G07C": ["authentication", "data collection", "access control", "time recorder"],
    "B32B": ["laminate sheet", "composite concrete layer", "barrier film", "layered panel"],
    "E21D": ["tunnel lining", "shaft support", "segment joint", "grout injection"],
    "E02D": ["foundation pile", "retaining wall", "sheet pile", "drainage layer"],
    "E04B": ["wall panel", "roof structure", "insulation board", "floor slab"],
    "C09K": ["sealing compound", "waterproof agent", "polymer grout", "curing agent"],
    "A61F": ["absorbent pad", "bandage", "hygiene article", "moisture barrier"],
    "G06F": ["data processing", "user interface", "memory controller", "authentication"],
    "H04L": ["network protocol", "packet routing", "data collection", "encryption"],
    "G01N": ["gas sensor", "moisture sensor", "sample analyzer", "optical probe"],
    "B21B": ["rolling mill", "roll stand", "strip rolling", "mill crane"],
}

CLUSTERS = [
    ["A63H", "G09B", "B60K", "F41A", "A01C", "F21V", "A62B", "B08B", "B06B", "G07C"],
    ["B32B", "E21D", "E02D", "E04B", "C09K", "A61F"],
    ["G06F", "H04L", "G01N", "G07C"],
    ["B21B", "B60K"],
]

INVENTORS = ["kim", "j. smith", "a. tanaka", "m. garcia", "l. chen", "r. patel", "s. müller",
             "d. okafor", "e. rossi", "h. nguyen", "p. novak", "t. berg"]
ASSIGNEES = ["Acme Toys Inc.", "Tunnel Works Ltd.", "Brightline Lighting", "AgriMach Co.",
             "Safeguard Systems", "Layered Materials GmbH", "Datacore Corp.", "Vibra Tech"]

TEMPLATES = [
    "{a} with {b}",
    "{a} and {b} assembly",
    "Method for operating {a}",
    "{a} for {b}",
    "Improved {a}",
]
ABSTRACTS = [
    "A {a} is provided in which the {b} is coupled to a housing.",
    "The {a} includes a {b} and a control unit.",
    "An apparatus comprising a {a}, wherein the {b} is adjustable.",
    "A {a} having a {b} mounted on a frame for improved durability.",
]


def make_date(rng, year=None):
    year = year or rng.randint(1976, 2018)
    roll = rng.random()
    if roll < 0.05:
        return f"{year}"
    if roll < 0.12:
        return f"{year}-{rng.randint(1, 12):02d}"
    return f"{year}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"


def main():
    rng = random.Random(SEED)
    prior_art = {f: [f"US3{i:03d}{n:03d}" for n in range(12)] for i, f in enumerate(FIELDS)}
    shared = {c: [f"US2{c:03d}{n:03d}" for n in range(10)] for c in range(len(CLUSTERS))}

    planted = []
    for i in range(6):
        planted.append((["A63H 33/26"], f"Rolling toy with {rng.choice(['LED', 'gaming', 'spring'])} module",
                        "A rolling toy includes a spherical shell and a drive unit.", None))
    for _ in range(2):
        planted.append((["A63H 33/00", "G09B 19/00"], "Educational rolling toy",
                        "The rolling toy teaches counting through a display.", None))
    for _ in range(2):
        planted.append((["B60K 7/00"], "Dual-mode drive for a rolling toy",
                        "A dual-mode vehicular controller drives the wheels.", None))
    planted.append((["B21B 1/00"], "Rolling mill toy crane",
                    "A rolling mill toy crane for demonstrations.", None))
    for year in (1977, 1987, 1995, 2013):
        planted.append((["B32B 13/04"], "Composite layer against water seepage",
                        "A composite concrete layer prevents water seepage through tunnel walls.", year))
    for field, n in (("E21D 11/38", 6), ("E02D 31/02", 4), ("E04B 1/64", 3), ("C09K 3/10", 2),
                     ("A61F 13/15", 1)):
        for _ in range(n):
            planted.append(([field], f"Drainage system for water seepage in {field[:4].lower()}",
                            "Water seepage is collected and drained.", None))

    codes = list(FIELDS)
    records = []
    background = TOTAL - len(planted)
    plans = planted + [None] * background
    for n, plan in enumerate(plans):
        if plan is None:
            main_field = codes[n % len(codes)]
            ipc = [f"{main_field} {rng.randint(1, 40)}/{rng.randint(0, 9):02d}"]
            if rng.random() < 0.2:
                other = rng.choice(codes)
                if other != main_field:
                    ipc.append(f"{other} {rng.randint(1, 40)}/00")
            words = FIELDS[main_field]
            a, b = rng.sample(words, 2)
            title = rng.choice(TEMPLATES).format(a=a, b=b)
            title = title[0].upper() + title[1:]
            abstract = rng.choice(ABSTRACTS).format(a=a, b=b)
            year = None
        else:
            ipc, title, abstract, year = plan
        records.append({"ipc": ipc, "title": title, "abstract": abstract,
                        "grant_date": make_date(rng, year)})

    rng.shuffle(records)
    for n, rec in enumerate(records):
        rec["id"] = f"US{5000000 + n * 137:07d}"

    for n, rec in enumerate(records):
        fields = [code.split()[0] for code in rec["ipc"]]
        cited = []
        for field in fields:
            cited += rng.sample(prior_art[field], rng.randint(1, 4))
            for c, members in enumerate(CLUSTERS):
                if field in members and rng.random() < 0.6:
                    cited += rng.sample(shared[c], rng.randint(1, 3))
        if rng.random() < 0.1:
            cited.append(rng.choice(rng.choice(list(prior_art.values()))))
        if n > 0 and rng.random() < 0.5:
            cited += [records[rng.randrange(n)]["id"] for _ in range(rng.randint(1, 2))]
        if rng.random() < 0.05:
            cited += [cited[0]] if cited else []
        rec["cited"] = cited
        rec["inventors"] = rng.sample(INVENTORS, rng.randint(0, 2))
        rec["assignees"] = rng.sample(ASSIGNEES, rng.randint(0, 1))

    keys = ["id", "title", "abstract", "grant_date", "ipc", "cited", "inventors", "assignees"]
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).with_name("corpus200.jsonl")
    with out.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps({k: rec[k] for k in keys}, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
