#!/usr/bin/env python3
"""Generate the frozen synthetic two-database fixture used by the tests.

Writes roster.csv, records_scopus.csv and records_wos.csv for 5
disciplines x 12 authors. Author profiles spread the h-index across all
six default bins, give a share of the low-h authors a dominant top paper
(top citations above h**2, so their weight k is >= 2), and overlap the
two databases' DOI sets partially. A few deliberately bad rows at the end
of the scopus export exercise the reject report.

The output is checked in under tests/data/synthetic/; rerun only when the
fixture needs to change, and commit the result.
"""

from __future__ import annotations

import argparse
import csv
import random
from pathlib import Path

SEED = 0x5C1E
DISCIPLINES = [
    "biochem_molecular_biology",
    "engineering",
    "health_medical_sciences",
    "natural_sciences",
    "social_sciences",
]
H_LADDER = [3, 5, 8, 12, 15, 18, 22, 28, 33, 38, 45, 55]


def author_profile(rng: random.Random, h: int, dominant: bool) -> list[int]:
    """Citation counts with h-index exactly h and a controlled top paper."""
    if dominant:
        top = h * h * rng.randint(2, 8)
    else:
        top = h + rng.randint(0, h)  # stays at or below h**2 for h >= 2
    mid_max = max(h, min(top, 2 * h))
    mids = [rng.randint(h, mid_max) for _ in range(h - 1)]
    tails = [rng.randint(0, h - 1) for _ in range(rng.randint(2, 8))]
    return [top, *mids, *tails]


def build_fixture(out_dir: Path) -> None:
    rng = random.Random(SEED)
    roster_rows = []
    scopus_rows = []
    wos_rows = []

    author_no = 0
    for discipline in DISCIPLINES:
        for slot, base_h in enumerate(H_LADDER):
            author_no += 1
            key = f"a{author_no:03d}"
            roster_rows.append(
                (
                    key,
                    f"0000-0002-{author_no:04d}-{author_no:04d}",
                    f"R-{1000 + author_no}-2019",
                    f"7{author_no:09d}",
                    discipline,
                    f"Author {author_no:03d}",
                )
            )

            h_scopus = max(2, base_h + rng.randint(-1, 1))
            h_wos = max(1, h_scopus + rng.choice([-2, -1, -1, 0, 0, 0, 0, 1, 1]))
            dominant = base_h <= 10 and slot % 2 == 0

            scopus_counts = author_profile(rng, h_scopus, dominant)
            wos_counts = author_profile(rng, h_wos, dominant and rng.random() < 0.8)

            scopus_dois = [f"10.5555/{key}.{i}" for i in range(len(scopus_counts))]
            for doi, c in zip(scopus_dois, scopus_counts):
                scopus_rows.append((key, doi, c, "scopus"))

            shared = int(0.75 * len(wos_counts))
            for i, c in enumerate(wos_counts):
                if i < shared and i < len(scopus_dois):
                    doi = scopus_dois[i]
                else:
                    doi = f"10.5555/{key}.w{i}"
                wos_rows.append((key, doi, c, "wos"))

    # rows the ingester must reject, in order: missing DOI, malformed DOI,
    # negative citations, and a duplicate that must collapse to the max
    scopus_rows.append(("a001", "", 7, "scopus"))
    scopus_rows.append(("a002", "not-a-doi", 3, "scopus"))
    scopus_rows.append(("a003", "10.5555/a003.0", -1, "scopus"))
    scopus_rows.append(("a004", "10.5555/a004.0", 1, "scopus"))

    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "roster.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["author_key", "orcid", "researcher_id", "scopus_id", "discipline", "display_name"]
        )
        writer.writerows(roster_rows)
    for name, rows in (("records_scopus.csv", scopus_rows), ("records_wos.csv", wos_rows)):
        with open(out_dir / name, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["author_key", "doi", "citations", "source"])
            writer.writerows(rows)

    print(f"authors: {len(roster_rows)}  disciplines: {len(DISCIPLINES)}")
    print(f"scopus rows: {len(scopus_rows)}  wos rows: {len(wos_rows)}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=Path(__file__).resolve().parent.parent / "tests" / "data" / "synthetic",
        type=Path,
    )
    build_fixture(parser.parse_args().out)
