#!/usr/bin/env python3
"""Regenerate datasets/synth1000.csv, the bundled benchmark dataset.

1000 rows, 8 categorical attributes, binary class. The label follows a noisy
additive score over three informative attributes so that rule mining finds
real structure; the remaining attributes are distractors.
"""

from __future__ import annotations

import random
from pathlib import Path

COLUMNS = {
    "outlook": ["sunny", "overcast", "rain", "drizzle"],
    "temp": ["hot", "mild", "cool"],
    "humidity": ["high", "normal", "low"],
    "wind": ["weak", "strong", "gusty"],
    "terrain": ["flat", "hilly", "urban"],
    "season": ["spring", "summer", "autumn", "winter"],
    "crowd": ["low", "mid", "high"],
    "gear": ["none", "basic", "full"],
}

SCORES = {
    ("outlook", "overcast"): 2,
    ("outlook", "rain"): -2,
    ("outlook", "sunny"): 1,
    ("humidity", "normal"): 1,
    ("humidity", "high"): -1,
    ("wind", "strong"): -1,
    ("wind", "gusty"): -2,
    ("temp", "mild"): 1,
}


def make_rows(n: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        row = {col: rng.choice(values) for col, values in COLUMNS.items()}
        score = sum(SCORES.get((col, row[col]), 0) for col in COLUMNS)
        score += rng.choice([-1, 0, 0, 1])  # label noise
        row["play"] = "yes" if score > 0 else "no"
        rows.append(row)
    return rows


def main() -> None:
    rows = make_rows(1000, seed=20240401)
    header = list(COLUMNS) + ["play"]
    lines = [",".join(header)]
    lines += [",".join(row[c] for c in header) for row in rows]
    out = Path(__file__).resolve().parent.parent / "datasets" / "synth1000.csv"
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    labels = [r["play"] for r in rows]
    print(f"wrote {out} ({len(rows)} rows, yes={labels.count('yes')}, no={labels.count('no')})")


if __name__ == "__main__":
    main()
