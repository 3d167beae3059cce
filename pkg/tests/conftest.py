import random

import pytest

from cbakit import Dataset, parse_csv

TOY_CSV = """A,B,C
e,p,y
e,p,y
e,q,y
g,q,y
g,q,y
g,q,n
g,w,n
g,w,n
e,p,n
f,q,n
"""


@pytest.fixture
def toy() -> Dataset:
    return parse_csv(TOY_CSV)


def random_dataset(
    rng: random.Random,
    max_attrs: int = 6,
    max_values: int = 5,
    max_rows: int = 64,
    max_classes: int = 4,
    min_rows: int = 2,
) -> Dataset:
    """Random categorical dataset built through the CSV path."""
    n_attrs = rng.randint(1, max_attrs)
    n_rows = rng.randint(min_rows, max_rows)
    n_classes = rng.randint(2, max_classes)
    value_counts = [rng.randint(1, max_values) for _ in range(n_attrs)]
    header = [f"a{i}" for i in range(n_attrs)] + ["cls"]
    lines = [",".join(header)]
    for _ in range(n_rows):
        cells = [f"v{rng.randrange(value_counts[i])}" for i in range(n_attrs)]
        cells.append(f"c{rng.randrange(n_classes)}")
        lines.append(",".join(cells))
    return parse_csv("\n".join(lines) + "\n")
