"""Named (n_3) configurations used as fixtures and examples"""
from itertools import combinations
from typing import Dict, List

from src.analysis.incidence import gen_cyclic
from src.models.configuration import IncidenceStructure
from src.models.errors import DomainError

# Three rows per table; column j is block j
KNOWN_TABLES: Dict[str, List[List[int]]] = {
    "pappus": [
        [1, 1, 1, 2, 2, 2, 3, 3, 3],
        [4, 5, 6, 4, 5, 6, 4, 5, 6],
        [7, 8, 9, 8, 9, 7, 9, 7, 8],
    ],
    "9_3_2": [
        [1, 1, 1, 2, 2, 2, 3, 3, 4],
        [3, 4, 5, 4, 5, 6, 5, 6, 7],
        [7, 6, 8, 8, 7, 9, 9, 8, 9],
    ],
    "9_3_3": [
        [1, 1, 1, 2, 2, 2, 3, 3, 3],
        [4, 5, 8, 4, 5, 7, 4, 6, 7],
        [7, 6, 9, 6, 8, 9, 5, 9, 8],
    ],
    "cyclic_9_2_6": [
        [2, 4, 6, 8, 1, 3, 5, 7, 9],
        [4, 6, 8, 1, 3, 5, 7, 9, 2],
        [8, 1, 3, 5, 7, 9, 2, 4, 6],
    ],
    "10_3_10": [
        [10, 1, 2, 3, 4, 5, 6, 7, 8, 9],
        [1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        [3, 4, 5, 6, 7, 8, 9, 10, 1, 2],
    ],
}


def from_rows(rows: List[List[int]]) -> IncidenceStructure:
    n = len(rows[0])
    return IncidenceStructure(n=n, blocks=[tuple(row[j] for row in rows) for j in range(n)])


def desargues() -> IncidenceStructure:
    """
    Points are the 2-subsets of {1..5}, lines the 3-subsets, incidence is containment
    Marks are numbered by the lexicographic order of the pairs.
    """
    pairs = list(combinations(range(1, 6), 2))
    mark = {pair: i for i, pair in enumerate(pairs, start=1)}
    blocks = [tuple(mark[pair] for pair in combinations(triple, 2)) for triple in combinations(range(1, 6), 3)]
    return IncidenceStructure(n=len(pairs), blocks=blocks)


def known_names() -> List[str]:
    return sorted(list(KNOWN_TABLES) + ["desargues", "fano"])


def load_known(name: str) -> IncidenceStructure:
    key = name.lower().replace("-", "_")
    if key in KNOWN_TABLES:
        return from_rows(KNOWN_TABLES[key])
    if key == "desargues":
        return desargues()
    if key == "fano":
        return gen_cyclic(7, 1, 3)
    raise DomainError(f"unknown configuration {name!r}; known: {', '.join(known_names())}")
