"""Shared constants and small helpers used across the package."""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator, Sequence

#: Library-wide absolute tolerance.  Branch lengths and node heights are
#: compared with this value directly; pairwise-distance entries (which are
#: twice a height) are compared with it directly as well, so the two scales
#: meet only at exactly-zero edges in practice.
DEFAULT_TOL = 1e-9

_DIGIT_RUN = re.compile(r"(\d+)")


def natural_key(label: str) -> tuple:
    """Sort key that orders digit runs numerically, so 'S2' < 'S10'."""
    return tuple(
        (0, int(part)) if part.isdigit() else (1, part)
        for part in _DIGIT_RUN.split(label)
    )


def sorted_labels(labels: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(labels, key=natural_key))


def label_pairs(labels: Sequence[str]) -> list[tuple[str, str]]:
    """All unordered pairs of already-sorted labels, lexicographic order."""
    return list(itertools.combinations(labels, 2))


def pair_index(n: int, i: int, j: int) -> int:
    """Condensed index of the pair (i, j), i < j, among n items."""
    if not 0 <= i < j < n:
        raise ValueError(f"bad pair ({i}, {j}) for n={n}")
    return n * i - i * (i + 1) // 2 + (j - i - 1)


def tol_groups(sorted_values: Sequence[float], tol: float) -> Iterator[tuple[int, int]]:
    """Yield (start, stop) runs of an ascending sequence, split where the
    gap between consecutive values exceeds tol."""
    start = 0
    for k in range(1, len(sorted_values)):
        if sorted_values[k] - sorted_values[k - 1] > tol:
            yield start, k
            start = k
    if len(sorted_values) > 0:
        yield start, len(sorted_values)
