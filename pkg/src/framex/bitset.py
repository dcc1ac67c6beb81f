"""Edge sets are plain ints used as bitmasks (bit k <=> edge id k).

The canonical order on edge sets used everywhere for enumeration and
tie-breaking is ascending integer value of the mask, i.e. colexicographic
on the sorted id tuples.  Any fixed total order gives the reproducibility
the certificates need; this one is the cheapest to compute.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def ids_of(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def subsets_of_size(ids: tuple[int, ...], k: int) -> Iterator[int]:
    """Masks of all k-subsets of the given ids, in canonical order."""
    from itertools import combinations

    for combo in combinations(ids, k):
        yield mask_of(combo)


def reduce_by_rows(vec: int, rows: Iterable[int]) -> int:
    """Reduce vec against GF(2) rows that are in row-echelon form
    (each row's lowest set bit is its pivot, pivots strictly increasing)."""
    for row in rows:
        pivot = row & -row
        if vec & pivot:
            vec ^= row
    return vec


def echelon(vectors: Iterable[int]) -> list[int]:
    """Fully reduced GF(2) row-echelon basis (lowest-set-bit pivots,
    pivots ascending, each pivot appearing in exactly one row)."""
    rows: list[int] = []
    for vec in vectors:
        for row in rows:
            if vec & (row & -row):
                vec ^= row
        if vec:
            rows.append(vec)
            rows.sort(key=lambda r: r & -r)
    # back-substitute so the form is canonical for subspace comparison
    for i, row in enumerate(rows):
        for other in rows[i + 1 :]:
            if row & (other & -other):
                row ^= other
        rows[i] = row
    return sorted(rows, key=lambda r: r & -r)


def in_span(vec: int, echelon_rows: Iterable[int]) -> bool:
    return reduce_by_rows(vec, echelon_rows) == 0
