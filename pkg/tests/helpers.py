"""Shared helpers for the test suite: seeded generators and oracles."""

from __future__ import annotations

import itertools
from fractions import Fraction
from random import Random

from easyqg import ColoredPartition, WHITE, BLACK, family_category


def random_partition(rng: Random, max_points: int = 8) -> ColoredPartition:
    """A uniform-ish random colored partition (not necessarily noncrossing)."""
    m = rng.randint(1, max_points)
    k = rng.randint(0, m)
    labels = []
    top = -1
    for _ in range(m):
        lab = rng.randint(0, top + 1)
        labels.append(lab)
        top = max(top, lab)
    blocks: dict[int, list[int]] = {}
    for point, lab in enumerate(labels, start=1):
        blocks.setdefault(lab, []).append(point)
    colors = [rng.choice((WHITE, BLACK)) for _ in range(m)]
    return ColoredPartition(
        k, m - k, colors[:k], colors[k:], blocks.values()
    )


def nc_shapes(k: int, l: int, max_points: int = 8) -> list[ColoredPartition]:
    """All all-white noncrossing partitions of shape (k, l)."""
    sample = family_category("S+", max(max_points, k + l))
    return sorted(sample.iter_members(k=k, l=l, all_white=True))


def all_nc_structures(max_points: int) -> list[ColoredPartition]:
    """All all-white noncrossing partitions with at most max_points points."""
    sample = family_category("S+", max_points)
    return sorted(sample.iter_members(all_white=True))


def naive_rank(vectors: list[dict[int, int]], dim: int) -> int:
    """Plain Gaussian elimination over Fraction; independent rank oracle."""
    rows = [[Fraction(vec.get(i, 0)) for i in range(dim)] for vec in vectors]
    rank = 0
    col = 0
    while rows and col < dim:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def compositions(total: int, max_part: int) -> list[tuple[int, ...]]:
    """All compositions of ``total`` with parts in 1..max_part.

    These are exactly the words of degree ``total`` for the word family
    with modulus s = max_part, so they give independent irreducible counts.
    """
    if total == 0:
        return [()]
    out = []
    for first in range(1, min(total, max_part) + 1):
        for rest in compositions(total - first, max_part):
            out.append((first,) + rest)
    return out


def submatrix_det(data: list[list[int]], rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    sub = [[data[r][c] for c in cols] for r in rows]
    n = len(sub)
    if n == 0:
        return 1
    # expansion by minors is fine at size <= 6
    if n == 1:
        return sub[0][0]
    det = 0
    for j in range(n):
        if sub[0][j]:
            minor = [row[:j] + row[j + 1:] for row in sub[1:]]
            det += (-1) ** j * sub[0][j] * submatrix_det(
                [list(r) for r in minor],
                tuple(range(n - 1)),
                tuple(range(n - 1)),
            )
    return det


def determinantal_divisors(data: list[list[int]]) -> list[int]:
    """gcd of all k-by-k minors, for each k; an independent SNF oracle."""
    import math

    rows, cols = len(data), len(data[0]) if data else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rsel in itertools.combinations(range(rows), k):
            for csel in itertools.combinations(range(cols), k):
                g = math.gcd(g, abs(submatrix_det(data, rsel, csel)))
        out.append(g)
        if g == 0:
            break
    return out
