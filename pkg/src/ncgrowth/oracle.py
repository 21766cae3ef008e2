"""Brute-force linear-algebra oracle for graded quotient dimensions.

Independent of the rewriting machinery: the degree-``n`` component of the
ideal is the span of all shifts ``u*f*v`` of the defining relations, and its
dimension is found by exact Gaussian elimination.
"""

from __future__ import annotations

from itertools import product

from .core import Presentation, Word


def ideal_rank(pres: Presentation, n: int) -> int:
    """Dimension of the degree-``n`` part of the two-sided ideal."""
    F = pres.field
    g = len(pres.alphabet)
    pivots: dict[Word, dict[Word, object]] = {}
    for f in pres.relations:
        d = f.degree
        if d > n:
            continue
        for left_len in range(n - d + 1):
            right_len = n - d - left_len
            for u in product(range(g), repeat=left_len):
                for v in product(range(g), repeat=right_len):
                    row = {u + w + v: c for w, c in f.terms}
                    _insert(row, pivots, F)
    return len(pivots)


def _insert(row: dict, pivots: dict, F) -> None:
    # plain lexicographic pivot on the word tuple; any fixed column order works
    while row:
        col = min(row)
        piv = pivots.get(col)
        if piv is None:
            inv = F.inv(row[col])
            pivots[col] = {w: F.mul(c, inv) for w, c in row.items()}
            return
        c = row[col]
        for w, a in piv.items():
            new = F.sub(row.get(w, F.zero), F.mul(c, a))
            if new:
                row[w] = new
            else:
                row.pop(w, None)


def quotient_dimensions(pres: Presentation, N: int) -> list[int]:
    """``g**n - rank_n`` for ``n = 0..N``."""
    g = len(pres.alphabet)
    return [g ** n - ideal_rank(pres, n) for n in range(N + 1)]


def distinct_part_weights(N: int) -> list[int]:
    """``sum 2^len(parts)`` over partitions of ``n`` into distinct parts, by explicit enumeration."""
    out = [0] * (N + 1)

    def walk(n: int, largest: int, parts: int, total: int) -> None:
        if n == 0:
            out[total] += 2 ** parts
            return
        for part in range(min(largest, n), 0, -1):
            walk(n - part, part - 1, parts + 1, total)

    for n in range(N + 1):
        walk(n, n, 0, n)
    return out
