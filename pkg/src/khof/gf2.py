"""GF(2) linear algebra on word-packed rows.

Rows are Python ints used as bitsets, so every XOR works on machine words
internally.  This is the elimination kernel behind the mod-2 homology ranks.
"""

from __future__ import annotations

import random
import time
from typing import List


def gf2_rank(rows: List[int]) -> int:
    """Rank of the span of the given bitset rows (destroys nothing)."""
    pivots: List[int] = []  # rows with distinct leading bits, kept reduced
    rank = 0
    for row in rows:
        for p in pivots:
            low = p & -p
            if row & low:
                row ^= p
        if row:
            pivots.append(row)
            rank += 1
    return rank


def gf2_rank_sorted(rows: List[int]) -> int:
    """Rank via elimination with pivot bookkeeping by lowest set bit.

    Faster than gf2_rank when rows are many: pivots are indexed by their
    leading bit, so each incoming row only XORs against the pivots whose
    leading bit it actually contains.
    """
    by_low: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            low = row & -row
            p = by_low.get(low)
            if p is None:
                by_low[low] = row
                rank += 1
                break
            row ^= p
    return rank


def benchmark_elimination(n_rows: int = 512, n_cols: int = 512, seed: int = 7) -> float:
    """Eliminate a random dense n_rows x n_cols GF(2) matrix; rows/second."""
    rng = random.Random(seed)
    rows = [rng.getrandbits(n_cols) | 1 for _ in range(n_rows)]
    t0 = time.perf_counter()
    gf2_rank_sorted(rows)
    dt = time.perf_counter() - t0
    return n_rows / dt if dt > 0 else float("inf")
