"""Smith normal form over the integers with exact arbitrary-precision pivots."""

from __future__ import annotations

from typing import List, Sequence, Tuple


def snf(matrix: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix.

    Returns min(m, n) nonnegative diagonal entries with the divisibility
    chain enforced; trailing entries are 0 when the rank falls short.
    """
    m = [list(row) for row in matrix]
    if not m or not m[0]:
        return ()
    rows, cols = len(m), len(m[0])
    k = min(rows, cols)
    diag: List[int] = []

    top = 0
    while top < k:
        # find the entry of least nonzero magnitude to pivot on
        pivot = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = m[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for row in m:
            row[top], row[pj] = row[pj], row[top]

        while True:
            p = m[top][top]
            done = True
            for i in range(top + 1, rows):
                if m[i][top]:
                    q = m[i][top] // p
                    if q:
                        m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    if m[i][top]:
                        m[top], m[i] = m[i], m[top]
                        done = False
                        break
            if not done:
                continue
            for j in range(top + 1, cols):
                if m[top][j]:
                    q = m[top][j] // p
                    if q:
                        for row in m:
                            row[j] -= q * row[top]
                    if m[top][j]:
                        for row in m:
                            row[top], row[j] = row[j], row[top]
                        done = False
                        break
            if done:
                break
        diag.append(abs(m[top][top]))
        top += 1

    while len(diag) < k:
        diag.append(0)

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if a and b and b % a != 0:
                import math

                g = math.gcd(a, b)
                diag[i], diag[i + 1] = g, a // g * b
                changed = True
            elif a == 0 and b != 0:
                diag[i], diag[i + 1] = b, 0
                changed = True
    return tuple(diag)


def rank_z(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals (count of nonzero invariant factors)."""
    return sum(1 for d in snf(matrix) if d)
