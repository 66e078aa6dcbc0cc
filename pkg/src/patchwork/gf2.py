"""GF(2) linear algebra on int bitsets."""

from __future__ import annotations


def rank(rows: list[int]) -> int:
    """Rank over GF(2) by Gaussian elimination with deterministic pivots."""
    work = [r for r in rows if r]
    rk = 0
    while work:
        pivot_row = min(work, key=lambda r: r & -r)
        pivot_bit = pivot_row & -pivot_row
        work = [r ^ pivot_row if r & pivot_bit else r for r in work]
        work = [r for r in work if r]
        rk += 1
    return rk


def nullspace(rows: list[int], n_cols: int) -> list[int]:
    """Basis of the solution space of the homogeneous row system.

    Row r encodes sum_j ((r >> j) & 1) * x_j = 0; solutions are returned as
    bitsets over the n_cols variables.
    """
    remaining = [r for r in rows if r]
    pivots: list[tuple[int, int]] = []  # (pivot column, reduced row)
    for col in range(n_cols):
        bit = 1 << col
        found = None
        for i, r in enumerate(remaining):
            if r & bit:
                found = remaining.pop(i)
                break
        if found is None:
            continue
        remaining = [r ^ found if r & bit else r for r in remaining]
        remaining = [r for r in remaining if r]
        pivots = [(c, pr ^ found if pr & bit else pr) for c, pr in pivots]
        pivots.append((col, found))
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for fc in range(n_cols):
        if fc in pivot_cols:
            continue
        vec = 1 << fc
        for c, pr in pivots:
            if pr & (1 << fc):
                vec |= 1 << c
        basis.append(vec)
    return basis
