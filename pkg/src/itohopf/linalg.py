"""Exact rational linear algebra (internal).

Plain Gaussian elimination over ``fractions.Fraction``: every step is exact,
there is no tolerance anywhere.  Systems in this package are tiny (at most a
few dozen rows), so no effort is spent on pivot growth.
"""

from __future__ import annotations

from fractions import Fraction


def solve_affine(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> tuple[list[Fraction] | None, list[list[Fraction]]]:
    """Solve ``A x = b`` exactly.

    Returns ``(particular, kernel)`` where ``particular`` is a solution with
    all free variables set to zero (or ``None`` if the system is
    inconsistent) and ``kernel`` is a basis of the homogeneous solution
    space.  The kernel is returned even when the system is inconsistent.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    a = [list(row) + [b] for row, b in zip(rows, rhs)]

    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
        if r == n_rows:
            break

    consistent = all(a[i][n_cols] == 0 for i in range(r, n_rows))
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]

    particular: list[Fraction] | None = None
    if consistent:
        particular = [Fraction(0)] * n_cols
        for i, c in pivots:
            particular[c] = a[i][n_cols]

    kernel: list[list[Fraction]] = []
    for fc in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[fc] = Fraction(1)
        for i, c in pivots:
            vec[c] = -a[i][fc]
        kernel.append(vec)

    return particular, kernel
