"""Sparse exact Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction


class InconsistentSystem(ValueError):
    pass


def row_reduce(rows):
    """Reduced row echelon form of sparse rows ``{column: Fraction}``.

    Returns ``(pivot_rows, pivots)`` where ``pivot_rows[i]`` has a leading 1 in
    column ``pivots[i]`` and every pivot column is zero in the other rows.
    Columns are eliminated in increasing order of their keys.
    """
    pivots = {}  # column -> row
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        for col, prow in pivots.items():
            v = row.get(col)
            if v:
                for c, pv in prow.items():
                    nv = row.get(c, 0) - v * pv
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        col = min(row)
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        for other in pivots.values():
            v = other.get(col)
            if v:
                for c, pv in row.items():
                    nv = other.get(c, 0) - v * pv
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        pivots[col] = row
    order = sorted(pivots)
    return [pivots[c] for c in order], order


def in_row_space(rows_rref, pivots, vec):
    """Whether ``vec`` is a combination of the reduced rows."""
    vec = {c: Fraction(v) for c, v in vec.items() if v}
    for col, row in zip(pivots, rows_rref):
        v = vec.get(col)
        if v:
            for c, pv in row.items():
                nv = vec.get(c, 0) - v * pv
                if nv:
                    vec[c] = nv
                else:
                    vec.pop(c, None)
    return not vec


def solve_affine(equations, nvars):
    """Solve ``sum_j a_j x_j + b = 0`` for each equation ``{j: a_j, None: b}``.

    Returns ``(particular, basis)``: one solution as a list of Fractions and a
    basis of the homogeneous solution space.  Raises
    :class:`InconsistentSystem` when there is no solution.
    """
    const = nvars  # constant column sorts after every unknown
    rows = []
    for eq in equations:
        row = {}
        for j, a in eq.items():
            row[const if j is None else j] = Fraction(a)
        rows.append(row)
    rref, pivots = row_reduce(rows)
    if const in pivots:
        raise InconsistentSystem("linear system has no solution")
    pivot_set = set(pivots)
    free = [j for j in range(nvars) if j not in pivot_set]
    particular = [Fraction(0)] * nvars
    for col, row in zip(pivots, rref):
        particular[col] = -row.get(const, Fraction(0))
    basis = []
    for f in free:
        vec = [Fraction(0)] * nvars
        vec[f] = Fraction(1)
        for col, row in zip(pivots, rref):
            vec[col] = -row.get(f, Fraction(0))
        basis.append(vec)
    return particular, basis
