"""Ideal membership by brute-force linear algebra.

An independent cross-check for the Groebner code: ``p`` lies in
``(g_1, ..., g_r)`` with a representation of degree at most ``D`` exactly
when ``p`` is in the row space of the Macaulay matrix whose rows are all
products ``m * g_i`` with ``deg(m * g_i) <= D``.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .linalg import in_row_space, row_reduce
from .poly import Poly


def monomials_up_to(nvars, degree):
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            m = [0] * nvars
            for i in combo:
                m[i] += 1
            out.append(tuple(m))
    return out


def macaulay_member(p: Poly, generators, degree_bound: int) -> bool:
    """Whether ``p`` is a combination ``sum h_i g_i`` with every ``deg(h_i g_i) <= degree_bound``."""
    if p.is_zero():
        return True
    gens = [g for g in generators if g]
    if not gens:
        return False
    nvars = p.ring.nvars
    mons = monomials_up_to(nvars, degree_bound)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in gens:
        dg = g.total_degree()
        if dg > degree_bound:
            continue
        for m in monomials_up_to(nvars, degree_bound - dg):
            rows.append({index[tuple(a + b for a, b in zip(m, gm))]: c
                         for gm, c in g.terms.items()})
    if p.total_degree() > degree_bound:
        return False
    rref, pivots = row_reduce(rows)
    return in_row_space(rref, pivots, {index[m]: c for m, c in p.terms.items()})
