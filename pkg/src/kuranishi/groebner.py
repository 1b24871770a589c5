"""Buchberger's algorithm and the ideal operations built on it.

Everything is exact.  Reduced Groebner bases are cached on :class:`Ideal`
objects per monomial order; the cache is a plain dict write, so two
threads racing on the first access just compute the same canonical basis
twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Poly, PolyError, PolyRing, RingMorphism

DEFAULT_MAX_DEGREE = 40
DEFAULT_MAX_SIZE = 10000


@dataclass
class Guard:
    max_degree: int = DEFAULT_MAX_DEGREE
    max_size: int = DEFAULT_MAX_SIZE


guard = Guard()


class GroebnerGuardError(RuntimeError):
    """A Buchberger run exceeded the configured degree or basis-size cap."""


# ---------------------------------------------------------------------------
# dict-level helpers; polynomials are {monomial: Fraction}


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _disjoint(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _lead(terms, key):
    return max(terms, key=key)


def _reduce(f, basis, key, full=True):
    """Remainder of ``f`` on division by ``basis`` (list of (lm, monic terms))."""
    f = dict(f)
    rem = {}
    while f:
        m = _lead(f, key)
        c = f[m]
        for lg, g in basis:
            if _divides(lg, m):
                q = tuple(x - y for x, y in zip(m, lg))
                for mg, cg in g.items():
                    mm = tuple(x + y for x, y in zip(q, mg))
                    v = f.get(mm, 0) - c * cg
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[m] = c
            del f[m]
    return rem


def _monic(terms, key):
    lm = _lead(terms, key)
    inv = 1 / terms[lm]
    return lm, {m: c * inv for m, c in terms.items()}


def _spoly(a, b):
    (la, fa), (lb, fb) = a, b
    l = _lcm(la, lb)
    qa = tuple(x - y for x, y in zip(l, la))
    qb = tuple(x - y for x, y in zip(l, lb))
    out = {}
    for m, c in fa.items():
        mm = tuple(x + y for x, y in zip(m, qa))
        out[mm] = out.get(mm, 0) + c
    for m, c in fb.items():
        mm = tuple(x + y for x, y in zip(m, qb))
        v = out.get(mm, 0) - c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return {m: c for m, c in out.items() if c}


def _buchberger(polys, ring: PolyRing, max_degree=None, max_size=None):
    """Reduced Groebner basis of the dict-polys ``polys`` under ``ring``'s order."""
    max_degree = guard.max_degree if max_degree is None else max_degree
    max_size = guard.max_size if max_size is None else max_size
    key = ring.key
    elems = []          # every basis element ever added: (lm, monic terms)
    current = []        # indices of elements still in the (non-reduced) basis
    pairs = set()

    def check(lm, terms):
        deg = max(sum(m) for m in terms)
        if deg > max_degree:
            raise GroebnerGuardError(f"basis element of degree {deg} exceeds cap {max_degree}")
        if len(elems) >= max_size:
            raise GroebnerGuardError(f"basis size exceeds cap {max_size}")

    def update(h):
        nonlocal current, pairs
        lh = elems[h][0]
        c = list(current)
        d = []
        while c:
            g = c.pop(0)
            lg = elems[g][0]
            l_gh = _lcm(lg, lh)
            if _disjoint(lg, lh) or (
                all(not _divides(_lcm(elems[g2][0], lh), l_gh) for g2 in c)
                and all(not _divides(_lcm(elems[g2][0], lh), l_gh) for g2 in d)
            ):
                d.append(g)
        e = [g for g in d if not _disjoint(elems[g][0], lh)]
        kept = set()
        for g1, g2 in pairs:
            l12 = _lcm(elems[g1][0], elems[g2][0])
            if (not _divides(lh, l12) or _lcm(elems[g1][0], lh) == l12
                    or _lcm(elems[g2][0], lh) == l12):
                kept.add((g1, g2))
        kept.update((g, h) for g in e)
        pairs = kept
        current = [g for g in current if not _divides(lh, elems[g][0])] + [h]

    # interreduce inputs a little to keep pair counts down
    for p in sorted((p for p in polys if p), key=lambda t: key(_lead(t, key))):
        r = _reduce(p, [elems[i] for i in current], key)
        if r:
            lm, terms = _monic(r, key)
            check(lm, terms)
            elems.append((lm, terms))
            update(len(elems) - 1)

    while pairs:
        def pair_key(p):
            l = _lcm(elems[p[0]][0], elems[p[1]][0])
            return (sum(l), key(l), p)
        best = min(pairs, key=pair_key)
        pairs.discard(best)
        s = _spoly(elems[best[0]], elems[best[1]])
        if not s:
            continue
        r = _reduce(s, [elems[i] for i in current], key)
        if r:
            lm, terms = _monic(r, key)
            check(lm, terms)
            elems.append((lm, terms))
            update(len(elems) - 1)

    basis = [elems[i] for i in current]
    # minimalize then interreduce
    minimal = []
    for i, (lm, t) in enumerate(basis):
        if any(j != i and _divides(basis[j][0], lm) and (basis[j][0] != lm or j < i)
               for j in range(len(basis))):
            continue
        minimal.append((lm, t))
    reduced = []
    for i, (lm, t) in enumerate(minimal):
        others = [minimal[j] for j in range(len(minimal)) if j != i]
        tail = {m: c for m, c in t.items() if m != lm}
        r = _reduce(tail, others, key)
        r[lm] = Fraction(1)
        reduced.append((lm, r))
    reduced.sort(key=lambda e: key(e[0]), reverse=True)
    return [t for _, t in reduced]


# ---------------------------------------------------------------------------


class GroebnerBasis:
    """A reduced Groebner basis: monic polynomials sorted by decreasing leading monomial."""

    __slots__ = ("ring", "polys", "_lms")

    def __init__(self, ring: PolyRing, polys: Sequence[Poly]):
        self.ring = ring
        self.polys = tuple(polys)
        self._lms = [(p.lm, p.terms) for p in self.polys]

    @property
    def order(self):
        return self.ring.order

    @property
    def leading_monomials(self):
        return [lm for lm, _ in self._lms]

    def is_unit(self):
        return any(sum(lm) == 0 for lm, _ in self._lms)

    def normal_form(self, p: Poly) -> Poly:
        if p.ring.variables != self.ring.variables:
            raise PolyError("ring mismatch in normal form")
        return Poly(self.ring, _reduce(p.terms, self._lms, self.ring.key))

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.polys == other.polys

    def __repr__(self):
        return "GroebnerBasis([" + ", ".join(str(p) for p in self.polys) + "])"


def buchberger(ideal: "Ideal", order=None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` (optionally under another order)."""
    return ideal.groebner(order)


def normal_form(p: Poly, G: GroebnerBasis) -> Poly:
    return G.normal_form(p)


class Ideal:
    """A finitely generated ideal of a polynomial ring."""

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring: PolyRing, generators: Sequence[Poly | int | str] = ()):
        gens = tuple(ring(g) for g in generators)
        if not gens:
            gens = (ring.zero,)
        self.ring = ring
        self.generators = gens
        self._gb = {}

    def groebner(self, order=None) -> GroebnerBasis:
        ring = self.ring if order is None else self.ring.with_order(*_order_args(order))
        cache_key = (ring.order, ring.split)
        gb = self._gb.get(cache_key)
        if gb is None:
            polys = _buchberger([g.terms for g in self.generators], ring)
            gb = GroebnerBasis(ring, [Poly(ring, t) for t in polys])
            self._gb[cache_key] = gb
        return gb

    def contains(self, p: Poly) -> bool:
        if p.ring != self.ring:
            raise PolyError(f"ring mismatch: {p.ring} vs {self.ring}")
        if p.is_zero():
            return True
        gb = self._gb.get((self.ring.order, self.ring.split))
        if gb is None:
            # a zero remainder against the raw generators already certifies membership
            raw = [(g.lm, g.monic().terms) for g in self.generators if g]
            if raw and not _reduce(p.terms, raw, self.ring.key):
                return True
            gb = self.groebner()
        return gb.normal_form(p).is_zero()

    __contains__ = contains

    def normal_form(self, p: Poly) -> Poly:
        return self.groebner().normal_form(p)

    def is_zero(self):
        return all(g.is_zero() for g in self.generators)

    def is_unit(self):
        return self.groebner().is_unit()

    def nonzero_generators(self):
        return tuple(g for g in self.generators if g)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.generators == other.generators

    def __hash__(self):
        return hash((self.ring, self.generators))

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def _order_args(order):
    if isinstance(order, tuple):
        return order
    return (order,)


def ideal_member(p: Poly, I: Ideal) -> bool:
    return I.contains(p)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise PolyError("ring mismatch")
    return I.groebner().polys == J.groebner().polys


def ideal_contained(I: Ideal, J: Ideal) -> bool:
    """True iff every generator of ``I`` lies in ``J``."""
    return all(J.contains(g) for g in I.generators)


def _embed(p: Poly, ring: PolyRing, offset: int):
    pad_front = (0,) * offset
    pad_back = (0,) * (ring.nvars - offset - p.ring.nvars)
    return Poly(ring, {pad_front + m + pad_back: c for m, c in p.terms.items()})


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return Ideal(I.ring, I.nonzero_generators() + J.nonzero_generators())


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    gens = []
    seen = set()
    for g in I.nonzero_generators():
        for h in J.nonzero_generators():
            p = g * h
            if p not in seen:
                seen.add(p)
                gens.append(p)
    return Ideal(I.ring, gens)


def ideal_power(I: Ideal, n: int) -> Ideal:
    result = Ideal(I.ring, [I.ring.one])
    for _ in range(n):
        result = ideal_product(result, I)
    return result


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """Intersection through ``t*I + (1-t)*J`` with ``t`` eliminated."""
    _same(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [])
    R = I.ring
    big = PolyRing(("_t",) + R.variables, "block", 1)
    t = big.var("_t")
    gens = [t * _embed(g, big, 1) for g in I.nonzero_generators()]
    gens += [(1 - t) * _embed(h, big, 1) for h in J.nonzero_generators()]
    return _project(Ideal(big, gens), 1, R)


def ideal_combine(kind, I: Ideal, J: Ideal) -> Ideal:
    if kind == "sum":
        return ideal_sum(I, J)
    if kind == "product":
        return ideal_product(I, J)
    if kind == "intersection":
        return ideal_intersection(I, J)
    raise PolyError(f"unknown ideal combination {kind!r}")


def _same(I, J):
    if I.ring != J.ring:
        raise PolyError(f"ring mismatch: {I.ring} vs {J.ring}")


def _project(big_ideal: Ideal, k: int, ring: PolyRing) -> Ideal:
    """Elements of the Groebner basis free of the first ``k`` variables, moved to ``ring``."""
    gens = []
    for g in big_ideal.groebner().polys:
        if all(not any(m[:k]) for m in g.terms):
            gens.append(Poly(ring, {m[k:]: c for m, c in g.terms.items()}))
    return Ideal(ring, gens)


def eliminate(I: Ideal, names: Sequence[str]) -> Ideal:
    """``I`` intersected with the subring on the variables not in ``names``."""
    R = I.ring
    names = list(names)
    for n in names:
        R.index(n)
    keep = [v for v in R.variables if v not in names]
    big = PolyRing(tuple(names) + tuple(keep), "block", len(names))
    perm = [R.index(v) for v in big.variables]
    gens = [Poly(big, {tuple(m[i] for i in perm): c for m, c in g.terms.items()})
            for g in I.nonzero_generators()]
    sub = PolyRing(tuple(keep), R.order if R.order != "block" else "grevlex")
    return _project(Ideal(big, gens), len(names), sub)


def morphism_kernel(m: RingMorphism) -> Ideal:
    """Kernel of a ring map via the graph ideal and block elimination."""
    S, T = m.source, m.target
    if S.nvars == 0:
        return Ideal(S, [])
    tnames = tuple(f"_T{i}" for i in range(T.nvars))
    big = PolyRing(tnames + S.variables, "block", T.nvars)
    gens = []
    for i, im in enumerate(m.images):
        src = _embed(S.gens[i], big, T.nvars)
        gens.append(src - _embed(im, big, 0))
    return _project(Ideal(big, gens), T.nvars, S)
