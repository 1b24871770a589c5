"""The normalized (Moore) complex of a simplicial polynomial ring.

``N_k`` is the intersection of the kernels of ``d_0 .. d_{k-1}`` and the
differential is ``d_k`` (its sign is irrelevant for ideals).  Because every
face is split surjective through a degeneracy, the image ``d_{k+1}(N_{k+1})``
is an ideal, generated by the images of generators of ``N_{k+1}``: for
``a = d(s(a))`` we get ``a * d(n) = d(s(a) * n)``.  That makes every
homotopy group a subquotient of ideals ``Z_k / B_k`` of the level ring and
classes can be compared by ideal membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product

from .groebner import Ideal, ideal_contained, ideal_intersection, morphism_kernel
from .poly import Poly
from .srings import CapError, SimplicialRing, SRMorphism


class NotACycleError(ValueError):
    """A polynomial that should be a cycle is not killed by some face."""


class Obstruction(Enum):
    DISTINCT = "Distinct"
    INDISTINGUISHABLE = "Indistinguishable"

    def __str__(self):
        return self.value


def _cached(A: SimplicialRing, key, build):
    hit = A.cache.get(key)
    if hit is None:
        hit = build()
        A.cache[key] = hit
    return hit


def face_kernel(A: SimplicialRing, k: int, i: int) -> Ideal:
    return _cached(A, ("ker", k, i), lambda: morphism_kernel(A.face(k, i)))


def normalized_ideal(A: SimplicialRing, k: int) -> Ideal:
    """``N_k``: the common kernel of the faces ``d_0 .. d_{k-1}`` on level ``k``."""
    if not 1 <= k <= A.cap:
        raise CapError(f"N_{k} needs 1 <= k <= {A.cap}")

    def build():
        N = face_kernel(A, k, 0)
        for i in range(1, k):
            N = ideal_intersection(N, face_kernel(A, k, i))
        return Ideal(A.rings[k], N.groebner().polys)

    return _cached(A, ("N", k), build)


def boundary_ideal(A: SimplicialRing, k: int) -> Ideal:
    """``B_k = d_{k+1}(N_{k+1})`` as an ideal of level ``k``."""
    if not 0 <= k < A.cap:
        raise CapError(f"B_{k} needs level {k + 1} <= cap {A.cap}")

    def build():
        d = A.face(k + 1, k + 1)
        gens = [d(g) for g in normalized_ideal(A, k + 1).nonzero_generators()]
        return Ideal(A.rings[k], [g for g in gens if g])

    return _cached(A, ("B", k), build)


def cycle_ideal(A: SimplicialRing, k: int) -> Ideal:
    """``Z_k = N_k`` intersected with the kernel of ``d_k``; the whole ring at level 0."""
    if not 0 <= k <= A.cap:
        raise CapError(f"Z_{k} outside 0..{A.cap}")
    if k == 0:
        return Ideal(A.rings[0], [1])

    def build():
        Z = ideal_intersection(normalized_ideal(A, k), face_kernel(A, k, k))
        return Ideal(A.rings[k], Z.groebner().polys)

    return _cached(A, ("Z", k), build)


# -- counting standard monomials -------------------------------------------


def _minimal(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def _standard_monomials(gens, nvars):
    """Monomials outside the monomial ideal ``gens``; ``None`` if there are infinitely many."""
    gens = _minimal(gens)
    bounds = []
    for i in range(nvars):
        pure = [g[i] for g in gens if all(e == 0 for j, e in enumerate(g) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    return [m for m in product(*(range(b) for b in bounds))
            if not any(all(a <= b for a, b in zip(g, m)) for g in gens)]


def quotient_dimension(I: Ideal):
    """``dim_Q R/I``, or ``None`` when it is infinite."""
    R = I.ring
    gb = I.groebner()
    if gb.is_unit():
        return 0
    lms = gb.leading_monomials
    if R.nvars == 0:
        return 1
    std = _standard_monomials(lms, R.nvars)
    return None if std is None else len(std)


def subquotient_dimension(N: Ideal, D: Ideal):
    """``dim_Q N/D`` for ``D`` inside ``N``, or ``None`` when infinite.

    A basis of ``N/D`` is given by the monomials of ``LT(N)`` outside
    ``LT(D)``; those divisible by a leading monomial ``g`` of ``N`` are ``g*w``
    with ``w`` standard for the colon ideal ``LT(D) : g``.
    """
    R = N.ring
    lt_d = [] if D.is_zero() else D.groebner().leading_monomials
    out = set()
    for g in ([] if N.is_zero() else N.groebner().leading_monomials):
        colon = [tuple(max(a - b, 0) for a, b in zip(h, g)) for h in lt_d]
        if R.nvars == 0:
            std = [] if colon else [()]
        else:
            std = _standard_monomials(colon, R.nvars)
        if std is None:
            return None
        out.update(tuple(a + b for a, b in zip(g, w)) for w in std)
    return len(out)


# -- homotopy groups --------------------------------------------------------


@dataclass(eq=False)
class HomotopyGroup:
    """``pi_k`` presented as ``Z_k / B_k`` inside the level ring ``R_k``.

    For ``k = 0`` the cycles are the whole ring and ``pi_0 = R_0 / B_0``.
    """

    source: SimplicialRing
    level: int
    cycles: Ideal
    boundaries: Ideal

    @property
    def ring(self):
        return self.cycles.ring

    def dimension(self):
        if self.level == 0:
            return quotient_dimension(self.boundaries)
        return subquotient_dimension(self.cycles, self.boundaries)

    def is_trivial(self):
        return self.dimension() == 0

    def defining_ideal(self):
        """For ``pi_0``: the relations on the base ring, i.e. ``B_0``."""
        return self.boundaries

    def check_cycle(self, z: Poly):
        z = self.ring(z)
        if self.level == 0:
            return z
        for i in range(self.level + 1):
            if not self.source.face(self.level, i)(z).is_zero():
                raise NotACycleError(f"{z} is not a cycle: d^{self.level}_{i} does not vanish on it")
        return z

    def class_equal(self, z1, z2) -> bool:
        z1, z2 = self.check_cycle(z1), self.check_cycle(z2)
        return self.boundaries.contains(z1 - z2)

    def __repr__(self):
        return f"pi_{self.level}({self.source.label})"


def homotopy_group(A: SimplicialRing, k: int) -> HomotopyGroup:
    if not 0 <= k < A.cap:
        raise CapError(f"pi_{k} needs level {k + 1} <= cap {A.cap}")

    def build():
        Z, B = cycle_ideal(A, k), boundary_ideal(A, k)
        if not ideal_contained(B, Z):
            raise ArithmeticError(f"B_{k} is not contained in Z_{k}")
        return HomotopyGroup(A, k, Z, B)

    return _cached(A, ("pi", k), build)


def class_equal(HG: HomotopyGroup, z1, z2) -> bool:
    return HG.class_equal(z1, z2)


def _test_elements(A: SimplicialRing, k: int):
    if k == 0:
        return [A.rings[0].one] + list(A.rings[0].gens)
    return list(cycle_ideal(A, k).nonzero_generators())


def obstruction_witness(phi: SRMorphism, psi: SRMorphism, k: int):
    """A source cycle generator whose images have different classes, or ``None``."""
    if phi.source is not psi.source or phi.target is not psi.target:
        raise ValueError("morphisms must share source and target")
    A, B = phi.source, phi.target
    if not 0 <= k < min(A.cap, B.cap):
        raise CapError(f"pi_{k} outside the cap")
    HG = homotopy_group(B, k)
    for z in _test_elements(A, k):
        if not HG.class_equal(phi.maps[k](z), psi.maps[k](z)):
            return z
    return None


def pi_obstruction(phi: SRMorphism, psi: SRMorphism, k: int) -> Obstruction:
    """``DISTINCT`` certifies that ``phi`` and ``psi`` are not homotopic.

    ``INDISTINGUISHABLE`` only means the test on ``pi_k`` found no difference.
    """
    if obstruction_witness(phi, psi, k) is None:
        return Obstruction.INDISTINGUISHABLE
    return Obstruction.DISTINCT
