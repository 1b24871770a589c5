"""Truncation of simplicial rings to affine d-space presentations.

A presentation keeps everything inside two polynomial rings: the level-0
ring ``R0`` and the level-1 ring ``R1`` of the simplicial ring it came from.

* ``O' = R0 / I`` with ``I = (d N_1)^2``,
* ``E = N_1 / D`` with ``D = B_1 + N_1^2``, an ideal subquotient of ``R1``,
* ``d: E -> O'`` is induced by the last face ``R1 -> R0``,
* ``R0`` acts on ``E`` through the degeneracy ``s_0: R0 -> R1``.

Morphisms go in the algebraic direction: a 1-morphism from ``T(X)`` to
``T(Y)`` is a pair of ring maps ``R0(X) -> R0(Y)`` and ``R1(X) -> R1(Y)``
inducing the maps on ``O'`` and ``E``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import Ideal, ideal_power
from .moore import (boundary_ideal, normalized_ideal, quotient_dimension,
                    subquotient_dimension)
from .poly import Poly, PolyRing, RingMorphism, compose_morphisms
from .srings import Homotopy, SimplicialRing, SRMorphism, homotopy_failures, path_object


class DSpaceAxiomError(ArithmeticError):
    """A truncation violated a d-space axiom."""


class LiftError(ValueError):
    """A 2-morphism does not lift the difference of its ends."""


@dataclass(eq=False)
class DSpacePresentation:
    ring0: PolyRing
    ring1: PolyRing
    oprime_ideal: Ideal
    n1: Ideal
    denominator: Ideal
    d_map: RingMorphism
    s0: RingMorphism
    label: str = "T"
    source: SimplicialRing | None = field(default=None, repr=False)

    @property
    def e_generators(self):
        return self.n1.nonzero_generators()

    @property
    def d_images(self):
        return tuple(self.d_map(n) for n in self.e_generators)

    def d_ideal(self) -> Ideal:
        """``dE + I`` inside ``R0``; ``O = O'/dE`` is ``R0`` modulo this."""
        hit = getattr(self, "_d_ideal", None)
        if hit is None:
            hit = Ideal(self.ring0, self.oprime_ideal.nonzero_generators() + self.d_images)
            self._d_ideal = hit
        return hit

    def reduce0(self, p: Poly) -> Poly:
        """Canonical representative of ``p`` in ``O'``."""
        return self.oprime_ideal.normal_form(self.ring0(p))

    def reduce1(self, p: Poly) -> Poly:
        """Canonical representative of ``p`` in ``E`` (``p`` must lie in ``N_1``)."""
        return self.denominator.normal_form(self.ring1(p))

    def in_e(self, p: Poly) -> bool:
        return self.n1.contains(self.ring1(p))

    def act(self, r: Poly, e: Poly) -> Poly:
        """The module action ``r . e`` of ``R0`` on ``E``."""
        return self.s0(r) * e

    def oprime_dimension(self):
        return quotient_dimension(self.oprime_ideal)

    def e_dimension(self):
        return subquotient_dimension(self.n1, self.denominator)

    def e_rank(self):
        return len(self.e_generators)

    def __repr__(self):
        return f"DSpacePresentation({self.label})"


def truncate_object(A: SimplicialRing) -> DSpacePresentation:
    """``T(A)``; the d-space axioms are checked and a failure raises."""
    hit = A.cache.get("truncation")
    if hit is not None:
        return hit
    if A.cap < 2:
        raise ValueError("truncation needs levels up to 2")
    R0, R1 = A.rings[0], A.rings[1]
    N1 = normalized_ideal(A, 1)
    B1 = boundary_ideal(A, 1)
    N1sq = ideal_power(N1, 2)
    D = Ideal(R1, B1.nonzero_generators() + N1sq.nonzero_generators())
    d = A.face(1, 1)
    dN = Ideal(R0, [d(n) for n in N1.nonzero_generators()])
    I2 = ideal_power(dN, 2)
    I = Ideal(R0, I2.groebner().polys)
    T = DSpacePresentation(R0, R1, I, N1, D, d, A.degeneracy(0, 0), f"T({A.label})", A)
    from .dspace import verify_dspace
    report = verify_dspace(T)
    if not report.ok:
        raise DSpaceAxiomError(f"truncation of {A.label} fails: {', '.join(report.failures)}")
    A.cache["truncation"] = T
    return T


@dataclass(eq=False)
class DOneMorphism:
    source: DSpacePresentation
    target: DSpacePresentation
    level0: RingMorphism
    level1: RingMorphism

    def __post_init__(self):
        if self.level0.source != self.source.ring0 or self.level0.target != self.target.ring0:
            raise ValueError("level-0 map has the wrong rings")
        if self.level1.source != self.source.ring1 or self.level1.target != self.target.ring1:
            raise ValueError("level-1 map has the wrong rings")

    def oprime_images(self):
        """Normal forms in the target ``O'`` of the images of the source generators."""
        return tuple(self.target.reduce0(p) for p in self.level0.images)

    def e_images(self):
        """Normal forms in the target ``E`` of the images of the source ``E`` generators."""
        return tuple(self.target.reduce1(self.level1(n)) for n in self.source.e_generators)

    def on_oprime(self, p: Poly) -> Poly:
        return self.target.reduce0(self.level0(p))

    def on_e(self, e: Poly) -> Poly:
        return self.target.reduce1(self.level1(e))

    def __repr__(self):
        return f"DOneMorphism({self.source.label} -> {self.target.label})"


def truncate_morphism(phi: SRMorphism) -> DOneMorphism:
    src, tgt = truncate_object(phi.source), truncate_object(phi.target)
    result = DOneMorphism(src, tgt, phi.maps[0], phi.maps[1])
    from .dspace import one_morphism_failures
    bad = one_morphism_failures(result)
    if bad:
        raise DSpaceAxiomError(f"truncated morphism fails: {', '.join(bad)}")
    return result


@dataclass(eq=False)
class DTwoMorphism:
    """A derivation ``eta: O'(source) -> E(target)`` with ``d eta = psi' - phi'``.

    It is stored by the images of the source level-0 variables and extended
    by the Leibniz rule over ``phi``.
    """

    phi: DOneMorphism
    psi: DOneMorphism
    images: tuple

    def __post_init__(self):
        R1 = self.phi.target.ring1
        self.images = tuple(R1(p) for p in self.images)
        if len(self.images) != self.phi.source.ring0.nvars:
            raise ValueError("need one image per source level-0 variable")

    @property
    def source(self):
        return self.phi.source

    @property
    def target(self):
        return self.phi.target

    def apply(self, p: Poly) -> Poly:
        """``eta(p) = sum_i dp/dx_i . eta(x_i)`` with the action twisted by ``phi``."""
        R0 = self.source.ring0
        p = R0(p)
        T = self.target
        out = T.ring1.zero
        for name, img in zip(R0.variables, self.images):
            if img:
                dp = p.diff(name)
                if dp:
                    out = out + T.act(self.phi.level0(dp), img)
        return out

    def reduced_images(self):
        return tuple(self.target.reduce1(p) for p in self.images)

    def __repr__(self):
        return "DTwoMorphism(" + ", ".join(str(p) for p in self.images) + ")"


def truncate_homotopy(H: Homotopy) -> DTwoMorphism:
    """The 2-morphism ``T(phi) => T(psi)`` induced by a simplicial homotopy.

    For a level-0 generator ``g``, the image under ``H`` of ``s_0(g)`` placed
    in the middle block ``(0, 1)`` of level 1 has faces ``phi(g)`` and
    ``psi(g)``; subtracting the degenerate ``s_0(phi(g))`` puts it in ``N_1``.
    """
    bad = homotopy_failures(H)
    if bad:
        raise LiftError(f"not a homotopy: {', '.join(bad)}")
    from .dspace import scheme_theoretically_equal, two_morphism_failures
    tphi, tpsi = truncate_morphism(H.phi), truncate_morphism(H.psi)
    if not scheme_theoretically_equal(tphi, tpsi):
        raise LiftError("homotopic ends are not scheme-theoretically equal")
    A, B = H.source, H.target
    P = path_object(A)[0]
    nA1 = A.rings[1].nvars
    middle = 1  # position of (0, 1) among the level-1 simplices of Delta[1]
    place = RingMorphism(A.rings[1], P.rings[1], P.rings[1].gens[middle * nA1:(middle + 1) * nA1])
    s0A, s0B, d0B = A.degeneracy(0, 0), B.degeneracy(0, 0), B.face(1, 0)
    images = []
    for g in A.rings[0].gens:
        nu = H.map.maps[1](place(s0A(g)))
        images.append(nu - s0B(d0B(nu)))
    eta = DTwoMorphism(tphi, tpsi, images)
    bad = two_morphism_failures(eta)
    if bad:
        raise LiftError(f"truncated homotopy fails: {', '.join(bad)}")
    return eta
