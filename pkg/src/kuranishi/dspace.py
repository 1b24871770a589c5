"""The 2-category of affine d-space presentations.

Objects, 1-morphisms and 2-morphisms are the classes from
:mod:`kuranishi.truncation`.  Composition of 1-morphisms composes the
level maps; 2-morphisms compose vertically by adding images and
horizontally by

    (eta2 [] eta1)(z) = eta2(phi1(z)) + chi2(eta1(z))

for ``eta1: phi1 => chi1`` over ``X -> Y`` and ``eta2: phi2 => chi2`` over
``Y -> Z`` (algebraic direction).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .groebner import Ideal
from .poly import Poly, RingMorphism, compose_morphisms
from .truncation import DOneMorphism, DSpacePresentation, DTwoMorphism


class PreconditionError(ValueError):
    """The ends of a would-be 2-morphism are not scheme-theoretically equal."""


class EndpointError(ValueError):
    """Morphisms do not fit together."""


@dataclass
class AxiomReport:
    results: dict

    @property
    def failures(self):
        return [name for name, ok in self.results.items() if not ok]

    @property
    def ok(self):
        return all(self.results.values())


def verify_dspace(T: DSpacePresentation) -> AxiomReport:
    """Check the d-space axioms of a presentation.

    * ``square-zero``: products of two d-images lie in ``I``,
    * ``Gce``: ``d(e) . e'`` vanishes in ``E``,
    * ``d well-defined``: ``d`` maps the denominator into ``I``,
    * ``E subquotient``: the denominator lies in ``N_1``,
    * ``module``: ``I`` acts by zero on ``E``.
    """
    I, D, N = T.oprime_ideal, T.denominator, T.n1
    gens = T.e_generators
    dims = T.d_images
    res = {}
    res["square-zero"] = all(I.contains(a * b) for i, a in enumerate(dims) for b in dims[i:])
    res["Gce"] = all(D.contains(T.act(a, e)) for a in dims for e in gens)
    res["d well-defined"] = all(I.contains(T.d_map(g)) for g in D.nonzero_generators())
    res["E subquotient"] = all(N.contains(g) for g in D.nonzero_generators())
    res["module"] = all(D.contains(T.act(r, e)) for r in I.nonzero_generators() for e in gens)
    return AxiomReport(res)


# -- 1-morphisms --------------------------------------------------------------


def one_morphism_failures(phi: DOneMorphism) -> list[str]:
    S, T = phi.source, phi.target
    out = []
    if not all(T.oprime_ideal.contains(phi.level0(g)) for g in S.oprime_ideal.nonzero_generators()):
        out.append("O' map not well defined")
    if not all(T.in_e(phi.level1(n)) for n in S.e_generators):
        out.append("E map leaves N_1")
    if not all(T.denominator.contains(phi.level1(g)) for g in S.denominator.nonzero_generators()):
        out.append("E map not well defined")
    if not all(T.oprime_ideal.contains(T.d_map(phi.level1(n)) - phi.level0(S.d_map(n)))
               for n in S.e_generators):
        out.append("d does not commute")
    if not all(T.denominator.contains((phi.level1(S.s0(x)) - T.s0(phi.level0(x))) * phi.level1(n))
               for x in S.ring0.gens for n in S.e_generators):
        out.append("E map not semilinear")
    return out


def verify_1morphism(phi: DOneMorphism) -> bool:
    return not one_morphism_failures(phi)


def identity_1(T: DSpacePresentation) -> DOneMorphism:
    return DOneMorphism(T, T, RingMorphism.identity(T.ring0), RingMorphism.identity(T.ring1))


def compose_1(phi2: DOneMorphism, phi1: DOneMorphism) -> DOneMorphism:
    """``phi2 o phi1`` (apply ``phi1`` first)."""
    if phi1.target is not phi2.source:
        raise EndpointError("target of the first map is not the source of the second")
    out = DOneMorphism(phi1.source, phi2.target, compose_morphisms(phi2.level0, phi1.level0),
                       compose_morphisms(phi2.level1, phi1.level1))
    bad = one_morphism_failures(out)
    if bad:
        raise EndpointError(f"composite fails: {', '.join(bad)}")
    return out


def _same_ends(phi, psi):
    if phi.source is not psi.source or phi.target is not psi.target:
        raise EndpointError("1-morphisms have different endpoints")


def one_morphisms_equal(phi: DOneMorphism, psi: DOneMorphism) -> bool:
    """Equal maps on ``O'`` and on ``E``."""
    _same_ends(phi, psi)
    return phi.oprime_images() == psi.oprime_images() and phi.e_images() == psi.e_images()


def scheme_theoretically_equal(phi: DOneMorphism, psi: DOneMorphism) -> bool:
    """Equal induced maps on ``O = O'/dE``."""
    _same_ends(phi, psi)
    J = phi.target.d_ideal()
    return all(J.contains(b - a) for a, b in zip(phi.level0.images, psi.level0.images))


# -- 2-morphisms --------------------------------------------------------------


def two_morphism_failures(eta: DTwoMorphism) -> list[str]:
    phi, psi = eta.phi, eta.psi
    _same_ends(phi, psi)
    if not scheme_theoretically_equal(phi, psi):
        raise PreconditionError("ends are not scheme-theoretically equal")
    S, T = phi.source, phi.target
    out = []
    for name, img in zip(S.ring0.variables, eta.images):
        if not T.in_e(img):
            out.append(f"eta({name}) is not in E")
    if out:
        return out
    for g in S.oprime_ideal.nonzero_generators():
        if not T.denominator.contains(eta.apply(g)):
            out.append(f"eta does not kill the relation {g}")
    for name, img, a, b in zip(S.ring0.variables, eta.images, phi.level0.images, psi.level0.images):
        if not T.oprime_ideal.contains(T.d_map(img) - (b - a)):
            out.append(f"d eta({name}) != psi' - phi' on {name}")
    for n in S.e_generators:
        lhs = eta.apply(S.d_map(n))
        if not T.denominator.contains(lhs - (psi.level1(n) - phi.level1(n))):
            out.append(f"eta d != psi'' - phi'' on {n}")
    return out


def verify_2morphism(eta: DTwoMorphism) -> bool:
    return not two_morphism_failures(eta)


def zero_2morphism(phi: DOneMorphism) -> DTwoMorphism:
    return DTwoMorphism(phi, phi, [phi.target.ring1.zero] * phi.source.ring0.nvars)


def negate(eta: DTwoMorphism) -> DTwoMorphism:
    """``-eta: psi => phi``."""
    return DTwoMorphism(eta.psi, eta.phi, [-p for p in eta.images])


def two_morphisms_equal(eta: DTwoMorphism, theta: DTwoMorphism) -> bool:
    """Same images in the target ``E`` (the ends are compared as 1-morphisms)."""
    if not (one_morphisms_equal(eta.phi, theta.phi) and one_morphisms_equal(eta.psi, theta.psi)):
        return False
    D = eta.target.denominator
    return all(D.contains(a - b) for a, b in zip(eta.images, theta.images))


def is_zero_class(eta: DTwoMorphism) -> bool:
    D = eta.target.denominator
    return all(D.contains(p) for p in eta.images)


def vertical_compose(eta: DTwoMorphism, theta: DTwoMorphism) -> DTwoMorphism:
    """``theta o eta: phi => psi`` for ``eta: phi => chi`` and ``theta: chi => psi``."""
    _same_ends(eta.psi, theta.phi)
    if not one_morphisms_equal(eta.psi, theta.phi):
        raise EndpointError("vertical composition needs eta to end where theta starts")
    return DTwoMorphism(eta.phi, theta.psi, [a + b for a, b in zip(eta.images, theta.images)])


def horizontal_compose(eta1: DTwoMorphism, eta2: DTwoMorphism) -> DTwoMorphism:
    """``eta2 [] eta1: phi2 o phi1 => chi2 o chi1``."""
    if eta1.target is not eta2.source:
        raise EndpointError("middle objects differ")
    phi = compose_1(eta2.phi, eta1.phi)
    psi = compose_1(eta2.psi, eta1.psi)
    images = [eta2.apply(eta1.phi.level0(x)) + eta2.psi.level1(e)
              for x, e in zip(eta1.source.ring0.gens, eta1.images)]
    return DTwoMorphism(phi, psi, images)


def check_interchange(eta1, theta1, eta2, theta2) -> bool:
    """``(theta2 [] theta1) o (eta2 [] eta1) = (theta2 o eta2) [] (theta1 o eta1)``."""
    lhs = vertical_compose(horizontal_compose(eta1, eta2), horizontal_compose(theta1, theta2))
    rhs = horizontal_compose(vertical_compose(eta1, theta1), vertical_compose(eta2, theta2))
    return two_morphisms_equal(lhs, rhs)


# -- random instances ---------------------------------------------------------


def shift_by(phi: DOneMorphism, images) -> tuple[DOneMorphism, DTwoMorphism] | None:
    """The end ``chi`` with ``d eta = chi' - phi'`` for the derivation with ``images``.

    ``chi`` on level 0 is ``phi + d eta``; on level 1 the base variables
    follow through ``s_0`` and each remaining variable ``v`` gets
    ``phi(v) + eta(d v)``.  Returns ``None`` if the result is not a valid
    2-morphism.
    """
    S, T = phi.source, phi.target
    images = [T.ring1(p) for p in images]
    trial = DTwoMorphism(phi, phi, images)
    level0 = [T.reduce0(a + T.d_map(e)) for a, e in zip(phi.level0.images, images)]
    level0 = RingMorphism(S.ring0, T.ring0, level0)
    base = {S.s0(x): i for i, x in enumerate(S.ring0.gens)}
    level1 = []
    for v, a in zip(S.ring1.gens, phi.level1.images):
        if v in base:
            level1.append(T.s0(level0.images[base[v]]))
        else:
            level1.append(a + trial.apply(S.d_map(v)))
    chi = DOneMorphism(S, T, level0, RingMorphism(S.ring1, T.ring1, level1))
    if one_morphism_failures(chi):
        return None
    eta = DTwoMorphism(phi, chi, images)
    try:
        if two_morphism_failures(eta):
            return None
    except PreconditionError:
        return None
    return chi, eta


def random_derivation_images(rng: random.Random, T: DSpacePresentation, count: int,
                             degree: int = 2):
    """``count`` random elements ``c * monomial * n`` of ``E`` with ``n`` an ``E`` generator."""
    gens = T.e_generators
    out = []
    for _ in range(count):
        if not gens or rng.random() < 0.2:
            out.append(T.ring1.zero)
            continue
        c = rng.choice([-2, -1, 1, 2])
        mono = [0] * T.ring0.nvars
        for _ in range(rng.randint(0, degree)):
            if mono:
                mono[rng.randrange(len(mono))] += 1
        out.append(T.s0(T.ring0.monomial(tuple(mono), c)) * rng.choice(gens))
    return out


def random_two_morphism(rng: random.Random, phi: DOneMorphism, tries: int = 20):
    """A random valid ``eta: phi => chi`` (returns ``(chi, eta)``) or ``None``."""
    for _ in range(tries):
        images = random_derivation_images(rng, phi.target, phi.source.ring0.nvars)
        hit = shift_by(phi, images)
        if hit is not None:
            return hit
    return None
