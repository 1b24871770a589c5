"""Simplicial polynomial rings truncated at a level cap.

The main construction is :func:`kuranishi_model`, the two-sided bar
construction for the zero locus of a section ``f = (f_1, ..., f_m)`` of the
trivial bundle ``Q^n x Q^m -> Q^n``.  Level ``k`` is the polynomial ring on
the base coordinates and ``k`` blocks of fibre coordinates; the faces are

* ``d_0``: block 1 goes to zero, later blocks move down one place,
* ``d_i`` (``0 < i < k``): blocks ``i`` and ``i+1`` are merged,
* ``d_k``: block ``k`` is replaced by ``f``,

and ``s_i`` moves the blocks after ``i`` up one place, leaving block ``i+1``
unused.  At level 1 this is ``d_0(u_j) = 0`` and ``d_1(u_j) = f_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import solve_affine
from .macaulay import monomials_up_to
from .poly import Poly, PolyError, PolyRing, RingMorphism, compose_morphisms, valid_name
from .ssets import FiniteSimplicialSet, MonotoneMap, standard_simplex

DEFAULT_CAP = 3


class ModelError(ValueError):
    """Malformed section data or simplicial ring."""


class CapError(ValueError):
    """A level beyond the cap was requested."""


class MorphismError(ValueError):
    """Generator images violate a face or degeneracy compatibility."""


@dataclass(frozen=True)
class SectionData:
    """A polynomial section ``(f_1, ..., f_m)`` over ``Q[x_1, ..., x_n]``."""

    base: tuple[str, ...]
    section: tuple[Poly, ...]
    fiber_prefix: str = "u"

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "section", tuple(self.section))
        for name in self.base:
            if not valid_name(name):
                raise ModelError(f"invalid variable name {name!r}")
        if len(set(self.base)) != len(self.base):
            raise ModelError("base variable names must be distinct")
        if not valid_name(self.fiber_prefix) or "_" in self.fiber_prefix:
            raise ModelError(f"invalid fibre prefix {self.fiber_prefix!r}")
        ring = self.base_ring
        for f in self.section:
            if not isinstance(f, Poly) or f.ring.variables != ring.variables:
                raise ModelError("section entries must be polynomials in the base variables")
        fibre = {self.fiber_name(j, b, k) for j in range(1, self.m + 1)
                 for k in (1, 2) for b in range(1, k + 1)}
        clash = fibre.intersection(self.base)
        if clash:
            raise ModelError(f"base names clash with fibre names: {sorted(clash)}")
        # u<j>_<b> names at higher levels must not collide either
        for name in self.base:
            if name.startswith(self.fiber_prefix) and name[len(self.fiber_prefix):].replace("_", "").isdigit():
                raise ModelError(f"base name {name!r} is reserved for fibre coordinates")

    @classmethod
    def from_strings(cls, base: Sequence[str], section: Sequence[str], fiber_prefix="u"):
        try:
            ring = PolyRing(tuple(base))
            polys = tuple(ring.parse(s) if isinstance(s, str) else ring(s) for s in section)
        except PolyError as exc:
            raise ModelError(str(exc)) from exc
        return cls(tuple(base), polys, fiber_prefix)

    @property
    def n(self):
        return len(self.base)

    @property
    def m(self):
        return len(self.section)

    @property
    def base_ring(self):
        return PolyRing(self.base)

    def fiber_name(self, j, b, k):
        if k == 1:
            return f"{self.fiber_prefix}{j}"
        return f"{self.fiber_prefix}{j}_{b}"

    def __str__(self):
        return f"K({self.n},{self.m},({', '.join(str(f) for f in self.section)}))"


@dataclass(eq=False)
class SimplicialRing:
    """Levels ``R_0 .. R_cap`` with faces ``faces[k][i]: R_k -> R_{k-1}`` and
    degeneracies ``degeneracies[k][i]: R_k -> R_{k+1}``."""

    rings: tuple
    faces: tuple
    degeneracies: tuple
    section: SectionData | None = None
    label: str = "A"
    tensor_of: tuple | None = None
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def cap(self):
        return len(self.rings) - 1

    def ring(self, k):
        self._check_level(k)
        return self.rings[k]

    def _check_level(self, k):
        if not 0 <= k <= self.cap:
            raise CapError(f"level {k} outside 0..{self.cap} of {self.label}")

    def face(self, k, i) -> RingMorphism:
        self._check_level(k)
        if not 0 <= i <= k or k == 0:
            raise ModelError(f"no face d^{k}_{i}")
        return self.faces[k][i]

    def degeneracy(self, k, i) -> RingMorphism:
        self._check_level(k + 1)
        if not 0 <= i <= k:
            raise ModelError(f"no degeneracy s^{k}_{i}")
        return self.degeneracies[k][i]

    def operator(self, theta: MonotoneMap) -> RingMorphism:
        """The structure map ``theta^*: R_p -> R_k`` for monotone ``theta: [k] -> [p]``."""
        key = ("op", theta.values, theta.n)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        k, p = theta.m, theta.n
        self._check_level(k)
        self._check_level(p)
        surj, inj = theta.factor()
        inj_star = self._injection(inj)
        surj_star = self._surjection(surj)
        result = compose_morphisms(surj_star, inj_star)
        self.cache[key] = result
        return result

    def _injection(self, inj):
        p = inj.n
        if inj.values == tuple(range(p + 1)):
            return RingMorphism.identity(self.rings[p])
        image = set(inj.values)
        i = max(j for j in range(p + 1) if j not in image)
        rest = MonotoneMap(tuple(v if v < i else v - 1 for v in inj.values), p - 1)
        return compose_morphisms(self._injection(rest), self.face(p, i))

    def _surjection(self, surj):
        k = surj.m
        if k == surj.n:
            return RingMorphism.identity(self.rings[k])
        i = next(j for j in range(k) if surj.values[j] == surj.values[j + 1])
        rest = MonotoneMap(tuple(surj.values[j] if j <= i else surj.values[j + 1]
                                 for j in range(k)), surj.n)
        return compose_morphisms(self.degeneracy(k - 1, i), self._surjection(rest))

    def replace_face(self, k, i, morphism):
        """A copy with ``d^k_i`` replaced (used for negative controls)."""
        faces = [list(level) for level in self.faces]
        faces[k][i] = morphism
        return SimplicialRing(self.rings, tuple(tuple(f) for f in faces), self.degeneracies,
                              self.section, self.label + "'", self.tensor_of)

    def __repr__(self):
        return f"SimplicialRing({self.label}, cap={self.cap})"


# ---------------------------------------------------------------------------
# the bar construction


def kuranishi_model(data: SectionData, cap: int = DEFAULT_CAP, order="grevlex") -> SimplicialRing:
    """The standard Kuranishi model of ``data`` up to level ``cap``."""
    if cap < 2:
        raise ModelError("cap must be at least 2")
    if not isinstance(data, SectionData):
        raise ModelError("expected SectionData")
    n, m = data.n, data.m

    def names(k):
        return data.base + tuple(data.fiber_name(j, b, k)
                                 for b in range(1, k + 1) for j in range(1, m + 1))

    rings = tuple(PolyRing(names(k), order) for k in range(cap + 1))

    def fib(k, j, b):
        return rings[k].var(data.fiber_name(j, b, k))

    def face(k, i):
        R, S = rings[k], rings[k - 1]
        images = list(S.gens[:n])
        sect = [RingMorphism(data.base_ring, S, S.gens[:n])(f) for f in data.section] if i == k else None
        for b in range(1, k + 1):
            for j in range(1, m + 1):
                if i == 0:
                    images.append(S.zero if b == 1 else fib(k - 1, j, b - 1))
                elif i == k:
                    images.append(sect[j - 1] if b == k else fib(k - 1, j, b))
                elif b <= i:
                    images.append(fib(k - 1, j, b))
                else:
                    images.append(fib(k - 1, j, b - 1))
        return RingMorphism(R, S, images)

    def degeneracy(k, i):
        R, S = rings[k], rings[k + 1]
        images = list(S.gens[:n])
        for b in range(1, k + 1):
            for j in range(1, m + 1):
                images.append(fib(k + 1, j, b if b <= i else b + 1))
        return RingMorphism(R, S, images)

    faces = ((),) + tuple(tuple(face(k, i) for i in range(k + 1)) for k in range(1, cap + 1))
    degens = tuple(tuple(degeneracy(k, i) for i in range(k + 1)) for k in range(cap))
    return SimplicialRing(rings, faces, degens, data, label=str(data))


@dataclass
class IdentityReport:
    checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures


def verify_simplicial_identities(A: SimplicialRing) -> IdentityReport:
    """Check every simplicial identity up to the cap as equality of composites on generators."""
    L = A.cap
    failures = []
    checked = 0

    def same(lhs, rhs, label):
        nonlocal checked
        checked += 1
        if lhs.images != rhs.images:
            failures.append(label)

    c = compose_morphisms
    for k in range(2, L + 1):
        for j in range(1, k + 1):
            for i in range(j):
                same(c(A.face(k - 1, i), A.face(k, j)), c(A.face(k - 1, j - 1), A.face(k, i)),
                     f"d{i} d{j} = d{j - 1} d{i} on level {k}")
    for k in range(L - 1):
        for j in range(k + 1):
            for i in range(j + 1):
                same(c(A.degeneracy(k + 1, i), A.degeneracy(k, j)),
                     c(A.degeneracy(k + 1, j + 1), A.degeneracy(k, i)),
                     f"s{i} s{j} = s{j + 1} s{i} on level {k}")
    for k in range(L):
        for j in range(k + 1):
            s = A.degeneracy(k, j)
            for i in range(k + 2):
                lhs = c(A.face(k + 1, i), s)
                if i < j:
                    rhs = c(A.degeneracy(k - 1, j - 1), A.face(k, i))
                    label = f"d{i} s{j} = s{j - 1} d{i} on level {k}"
                elif i in (j, j + 1):
                    rhs = RingMorphism.identity(A.rings[k])
                    label = f"d{i} s{j} = id on level {k}"
                else:
                    rhs = c(A.degeneracy(k - 1, j), A.face(k, i - 1))
                    label = f"d{i} s{j} = s{j} d{i - 1} on level {k}"
                same(lhs, rhs, label)
    return IdentityReport(checked, failures)


# ---------------------------------------------------------------------------
# tensoring with finite simplicial sets


def _block_names(A, k, blocks):
    return tuple(f"{v}__{q}" for q in range(blocks) for v in A.rings[k].variables)


def _block_inclusion(A, T, k, q):
    nA = A.rings[k].nvars
    return RingMorphism(A.rings[k], T.rings[k] if isinstance(T, SimplicialRing) else T[k],
                        (T.rings[k] if isinstance(T, SimplicialRing) else T[k]).gens[q * nA:(q + 1) * nA])


def tensor_simplicial(A: SimplicialRing, K: FiniteSimplicialSet) -> SimplicialRing:
    """``A (x) K``: level ``n`` is the coproduct of one copy of ``A_n`` per ``n``-simplex of ``K``."""
    L = A.cap
    levels = [K.level_simplices(k) for k in range(L + 1)]
    pos = [{s: q for q, s in enumerate(lv)} for lv in levels]
    rings = tuple(PolyRing(_block_names(A, k, len(levels[k])), A.rings[k].order)
                  for k in range(L + 1))
    incl = {}

    def inclusion(k, q):
        key = (k, q)
        if key not in incl:
            nA = A.rings[k].nvars
            incl[key] = RingMorphism(A.rings[k], rings[k], rings[k].gens[q * nA:(q + 1) * nA])
        return incl[key]

    def routed(k, i, new_level, simplex_map, ring_map):
        images = []
        for q, s in enumerate(levels[k]):
            target = pos[new_level][simplex_map(s, i)]
            emb = inclusion(new_level, target)
            images.extend(emb(im) for im in ring_map(k, i).images)
        return RingMorphism(rings[k], rings[new_level], images)

    faces = ((),) + tuple(tuple(routed(k, i, k - 1, K.face, A.face) for i in range(k + 1))
                          for k in range(1, L + 1))
    degens = tuple(tuple(routed(k, i, k + 1, K.degeneracy, A.degeneracy) for i in range(k + 1))
                   for k in range(L))
    return SimplicialRing(rings, faces, degens, None, label=f"{A.label} (x) {K.label}",
                          tensor_of=(A, K))


def block_count(A: SimplicialRing, k: int) -> int:
    """Number of simplex blocks at level ``k`` of a tensored ring (1 otherwise)."""
    if A.tensor_of is None:
        return 1
    return len(A.tensor_of[1].level_simplices(k))


# ---------------------------------------------------------------------------
# morphisms


@dataclass(eq=False)
class SRMorphism:
    source: SimplicialRing
    target: SimplicialRing
    maps: tuple

    def __post_init__(self):
        self.maps = tuple(self.maps)
        if self.source.cap != self.target.cap:
            raise CapError("source and target caps differ")
        if len(self.maps) != self.source.cap + 1:
            raise ModelError("need one ring map per level")
        for k, f in enumerate(self.maps):
            if f.source != self.source.rings[k] or f.target != self.target.rings[k]:
                raise ModelError(f"level {k} map has the wrong rings")

    def level(self, k):
        return self.maps[k]

    def __eq__(self, other):
        if not isinstance(other, SRMorphism):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and all(a.images == b.images for a, b in zip(self.maps, other.maps)))

    __hash__ = object.__hash__

    def __repr__(self):
        return f"SRMorphism({self.source.label} -> {self.target.label})"


def identity_morphism(A: SimplicialRing) -> SRMorphism:
    return SRMorphism(A, A, [RingMorphism.identity(R) for R in A.rings])


def compose_sr(g: SRMorphism, f: SRMorphism) -> SRMorphism:
    """``g o f``."""
    if f.target is not g.source:
        raise ModelError("morphisms are not composable")
    return SRMorphism(f.source, g.target,
                      [compose_morphisms(gk, fk) for gk, fk in zip(g.maps, f.maps)])


def morphism_failures(phi: SRMorphism, up_to=None) -> list[str]:
    """Structure maps that ``phi`` fails to commute with, up to level ``up_to``."""
    A, B = phi.source, phi.target
    L = A.cap if up_to is None else min(up_to, A.cap)
    out = []
    for k in range(1, L + 1):
        for i in range(k + 1):
            lhs = compose_morphisms(phi.maps[k - 1], A.face(k, i))
            rhs = compose_morphisms(B.face(k, i), phi.maps[k])
            if lhs.images != rhs.images:
                out.append(f"face d^{k}_{i}")
    for k in range(L):
        for i in range(k + 1):
            lhs = compose_morphisms(phi.maps[k + 1], A.degeneracy(k, i))
            rhs = compose_morphisms(B.degeneracy(k, i), phi.maps[k])
            if lhs.images != rhs.images:
                out.append(f"degeneracy s^{k}_{i}")
    return out


def verify_morphism(phi: SRMorphism) -> bool:
    return not morphism_failures(phi)


def build_morphism(source: SimplicialRing, target: SimplicialRing, x_images, y_images) -> SRMorphism:
    """Extend generator images from a bar model to every level.

    ``x_images`` live in ``target`` level 0 and ``y_images`` in level 1.  They
    must satisfy ``d_0(g_j) = 0`` and ``d_1(g_j) = f_j(x_images)``.
    """
    data = source.section
    if data is None:
        raise ModelError("source is not a bar model")
    if source.cap != target.cap:
        raise CapError("source and target caps differ")
    B0, B1 = target.rings[0], target.rings[1]
    x_images = [B0(p) for p in x_images]
    y_images = [B1(p) for p in y_images]
    if len(x_images) != data.n or len(y_images) != data.m:
        raise MorphismError(f"expected {data.n} base images and {data.m} fibre images")
    sub = RingMorphism(data.base_ring, B0, x_images)
    for j, g in enumerate(y_images, start=1):
        name = data.fiber_name(j, 1, 1)
        if not target.face(1, 0)(g).is_zero():
            raise MorphismError(f"d^1_0({name} image) = {target.face(1, 0)(g)} is not zero")
        want = sub(data.section[j - 1])
        got = target.face(1, 1)(g)
        if got != want:
            raise MorphismError(f"d^1_1({name} image) = {got}, expected f_{j}(x) = {want}")
    maps = []
    for k in range(source.cap + 1):
        to_k = target.operator(MonotoneMap((0,) * (k + 1), 0))
        images = [to_k(p) for p in x_images]
        for b in range(1, k + 1):
            theta = target.operator(MonotoneMap((0,) * b + (1,) * (k + 1 - b), 1))
            images.extend(theta(g) for g in y_images)
        maps.append(RingMorphism(source.rings[k], target.rings[k], images))
    phi = SRMorphism(source, target, maps)
    bad = morphism_failures(phi)
    if bad:
        raise MorphismError(f"extended morphism fails to commute with {', '.join(bad)}")
    return phi


# ---------------------------------------------------------------------------
# path object and homotopies


def path_object(A: SimplicialRing):
    """``(P, i0, i1, collapse)`` with ``P = A (x) Delta[1]``."""
    hit = A.cache.get("path")
    if hit is not None:
        return hit
    D1 = standard_simplex(1)
    P = tensor_simplicial(A, D1)
    i0, i1, collapse = [], [], []
    for k in range(A.cap + 1):
        nA = A.rings[k].nvars
        blocks = k + 2
        gens = P.rings[k].gens
        i0.append(RingMorphism(A.rings[k], P.rings[k], gens[:nA]))
        i1.append(RingMorphism(A.rings[k], P.rings[k], gens[(blocks - 1) * nA:blocks * nA]))
        collapse.append(RingMorphism(P.rings[k], A.rings[k], A.rings[k].gens * blocks))
    result = (P, SRMorphism(A, P, i0), SRMorphism(A, P, i1), SRMorphism(P, A, collapse))
    A.cache["path"] = result
    return result


@dataclass(eq=False)
class Homotopy:
    """A map ``H: A (x) Delta[1] -> B`` with ends ``phi = H o i0`` and ``psi = H o i1``."""

    source: SimplicialRing
    target: SimplicialRing
    map: SRMorphism
    phi: SRMorphism
    psi: SRMorphism


def homotopy_failures(H: Homotopy) -> list[str]:
    if H.source.cap != H.target.cap or H.map.source.cap != H.source.cap:
        raise CapError("homotopy caps are incompatible")
    P, i0, i1, _ = path_object(H.source)
    if H.map.source is not P or H.map.target is not H.target:
        return ["underlying map does not start at the path object"]
    out = morphism_failures(H.map)
    if compose_sr(H.map, i0) != H.phi:
        out.append("H o i0 != phi")
    if compose_sr(H.map, i1) != H.psi:
        out.append("H o i1 != psi")
    return out


def verify_homotopy(H: Homotopy) -> bool:
    return not homotopy_failures(H)


def constant_homotopy(phi: SRMorphism) -> Homotopy:
    _, _, _, collapse = path_object(phi.source)
    return Homotopy(phi.source, phi.target, compose_sr(phi, collapse), phi, phi)


# -- solving for homotopies --------------------------------------------------
# Images are "linear polynomials": {monomial: {unknown index or None: coeff}}.


class NonlinearConstraint(ValueError):
    pass


def _lp_const(p: Poly):
    return {m: {None: c} for m, c in p.terms.items()}


def _lp_add(acc, lp, scale=Fraction(1)):
    for m, coeffs in lp.items():
        slot = acc.setdefault(m, {})
        for key, c in coeffs.items():
            v = slot.get(key, 0) + scale * c
            if v:
                slot[key] = v
            else:
                slot.pop(key, None)
        if not slot:
            del acc[m]
    return acc


def _lp_is_known(lp):
    return all(set(c) <= {None} for c in lp.values())


def _lp_to_poly(lp, ring):
    return Poly(ring, {m: c.get(None, 0) for m, c in lp.items()})


def _lp_mul_poly(lp, p: Poly):
    out = {}
    for m, coeffs in lp.items():
        for m2, c2 in p.terms.items():
            mm = tuple(a + b for a, b in zip(m, m2))
            _lp_add(out, {mm: coeffs}, c2)
    return out


def _lp_apply(f: RingMorphism, lp, cache):
    out = {}
    for m, coeffs in lp.items():
        key = (id(f), m)
        q = cache.get(key)
        if q is None:
            q = f(f.source.monomial(m))
            cache[key] = q
        for m2, c2 in q.terms.items():
            _lp_add(out, {m2: coeffs}, c2)
    return out


def _lp_substitute(p: Poly, images, ring, known):
    """``p`` with its variables replaced by linear polynomials ``images``."""
    out = {}
    for m, c in p.terms.items():
        fixed = ring.const(c)
        unknown = None
        for i, e in enumerate(m):
            if not e:
                continue
            if known[i]:
                fixed = fixed * known[i] ** e
            elif e == 1 and unknown is None:
                unknown = images[i]
            else:
                raise NonlinearConstraint("constraint is not linear in the unknown images")
        if unknown is None:
            _lp_add(out, _lp_const(fixed))
        else:
            _lp_add(out, _lp_mul_poly(unknown, fixed))
    return out


@dataclass
class HomotopyFamily:
    """Affine family ``particular + sum t_i basis_i`` of homotopies starting at ``phi``."""

    phi: SRMorphism
    images: list       # images[k][a] is a linear polynomial in the unknowns
    particular: list
    basis: list

    @property
    def dimension(self):
        return len(self.basis)

    def instantiate(self, params=()) -> Homotopy:
        params = list(params) + [0] * (len(self.basis) - len(params))
        values = list(self.particular)
        for t, vec in zip(params, self.basis):
            if t:
                values = [v + Fraction(t) * w for v, w in zip(values, vec)]
        A, B = self.phi.source, self.phi.target
        P, _, i1, _ = path_object(A)
        maps = []
        for k, level in enumerate(self.images):
            ims = []
            for lp in level:
                terms = {}
                for m, coeffs in lp.items():
                    c = sum((v * (values[key] if key is not None else 1) for key, v in coeffs.items()),
                            Fraction(0))
                    if c:
                        terms[m] = c
                ims.append(Poly(B.rings[k], terms))
            maps.append(RingMorphism(P.rings[k], B.rings[k], ims))
        H = SRMorphism(P, B, maps)
        return Homotopy(A, B, H, self.phi, compose_sr(H, i1))


def solve_homotopies(phi: SRMorphism, degree: int = 2, psi: SRMorphism | None = None,
                     end0: RingMorphism | None = None, pin_base: bool | None = None) -> HomotopyFamily:
    """All homotopies out of ``phi`` whose free images have degree at most ``degree``.

    The far end is pinned to ``psi`` when given.  When the source has fibre
    coordinates, a free level 0 would make the constraints coming from the
    section nonlinear, so by default (``pin_base``) the base coordinates stay
    constant along the homotopy and level 0 of the far end is ``end0``
    (default: ``phi`` at level 0).  Sources without fibres are left free.

    Images of generators of ``A (x) Delta[1]`` that are degeneracies of lower
    generators are forced by the lower images; the others get a generic
    polynomial ansatz.  Commutation with every face and degeneracy up to the
    cap, and the end conditions, form a linear system in the ansatz
    coefficients which is solved exactly.
    """
    A, B = phi.source, phi.target
    P, _, _, _ = path_object(A)
    L = A.cap
    if pin_base is None:
        pin_base = A.section is not None and A.section.m > 0
    if psi is None and end0 is None and pin_base:
        end0 = phi.maps[0]
    nbase = A.section.n if (pin_base and A.section is not None) else 0
    nunk = 0
    cache = {}
    images = []
    for k in range(L + 1):
        nA = A.rings[k].nvars
        blocks = k + 2
        level = []
        preimage = {}
        if k:
            for j in range(k):
                s = P.degeneracy(k - 1, j)
                for w, im in enumerate(s.images):
                    if len(im.terms) == 1:
                        (mono, c), = im.terms.items()
                        if c == 1 and sum(mono) == 1 and mono.index(1) not in preimage:
                            preimage[mono.index(1)] = (j, w)
        for a in range(P.rings[k].nvars):
            q, a0 = divmod(a, nA)
            if q == 0:
                level.append(_lp_const(phi.maps[k].images[a0]))
            elif psi is not None and q == blocks - 1:
                level.append(_lp_const(psi.maps[k].images[a0]))
            elif k == 0 and q == 1 and end0 is not None:
                level.append(_lp_const(end0.images[a0]))
            elif a0 < nbase:
                zeta = B.operator(MonotoneMap((0,) * (k + 1), 0))
                level.append(_lp_const(zeta(phi.maps[0].images[a0])))
            elif a in preimage:
                j, w = preimage[a]
                level.append(_lp_apply(B.degeneracy(k - 1, j), images[k - 1][w], cache))
            else:
                lp = {}
                for mono in monomials_up_to(B.rings[k].nvars, degree):
                    lp[mono] = {nunk: Fraction(1)}
                    nunk += 1
                level.append(lp)
        images.append(level)

    equations = []

    def equate(lhs, rhs):
        diff = _lp_add(dict((m, dict(c)) for m, c in lhs.items()), rhs, Fraction(-1))
        for coeffs in diff.values():
            if coeffs:
                equations.append(coeffs)

    def known_list(level_images, ring):
        return [(_lp_to_poly(lp, ring) if _lp_is_known(lp) else None) for lp in level_images]

    for k in range(1, L + 1):
        known = known_list(images[k - 1], B.rings[k - 1])
        for i in range(k + 1):
            f_src, f_tgt = P.face(k, i), B.face(k, i)
            for a, lp in enumerate(images[k]):
                lhs = _lp_apply(f_tgt, lp, cache)
                rhs = _lp_substitute(f_src.images[a], images[k - 1], B.rings[k - 1], known)
                equate(lhs, rhs)
    for k in range(L):
        known = known_list(images[k + 1], B.rings[k + 1])
        for j in range(k + 1):
            s_src, s_tgt = P.degeneracy(k, j), B.degeneracy(k, j)
            for a, lp in enumerate(images[k]):
                lhs = _lp_apply(s_tgt, lp, cache)
                rhs = _lp_substitute(s_src.images[a], images[k + 1], B.rings[k + 1], known)
                equate(lhs, rhs)
    particular, basis = solve_affine(equations, nunk)
    return HomotopyFamily(phi, images, particular, basis)


def is_constant_homotopy(H: Homotopy) -> bool:
    return H.map == constant_homotopy(H.phi).map
