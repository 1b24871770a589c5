"""Finite simplicial sets with finitely many nondegenerate simplices.

Every simplex is kept in Eilenberg-Zilber form: a nondegenerate base simplex
of dimension ``p`` together with a monotone surjection ``[k] -> [p]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable


class SimplicialError(ValueError):
    pass


@dataclass(frozen=True)
class MonotoneMap:
    """Weakly increasing map ``[m] -> [n]`` given by its list of values."""

    values: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        v = self.values
        if not v:
            raise SimplicialError("empty monotone map")
        if any(a > b for a, b in zip(v, v[1:])):
            raise SimplicialError(f"{v} is not weakly increasing")
        if v[0] < 0 or v[-1] > self.n:
            raise SimplicialError(f"{v} does not land in [0, {self.n}]")

    @property
    def m(self):
        return len(self.values) - 1

    def __call__(self, i):
        return self.values[i]

    def after(self, f: "MonotoneMap") -> "MonotoneMap":
        """``self o f``."""
        if f.n != self.m:
            raise SimplicialError("maps are not composable")
        return MonotoneMap(tuple(self.values[i] for i in f.values), self.n)

    def is_surjective(self):
        return set(self.values) == set(range(self.n + 1))

    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    def factor(self):
        """``(surjection, injection)`` with ``self = injection o surjection``."""
        image = sorted(set(self.values))
        pos = {v: i for i, v in enumerate(image)}
        surj = MonotoneMap(tuple(pos[v] for v in self.values), len(image) - 1)
        inj = MonotoneMap(tuple(image), self.n)
        return surj, inj

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n + 1)), n)

    @classmethod
    def coface(cls, n, i):
        """``delta_i: [n-1] -> [n]`` skipping ``i``."""
        return cls(tuple(j for j in range(n + 1) if j != i), n)

    @classmethod
    def codegeneracy(cls, n, i):
        """``sigma_i: [n+1] -> [n]`` hitting ``i`` twice."""
        return cls(tuple(j if j <= i else j - 1 for j in range(n + 2)), n)


@dataclass(frozen=True, order=True)
class Simplex:
    """``base o surj`` where ``base`` is nondegenerate of dimension ``surj.n``."""

    base: Hashable
    surj: tuple[int, ...]

    @property
    def dim(self):
        return len(self.surj) - 1

    @property
    def base_dim(self):
        return self.surj[-1] if self.surj else 0

    def is_degenerate(self):
        return self.dim != self.base_dim

    def __repr__(self):
        if not self.is_degenerate():
            return f"<{self.base}>"
        return f"<{self.base} o {self.surj}>"


def nondegenerate(base, dim):
    return Simplex(base, tuple(range(dim + 1)))


@dataclass(eq=False)
class FiniteSimplicialSet:
    """Nondegenerate simplices by name, with faces given as (possibly degenerate) simplices.

    ``dims[name]`` is the dimension of a nondegenerate simplex and
    ``faces[name]`` lists ``d_0, ..., d_p`` of it for ``p >= 1``.
    """

    dims: dict
    faces: dict
    label: str = "K"
    _memo: dict = field(default_factory=dict, repr=False)
    _levels: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for name, p in self.dims.items():
            if p < 0:
                raise SimplicialError("negative dimension")
            if p == 0:
                continue
            fs = self.faces.get(name)
            if fs is None or len(fs) != p + 1:
                raise SimplicialError(f"simplex {name!r} needs {p + 1} faces")
            for face in fs:
                if face.base not in self.dims or face.dim != p - 1 or self.dims[face.base] != face.base_dim:
                    raise SimplicialError(f"bad face {face!r} of {name!r}")

    @property
    def dimension(self):
        return max(self.dims.values(), default=-1)

    @property
    def vertices(self):
        return [name for name, p in self.dims.items() if p == 0]

    def nondegenerate(self, p):
        return [name for name, q in self.dims.items() if q == p]

    def simplex(self, base):
        return nondegenerate(base, self.dims[base])

    # -- structure maps --------------------------------------------------

    def structure_map(self, f: MonotoneMap, s: Simplex) -> Simplex:
        """The simplex ``s o f`` in Eilenberg-Zilber form."""
        if f.n != s.dim:
            raise SimplicialError(f"map into [{f.n}] applied to a {s.dim}-simplex")
        key = (f.values, f.n, s)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        composite = MonotoneMap(s.surj, s.base_dim).after(f)
        surj, inj = composite.factor()
        inner = self._apply_injection(s.base, inj)
        result = Simplex(inner.base, MonotoneMap(inner.surj, inner.base_dim).after(surj).values)
        self._memo[key] = result
        return result

    def _apply_injection(self, base, inj: MonotoneMap) -> Simplex:
        p = self.dims[base]
        if inj.values == tuple(range(p + 1)):
            return nondegenerate(base, p)
        image = set(inj.values)
        i = max(j for j in range(p + 1) if j not in image)
        rest = MonotoneMap(tuple(v if v < i else v - 1 for v in inj.values), p - 1)
        return self.structure_map(rest, self.faces[base][i])

    def face(self, s: Simplex, i: int) -> Simplex:
        return self.structure_map(MonotoneMap.coface(s.dim, i), s)

    def degeneracy(self, s: Simplex, i: int) -> Simplex:
        return self.structure_map(MonotoneMap.codegeneracy(s.dim, i), s)

    def vertex_sequence(self, s: Simplex):
        vs = self.vertices
        pos = {v: i for i, v in enumerate(vs)}
        out = []
        for j in range(s.dim + 1):
            v = self.structure_map(MonotoneMap((j,), s.dim), s)
            out.append(pos[v.base])
        return tuple(out)

    def level_simplices(self, k: int) -> list[Simplex]:
        """All ``k``-simplices, ordered by decreasing vertex sequence.

        For the standard 1-simplex this is the order ``eta^0, ..., eta^{k+1}``
        where ``eta^i`` sends ``0..i-1`` to 0 and the rest to 1.
        """
        if k < 0:
            raise SimplicialError("negative level")
        cached = self._levels.get(k)
        if cached is not None:
            return list(cached)
        out = []
        for name, p in self.dims.items():
            if p > k:
                continue
            for jumps in combinations(range(1, k + 1), p):
                surj, v = [], 0
                for i in range(k + 1):
                    if v < p and i == jumps[v]:
                        v += 1
                    surj.append(v)
                out.append(Simplex(name, tuple(surj)))
        out.sort(key=lambda s: (tuple(-v for v in self.vertex_sequence(s)), repr(s.base), s.surj))
        self._levels[k] = tuple(out)
        return out

    # -- checks -----------------------------------------------------------

    def check_identities(self, max_dim=3):
        """Failures of ``d_i d_j = d_{j-1} d_i`` (``i < j``) on nondegenerate simplices."""
        failures = []
        for name, p in self.dims.items():
            if p < 2 or p > max_dim:
                continue
            s = self.simplex(name)
            for j in range(p + 1):
                for i in range(j):
                    lhs = self.face(self.face(s, j), i)
                    rhs = self.face(self.face(s, i), j - 1)
                    if lhs != rhs:
                        failures.append(f"d{i} d{j} != d{j - 1} d{i} on {name!r}")
        return failures

    def connected_components(self):
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for name in self.nondegenerate(1):
            a, b = (f.base for f in self.faces[name])
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())


def standard_simplex(n: int) -> FiniteSimplicialSet:
    """``Delta[n]``: nondegenerate simplices are the strictly increasing vertex tuples."""
    if n < 0:
        raise SimplicialError("n must be nonnegative")
    dims, faces = {}, {}
    for p in range(n + 1):
        for verts in combinations(range(n + 1), p + 1):
            dims[verts] = p
            if p:
                faces[verts] = [nondegenerate(verts[:i] + verts[i + 1:], p - 1) for i in range(p + 1)]
    return FiniteSimplicialSet(dims, faces, label=f"Delta[{n}]")


def disjoint_union(*parts: FiniteSimplicialSet) -> FiniteSimplicialSet:
    dims, faces = {}, {}
    for tag, K in enumerate(parts):
        for name, p in K.dims.items():
            dims[(tag, name)] = p
            if p:
                faces[(tag, name)] = [Simplex((tag, f.base), f.surj) for f in K.faces[name]]
    return FiniteSimplicialSet(dims, faces, label=" + ".join(K.label for K in parts))


def level_simplices(K: FiniteSimplicialSet, k: int):
    return K.level_simplices(k)


def structure_map(K: FiniteSimplicialSet, f: MonotoneMap, s: Simplex) -> Simplex:
    return K.structure_map(f, s)


def connected_components(K: FiniteSimplicialSet):
    return K.connected_components()


def as_monotone(s: Simplex) -> tuple[int, ...]:
    """Vertex values of a simplex of a standard simplex (bases are vertex tuples)."""
    return tuple(s.base[j] for j in s.surj)
