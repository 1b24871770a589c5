"""Exact multivariate polynomials over the rationals.

A :class:`PolyRing` is an ordered tuple of variable names together with a
monomial order.  Polynomials are immutable maps from exponent tuples to
nonzero :class:`fractions.Fraction` coefficients.  Ring maps are given by
the images of the source variables (:class:`RingMorphism`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]

ORDERS = ("grevlex", "lex", "block")

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class PolyError(ValueError):
    """Raised on malformed polynomial data or a ring mismatch."""


class PolyParseError(PolyError):
    def __init__(self, message, text, pos):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at column {pos + 1}")


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring Q[variables] with a monomial order.

    ``order`` is one of ``grevlex``, ``lex`` or ``block``.  The block order
    compares the first ``split`` variables by grevlex and breaks ties with
    grevlex on the remaining ones; it eliminates the first block.
    """

    variables: tuple[str, ...]
    order: str = "grevlex"
    split: int = 0
    _keys: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)
    _index: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise PolyError(f"duplicate variable names in {self.variables}")
        if self.order not in ORDERS:
            raise PolyError(f"unknown monomial order {self.order!r}")
        if self.order == "block" and not 0 <= self.split <= len(self.variables):
            raise PolyError("block split index out of range")
        self._index.update({v: i for i, v in enumerate(self.variables)})

    @property
    def nvars(self):
        return len(self.variables)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r} in ring Q[{', '.join(self.variables)}]") from None

    def key(self, m):
        """Sort key: larger key means larger monomial."""
        k = self._keys.get(m)
        if k is None:
            if self.order == "grevlex":
                k = _grevlex_key(m)
            elif self.order == "lex":
                k = m
            else:
                k = (_grevlex_key(m[: self.split]), _grevlex_key(m[self.split:]))
            self._keys[m] = k
        return k

    def with_order(self, order, split=0):
        return PolyRing(self.variables, order, split)

    # constructors -------------------------------------------------------

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.const(1)

    def const(self, c):
        c = Fraction(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name):
        m = [0] * self.nvars
        m[self.index(name)] = 1
        return Poly(self, {tuple(m): Fraction(1)})

    @property
    def gens(self):
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps, coeff=1):
        return Poly(self, {tuple(exps): Fraction(coeff)} if coeff else {})

    def parse(self, text):
        return parse_poly(text, self)

    def __call__(self, value):
        """Coerce an int, Fraction, string or same-ring Poly into this ring."""
        if isinstance(value, Poly):
            if value.ring != self:
                raise PolyError("ring mismatch")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def __str__(self):
        return f"Q[{', '.join(self.variables)}]"


class Poly:
    """An immutable polynomial; terms map exponent tuples to Fractions."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # basic queries ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def sorted_terms(self):
        """Terms in decreasing monomial order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    @property
    def lm(self):
        if not self.terms:
            raise PolyError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    @property
    def lc(self):
        return self.terms[self.lm]

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def variables_used(self):
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(self.ring.variables[i] for i in sorted(used))

    def monic(self):
        if not self.terms:
            return self
        return self * (1 / self.lc)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise PolyError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly(self.ring, {m: a * c for m, a in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, mono, coeff):
        """Multiply by the single term ``coeff * x^mono``."""
        return Poly(self.ring, {tuple(a + b for a, b in zip(m, mono)): c * coeff
                                for m, c in self.terms.items()})

    def diff(self, name):
        """Partial derivative with respect to the named variable."""
        i = self.ring.index(name)
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                m2 = list(m)
                m2[i] -= 1
                terms[tuple(m2)] = c * m[i]
        return Poly(self.ring, terms)

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    # printing -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.variables, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            a = abs(c)
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = f"{a}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            if not out:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def normalize(terms: Iterable[tuple[Mapping[str, int], object]], ring: PolyRing) -> Poly:
    """Build a canonical polynomial from ``(exponent map, coefficient)`` pairs.

    >>> R = PolyRing(("x", "y"))
    >>> str(normalize([({"x": 2, "y": 1}, 1), ({"y": 1, "x": 2}, 1)], R))
    '2*x^2*y'
    """
    acc = {}
    for exps, c in terms:
        m = [0] * ring.nvars
        for name, e in exps.items():
            if e < 0:
                raise PolyError("negative exponent")
            m[ring.index(name)] += e
        m = tuple(m)
        acc[m] = acc.get(m, 0) + Fraction(c)
    return Poly(ring, acc)


def arith(kind, p: Poly, q: Poly) -> Poly:
    if p.ring != q.ring:
        raise PolyError(f"ring mismatch: {p.ring} vs {q.ring}")
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise PolyError(f"unknown arithmetic kind {kind!r}")


class RingMorphism:
    """A ring map determined by the images of the source variables."""

    __slots__ = ("source", "target", "images", "_power_cache")

    def __init__(self, source: PolyRing, target: PolyRing, images: Sequence[Poly]):
        images = tuple(images)
        if len(images) != source.nvars:
            raise PolyError(f"expected {source.nvars} images, got {len(images)}")
        for im in images:
            if im.ring != target:
                raise PolyError("morphism image does not live in the target ring")
        self.source = source
        self.target = target
        self.images = images
        self._power_cache = {}

    @classmethod
    def identity(cls, ring):
        return cls(ring, ring, ring.gens)

    @classmethod
    def from_dict(cls, source, target, mapping):
        """Images given by name; unlisted variables map to the same-named target variable."""
        images = []
        for v in source.variables:
            if v in mapping:
                images.append(target(mapping[v]))
            else:
                images.append(target.var(v))
        return cls(source, target, images)

    def image_of(self, name):
        return self.images[self.source.index(name)]

    def _power(self, i, e):
        key = (i, e)
        p = self._power_cache.get(key)
        if p is None:
            p = self.images[i] if e == 1 else self._power(i, e - 1) * self.images[i]
            self._power_cache[key] = p
        return p

    def __call__(self, p: Poly) -> Poly:
        if p.ring != self.source:
            raise PolyError(f"ring mismatch: morphism from {self.source}, element of {p.ring}")
        acc = {}
        for m, c in p.terms.items():
            term = {(0,) * self.target.nvars: c}
            for i, e in enumerate(m):
                if e:
                    q = self._power(i, e)
                    new = {}
                    for m1, c1 in term.items():
                        for m2, c2 in q.terms.items():
                            mm = tuple(a + b for a, b in zip(m1, m2))
                            new[mm] = new.get(mm, 0) + c1 * c2
                    term = new
                    if not term:
                        break
            for mm, cc in term.items():
                acc[mm] = acc.get(mm, 0) + cc
        return Poly(self.target, acc)

    def __eq__(self, other):
        if not isinstance(other, RingMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    def __hash__(self):
        return hash((self.source.variables, self.target.variables, self.images))

    def __repr__(self):
        body = ", ".join(f"{v} -> {im}" for v, im in zip(self.source.variables, self.images))
        return f"RingMorphism({body})"


def apply_morphism(m: RingMorphism, p: Poly) -> Poly:
    return m(p)


def compose_morphisms(g: RingMorphism, f: RingMorphism) -> RingMorphism:
    """The composite ``g o f`` (apply ``f`` first)."""
    if f.target != g.source:
        raise PolyError("cannot compose: target of f is not the source of g")
    return RingMorphism(f.source, g.target, [g(im) for im in f.images])


def valid_name(name):
    return bool(_NAME_RE.match(name))


# ---------------------------------------------------------------------------
# text grammar: integers, identifiers, + - * ^, parentheses.  A "/" by a
# nonzero constant is accepted as well so printed rational coefficients
# read back unchanged.

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.end() == pos or m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("INT", m.group(1), start))
        elif m.group(2):
            tokens.append(("NAME", m.group(2), start))
        else:
            ch = m.group(3)
            if ch == "−":
                ch = "-"
            if ch not in "+-*^()/":
                raise PolyParseError(f"unexpected character {m.group(3)!r}", text, start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "EOF" else repr(kind)
            got = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise PolyParseError(f"expected {want}, found {got}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        p = self.expr()
        self.take("EOF")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op[0] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise PolyParseError("division only by a nonzero constant", self.text, op[2])
                p = p * (1 / q.constant_value())
        return p

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("INT")
            if len(tok[1]) > 4:
                raise PolyParseError("exponent too large", self.text, tok[2])
            base = base ** int(tok[1])
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "INT":
            self.take()
            return self.ring.const(int(tok[1]))
        if tok[0] == "NAME":
            self.take()
            if tok[1] not in self.ring._index:
                raise PolyParseError(f"unknown variable {tok[1]!r}", self.text, tok[2])
            return self.ring.var(tok[1])
        if tok[0] == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        got = "end of input" if tok[0] == "EOF" else repr(tok[1])
        raise PolyParseError(f"expected a number, variable or '(', found {got}", self.text, tok[2])


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse ``text`` as an element of ``ring``.

    >>> R = PolyRing(("x", "y"))
    >>> str(parse_poly("(x+y)*(x-y)", R))
    'x^2 - y^2'
    """
    return _Parser(text, ring).parse()
