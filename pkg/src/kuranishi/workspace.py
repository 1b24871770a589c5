"""The workspace file format: models, morphisms and options.

::

    # comments run to the end of the line
    options { cap = 3; degree_bound = 40; order = grevlex; }

    model Y { base = [x, y]; fibers = 3; section = ["x^2", "y^2", "x*y"]; }
    model X { base = []; fibers = 1; section = ["0"]; }

    morphism Psi : X -> Y { level1 = { u1 = "u1*u2 - u3^2"; }; }

A morphism ``F : X -> Y`` is a ring map from the model of ``X`` into the
model of ``Y``; geometrically it is a map of spaces ``Y -> X``.  The
``level0`` block assigns images to the base variables of ``X`` (polynomials
in the base of ``Y``) and may be omitted when ``X`` has none.  The
``level1`` block assigns images to the fibre generators ``u1 .. um`` of
``X`` as polynomials in level 1 of ``Y``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .poly import PolyParseError, PolyRing, parse_poly
from .srings import DEFAULT_CAP, SectionData, build_morphism, kuranishi_model

ORDERS = ("grevlex", "lex")


class WorkspaceError(ValueError):
    """A located error in a workspace file."""

    def __init__(self, message, line=1, column=1, expected=(), kind="syntax"):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        self.kind = kind
        text = f"line {line}, column {column}: {message}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        super().__init__(text)

    def as_dict(self):
        return {"kind": self.kind, "message": self.message, "line": self.line,
                "column": self.column, "expected": list(self.expected)}


@dataclass(frozen=True)
class Options:
    cap: int = DEFAULT_CAP
    degree_bound: int = 40
    order: str = "grevlex"


@dataclass(frozen=True)
class ModelDecl:
    name: str
    base: tuple
    fibers: int
    section: tuple  # polynomial strings

    def section_data(self) -> SectionData:
        return SectionData.from_strings(self.base, self.section)


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    source: str
    target: str
    level0: tuple  # ((variable, polynomial string), ...)
    level1: tuple


@dataclass(eq=False)
class Workspace:
    models: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    options: Options = Options()
    _built: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, Workspace):
            return NotImplemented
        return (self.models == other.models and self.morphisms == other.morphisms
                and self.options == other.options)

    def model(self, name):
        if name not in self.models:
            raise KeyError(f"unknown model {name!r}")
        key = ("model", name)
        if key not in self._built:
            self._built[key] = kuranishi_model(self.models[name].section_data(),
                                               self.options.cap, self.options.order)
        return self._built[key]

    def morphism(self, name):
        if name not in self.morphisms:
            raise KeyError(f"unknown morphism {name!r}")
        key = ("morphism", name)
        if key not in self._built:
            decl = self.morphisms[name]
            src, tgt = self.model(decl.source), self.model(decl.target)
            x0, y1 = dict(decl.level0), dict(decl.level1)
            data = src.section
            xs = [x0[v] for v in data.base]
            ys = [y1[data.fiber_name(j, 1, 1)] for j in range(1, data.m + 1)]
            B0, B1 = tgt.rings[0], tgt.rings[1]
            self._built[key] = build_morphism(src, tgt, [B0.parse(p) for p in xs],
                                              [B1.parse(p) for p in ys])
        return self._built[key]


# -- lexer ------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<NAME>[A-Za-z][A-Za-z0-9_]*)
  | (?P<INT>[0-9]+)
  | (?P<STRING>"[^"\n]*")
  | (?P<ARROW>->)
  | (?P<SYM>[{}\[\];:=,])
""", re.VERBOSE)

KEYWORDS = {"model", "morphism", "options", "base", "fibers", "section", "level0", "level1"}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int

    def describe(self):
        if self.kind == "EOF":
            return "end of input"
        return repr(self.text)


def _tokenize(text):
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            ch = text[pos]
            if ch == '"':
                raise WorkspaceError("unterminated string", line, col, ['"'], "lexical")
            raise WorkspaceError(f"unexpected character {ch!r}", line, col, (), "lexical")
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind if kind != "SYM" else chunk, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("EOF", "", line, col))
    return tokens


# -- parser -----------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def fail(self, tok, expected, message=None):
        raise WorkspaceError(message or f"unexpected {tok.describe()}", tok.line, tok.column,
                             expected, "syntax")

    def take(self, kind, text=None):
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            self.fail(tok, [repr(text) if text else kind])
        self.i += 1
        return tok

    def keyword(self, word):
        return self.take("NAME", word)

    def name(self):
        tok = self.peek()
        if tok.kind != "NAME":
            self.fail(tok, ["NAME"])
        if tok.text in KEYWORDS:
            self.fail(tok, ["NAME"], f"{tok.text!r} is a reserved word")
        self.i += 1
        return tok

    def workspace(self):
        ws = Workspace()
        seen_options = False
        while self.peek().kind != "EOF":
            tok = self.peek()
            if tok.kind == "NAME" and tok.text == "model":
                decl, where = self.model()
                if decl.name in ws.models or decl.name in ws.morphisms:
                    raise WorkspaceError(f"duplicate name {decl.name!r}", *where, (), "reference")
                ws.models[decl.name] = decl
            elif tok.kind == "NAME" and tok.text == "morphism":
                raw, where = self.morphism()
                if raw[0] in ws.models or raw[0] in ws.morphisms:
                    raise WorkspaceError(f"duplicate name {raw[0]!r}", *where, (), "reference")
                ws.morphisms[raw[0]] = (raw, where)
            elif tok.kind == "NAME" and tok.text == "options":
                if seen_options:
                    raise WorkspaceError("options given twice", tok.line, tok.column, (), "syntax")
                seen_options = True
                ws.options = self.options()
            else:
                self.fail(tok, ["'model'", "'morphism'", "'options'", "end of input"])
        pending = ws.morphisms
        ws.morphisms = {}
        for name, (raw, where) in pending.items():
            ws.morphisms[name] = _check_morphism(ws, raw, where)
        return ws

    def model(self):
        self.keyword("model")
        ntok = self.name()
        self.take("{")
        self.keyword("base")
        self.take("=")
        self.take("[")
        base = []
        if self.peek().kind != "]":
            base.append(self.name())
            while self.peek().kind == ",":
                self.take(",")
                base.append(self.name())
        self.take("]")
        self.take(";")
        self.keyword("fibers")
        self.take("=")
        ftok = self.take("INT")
        self.take(";")
        self.keyword("section")
        self.take("=")
        stok = self.take("[")
        polys = []
        if self.peek().kind != "]":
            polys.append(self.take("STRING"))
            while self.peek().kind == ",":
                self.take(",")
                polys.append(self.take("STRING"))
        self.take("]")
        self.take(";")
        self.take("}")

        names = [t.text for t in base]
        for i, t in enumerate(base):
            if t.text in names[:i]:
                raise WorkspaceError(f"base variable {t.text!r} repeated", t.line, t.column, (), "reference")
            if re.fullmatch(r"u[0-9_]*", t.text):
                raise WorkspaceError(f"base variable {t.text!r} clashes with fibre names",
                                     t.line, t.column, (), "reference")
        fibers = int(ftok.text)
        if fibers > 64:
            raise WorkspaceError("too many fibres", ftok.line, ftok.column, (), "arity")
        if len(polys) != fibers:
            raise WorkspaceError(f"section has {len(polys)} entries but fibers = {fibers}",
                                 stok.line, stok.column, (), "arity")
        ring = PolyRing(tuple(names))
        section = tuple(_poly_text(t, ring) for t in polys)
        return ModelDecl(ntok.text, tuple(names), fibers, section), (ntok.line, ntok.column)

    def assigns(self):
        self.take("{")
        out = []
        while self.peek().kind == "NAME":
            key = self.name()
            self.take("=")
            val = self.take("STRING")
            if self.peek().kind == ";":
                self.take(";")
            out.append((key, val))
        self.take("}")
        self.take(";")
        return out

    def morphism(self):
        self.keyword("morphism")
        ntok = self.name()
        self.take(":")
        src = self.name()
        self.take("ARROW")
        tgt = self.name()
        self.take("{")
        level0 = []
        tok = self.peek()
        if tok.kind == "NAME" and tok.text == "level0":
            self.keyword("level0")
            self.take("=")
            level0 = self.assigns()
        self.keyword("level1")
        self.take("=")
        level1 = self.assigns()
        self.take("}")
        return (ntok.text, src, tgt, level0, level1), (ntok.line, ntok.column)

    def options(self):
        self.keyword("options")
        self.take("{")
        values = {}
        while self.peek().kind == "NAME":
            key = self.peek()
            if key.text not in ("cap", "degree_bound", "order"):
                self.fail(key, ["'cap'", "'degree_bound'", "'order'"], f"unknown option {key.text!r}")
            self.i += 1
            self.take("=")
            if key.text == "order":
                val = self.take("NAME")
                if val.text not in ORDERS:
                    self.fail(val, [repr(o) for o in ORDERS], f"unknown order {val.text!r}")
                values["order"] = val.text
            else:
                val = self.take("INT")
                n = int(val.text)
                lo, hi = (2, 8) if key.text == "cap" else (1, 1000)
                if not lo <= n <= hi:
                    raise WorkspaceError(f"{key.text} must lie in {lo}..{hi}", val.line, val.column,
                                         (), "arity")
                values[key.text] = n
            self.take(";")
        self.take("}")
        return Options(**values)


def _poly_text(tok, ring):
    """Validate a quoted polynomial and return its text without quotes."""
    body = tok.text[1:-1]
    try:
        parse_poly(body, ring)
    except PolyParseError as exc:
        raise WorkspaceError(f"bad polynomial: {exc}", tok.line, tok.column + 1 + exc.pos,
                             (), "syntax") from None
    return body


def _check_morphism(ws, raw, where):
    name, src, tgt, level0, level1 = raw
    for tok in (src, tgt):
        if tok.text not in ws.models:
            raise WorkspaceError(f"unknown model {tok.text!r}", tok.line, tok.column,
                                 sorted(repr(m) for m in ws.models), "reference")
    S, T = ws.models[src.text], ws.models[tgt.text]
    t0 = PolyRing(T.base)
    t1 = PolyRing(T.base + tuple(f"u{j}" for j in range(1, T.fibers + 1)))

    def check(pairs, wanted, ring, label):
        got = {}
        for key, val in pairs:
            if key.text not in wanted:
                raise WorkspaceError(f"{key.text!r} is not a {label} generator of {src.text}",
                                     key.line, key.column, [repr(w) for w in wanted], "reference")
            if key.text in got:
                raise WorkspaceError(f"{key.text!r} assigned twice", key.line, key.column, (), "reference")
            got[key.text] = _poly_text(val, ring)
        missing = [w for w in wanted if w not in got]
        if missing:
            raise WorkspaceError(f"missing {label} images for {', '.join(missing)}", *where,
                                 [repr(w) for w in missing], "arity")
        return tuple((w, got[w]) for w in wanted)

    l0 = check(level0, list(S.base), t0, "level-0")
    l1 = check(level1, [f"u{j}" for j in range(1, S.fibers + 1)], t1, "level-1")
    return MorphismDecl(name, src.text, tgt.text, l0, l1)


def parse_workspace(text) -> Workspace:
    """Parse workspace text (``str`` or UTF-8 ``bytes``)."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = bytes(text[:exc.start]).decode("utf-8", "replace")
            line = prefix.count("\n") + 1
            col = len(prefix) - (prefix.rfind("\n") + 1) + 1
            raise WorkspaceError("input is not valid UTF-8", line, col, (), "lexical") from None
    return _Parser(text).workspace()


def print_workspace(ws: Workspace) -> str:
    out = []
    o = ws.options
    out.append(f"options {{ cap = {o.cap}; degree_bound = {o.degree_bound}; order = {o.order}; }}")
    for m in ws.models.values():
        section = ", ".join(f'"{p}"' for p in m.section)
        out.append(f"model {m.name} {{ base = [{', '.join(m.base)}]; fibers = {m.fibers}; "
                   f"section = [{section}]; }}")
    for f in ws.morphisms.values():
        parts = [f"morphism {f.name} : {f.source} -> {f.target} {{"]
        if f.level0:
            parts.append("  level0 = { " + " ".join(f'{k} = "{v}";' for k, v in f.level0) + " };")
        parts.append("  level1 = { " + " ".join(f'{k} = "{v}";' for k, v in f.level1) + " };")
        parts.append("}")
        out.append("\n".join(parts))
    return "\n\n".join(out) + "\n"


def load_workspace(path) -> Workspace:
    with open(path, "rb") as fh:
        return parse_workspace(fh.read())
