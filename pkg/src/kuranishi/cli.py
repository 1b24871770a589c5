"""Command line interface: ``kuranishi [-w FILE] [--json] COMMAND ...``.

Every command produces a :class:`Report` with the keys ``command``,
``inputs``, ``results`` (a list of ``{name, status, data}``) and
``timings_ms``.  ``status`` is ``"pass"``, ``"fail"`` or ``"info"``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error,
3 a Groebner resource guard was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from importlib import resources

from . import groebner
from .dspace import scheme_theoretically_equal, verify_dspace
from .dspace import one_morphisms_equal
from .groebner import GroebnerGuardError, Ideal
from .moore import (boundary_ideal, cycle_ideal, homotopy_group, normalized_ideal,
                    obstruction_witness)
from .poly import PolyError, PolyRing
from .srings import (CapError, MorphismError, ModelError, SectionData, build_morphism,
                     kuranishi_model, verify_simplicial_identities)
from .truncation import truncate_morphism, truncate_object
from .workspace import Workspace, WorkspaceError, load_workspace, parse_workspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

PAPER_SECTION = ("x^2", "y^2", "x*y")


def default_workspace_text() -> str:
    return resources.files("kuranishi").joinpath("data/paper_example.dk").read_text("utf-8")


@dataclass
class Report:
    command: str
    inputs: dict
    results: list = field(default_factory=list)
    timings_ms: dict = field(default_factory=dict)

    def add(self, name, status, data=None):
        self.results.append({"name": name, "status": status, "data": data if data is not None else {}})

    @contextmanager
    def timed(self, label):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings_ms[label] = round((time.perf_counter() - t0) * 1000, 3)

    @property
    def ok(self):
        return all(r["status"] != "fail" for r in self.results)

    def as_dict(self):
        return {"command": self.command, "inputs": self.inputs, "results": self.results,
                "timings_ms": self.timings_ms}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2)

    def to_text(self):
        lines = [f"{self.command}: {'PASS' if self.ok else 'FAIL'}"]
        for r in self.results:
            lines.append(f"  [{r['status']}] {r['name']}")
            for key, value in r["data"].items():
                lines.append(f"      {key}: {_fmt(value)}")
        if self.timings_ms:
            total = sum(self.timings_ms.values())
            lines.append(f"  time: {total:.1f} ms")
        return "\n".join(lines)


def _fmt(value):
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in value.items()) + "}"
    return str(value)


def _polys(ps):
    return [str(p) for p in ps]


def _dim(value):
    return "infinite" if value is None else value


# -- commands -----------------------------------------------------------------


def cmd_check(ws: Workspace, model: str) -> Report:
    rep = Report("check", {"model": model, "cap": ws.options.cap})
    with rep.timed("identities"):
        res = verify_simplicial_identities(ws.model(model))
    rep.add("simplicial identities", "pass" if res.ok else "fail",
            {"checked": res.checked, "failures": res.failures})
    return rep


def cmd_pi(ws: Workspace, model: str, k: int) -> Report:
    rep = Report("pi", {"model": model, "k": k})
    A = ws.model(model)
    with rep.timed("homotopy group"):
        HG = homotopy_group(A, k)
        data = {"level": k, "ring": list(HG.ring.variables)}
        if k == 0:
            data["quotient"] = _polys(HG.boundaries.groebner().polys)
        else:
            data["cycles"] = _polys(HG.cycles.groebner().polys)
            data["boundaries"] = _polys(HG.boundaries.groebner().polys)
        data["dimension"] = _dim(HG.dimension())
    rep.add(f"pi_{k}", "info", data)
    return rep


def _truncation_data(T):
    return {
        "oprime_ideal": _polys(T.oprime_ideal.groebner().polys),
        "oprime_dimension": _dim(T.oprime_dimension()),
        "e_generators": _polys(T.e_generators),
        "e_rank": T.e_rank(),
        "e_relations": _polys(T.denominator.groebner().polys),
        "e_dimension": _dim(T.e_dimension()),
        "d": {str(n): str(T.reduce0(d)) for n, d in zip(T.e_generators, T.d_images)},
    }


def cmd_truncate(ws: Workspace, model: str) -> Report:
    rep = Report("truncate", {"model": model})
    with rep.timed("truncation"):
        T = truncate_object(ws.model(model))
    rep.add("truncation", "info", _truncation_data(T))
    return rep


def cmd_axioms(ws: Workspace, model: str) -> Report:
    rep = Report("axioms", {"model": model})
    with rep.timed("axioms"):
        res = verify_dspace(truncate_object(ws.model(model)))
    for name, ok in res.results.items():
        rep.add(name, "pass" if ok else "fail")
    return rep


def cmd_compare(ws: Workspace, m1: str, m2: str, k: int) -> Report:
    rep = Report("compare", {"first": m1, "second": m2, "k": k})
    phi, psi = ws.morphism(m1), ws.morphism(m2)
    with rep.timed("pi obstruction"):
        witness = obstruction_witness(phi, psi, k)
    rep.add(f"pi_{k} obstruction", "info",
            {"verdict": "Indistinguishable" if witness is None else "Distinct",
             "witness": None if witness is None else str(witness)})
    with rep.timed("truncation"):
        tphi, tpsi = truncate_morphism(phi), truncate_morphism(psi)
        equal = one_morphisms_equal(tphi, tpsi)
        scheme = scheme_theoretically_equal(tphi, tpsi)
    rep.add("truncations", "info", {"equal": equal})
    rep.add("scheme-theoretic", "info", {"equal": scheme})
    return rep


_NAMED = {"N": normalized_ideal, "B": boundary_ideal, "Z": cycle_ideal}


def cmd_gb(ws: Workspace, model: str, expr: str, level: int | None) -> Report:
    rep = Report("gb", {"model": model, "ideal": expr, "level": level})
    A = ws.model(model)
    with rep.timed("groebner"):
        I = _resolve_ideal(A, expr, level)
        gb = I.groebner()
    rep.add("groebner basis", "info", {"ring": list(I.ring.variables), "order": I.ring.order,
                                       "basis": _polys(gb.polys)})
    return rep


def _resolve_ideal(A, expr, level):
    text = expr.strip()
    if text in ("I", "D"):
        T = truncate_object(A)
        return T.oprime_ideal if text == "I" else T.denominator
    if len(text) >= 2 and text[0] in _NAMED and text[1:].isdigit():
        return _NAMED[text[0]](A, int(text[1:]))
    R = A.ring(0 if level is None else level)
    return Ideal(R, [R.parse(part) for part in text.split(",") if part.strip()])


# -- the counterexample ---------------------------------------------------------


def verify_paper_example(section=None) -> Report:
    """Run the full pipeline on ``Y = K(2,3,f)``, ``X = K(0,1,(0))`` and ``t -> 0``, ``t -> u1 u2 - u3^2``.

    With the canonical ``f = (x^2, y^2, xy)`` every step is asserted; for any
    other ``f`` the findings are only reported.
    """
    section = tuple(PAPER_SECTION if section is None else section)
    canonical = section == PAPER_SECTION
    rep = Report("verify-paper", {"section": list(section), "canonical": canonical})

    def step(name, ok, data):
        rep.add(name, ("pass" if ok else "fail") if canonical else "info", data)

    with rep.timed("models"):
        Y = kuranishi_model(SectionData.from_strings(("x", "y"), section))
        X = kuranishi_model(SectionData.from_strings((), ("0",)))
        R1 = Y.rings[1]
        z = R1.parse("u1*u2 - u3^2")
    with rep.timed("morphisms"):
        try:
            phi = build_morphism(X, Y, [], ["0"])
            psi = build_morphism(X, Y, [], [z])
            valid, why = True, None
        except MorphismError as exc:
            valid, why = False, str(exc)
    step("morphisms valid", valid, {"error": why} if why else {})
    with rep.timed("(a) cycle"):
        faces = {f"d1_{i}": str(Y.face(1, i)(z)) for i in range(2)}
    step("(a) u1*u2 - u3^2 is a cycle", all(v == "0" for v in faces.values()), faces)
    with rep.timed("(b) pi_1 class"):
        B1 = boundary_ideal(Y, 1)
        nf = B1.normal_form(z)
    step("(b) pi_1 class is nonzero", not nf.is_zero(), {"normal_form": str(nf)})
    with rep.timed("(c) decomposable"):
        N1sq = Ideal(R1, [R1.parse(f"u{i}*u{j}") for i in range(1, 4) for j in range(i, 4)])
        decomposable = N1sq.contains(z)
    step("(c) u1*u2 - u3^2 lies in N_1^2", decomposable, {})
    if valid:
        with rep.timed("(d) truncations"):
            tphi, tpsi = truncate_morphism(phi), truncate_morphism(psi)
            same = one_morphisms_equal(tphi, tpsi)
        step("(d) T(Phi) = T(Psi)", same,
             {"e_image_phi": _polys(tphi.e_images()), "e_image_psi": _polys(tpsi.e_images())})
        with rep.timed("(e) obstruction"):
            witness = obstruction_witness(phi, psi, 1)
        verdict = "Indistinguishable" if witness is None else "Distinct"
        step("(e) pi_1 obstruction is Distinct", witness is not None,
             {"verdict": verdict, "witness": None if witness is None else str(witness)})
    return rep


# -- argument handling ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--workspace", default=argparse.SUPPRESS,
                        help="workspace file (default: the bundled counterexample)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print the structured report as JSON")
    p = argparse.ArgumentParser(prog="kuranishi", parents=[common],
                                description="Exact computations with Kuranishi models and their truncations.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="check the simplicial identities")
    c.add_argument("model")
    c = sub.add_parser("pi", parents=[common], help="homotopy group pi_k")
    c.add_argument("model")
    c.add_argument("-k", type=int, default=0)
    c = sub.add_parser("truncate", parents=[common], help="d-space truncation")
    c.add_argument("model")
    c = sub.add_parser("axioms", parents=[common], help="d-space axioms of the truncation")
    c.add_argument("model")
    c = sub.add_parser("compare", parents=[common], help="compare two morphisms")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("-k", type=int, default=1)
    c = sub.add_parser("gb", parents=[common], help="reduced Groebner basis of an ideal")
    c.add_argument("model")
    c.add_argument("ideal", help="N<k>, B<k>, Z<k>, I, D or a comma-separated list of polynomials")
    c.add_argument("--level", type=int, default=None, help="level ring for a polynomial list")
    c = sub.add_parser("verify-paper", parents=[common], help="run the built-in counterexample")
    c.add_argument("--section", default=None,
                   help="comma-separated replacement for (x^2, y^2, x*y)")
    return p


def run_command(ws: Workspace, args) -> Report:
    cmd = args.command
    if cmd == "check":
        return cmd_check(ws, args.model)
    if cmd == "pi":
        return cmd_pi(ws, args.model, args.k)
    if cmd == "truncate":
        return cmd_truncate(ws, args.model)
    if cmd == "axioms":
        return cmd_axioms(ws, args.model)
    if cmd == "compare":
        return cmd_compare(ws, args.first, args.second, args.k)
    if cmd == "gb":
        return cmd_gb(ws, args.model, args.ideal, args.level)
    if cmd == "verify-paper":
        section = None if args.section is None else [s.strip() for s in args.section.split(",")]
        return verify_paper_example(section)
    raise ValueError(f"unknown command {cmd!r}")


def _error(args, command, kind, message, extra=None):
    if getattr(args, "json", False):
        data = {"kind": kind, "message": message}
        if extra:
            data.update(extra)
        rep = Report(command, {}, [{"name": "error", "status": "fail", "data": data}], {})
        print(rep.to_json())
    else:
        print(f"kuranishi: error: {message}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = (groebner.guard.max_degree, groebner.guard.max_size)
    try:
        if args.command == "verify-paper" and not hasattr(args, "workspace"):
            ws = Workspace()
        elif hasattr(args, "workspace"):
            ws = load_workspace(args.workspace)
        else:
            ws = parse_workspace(default_workspace_text())
        groebner.guard.max_degree = ws.options.degree_bound
        report = run_command(ws, args)
    except WorkspaceError as exc:
        _error(args, args.command, exc.kind, str(exc), exc.as_dict())
        return EXIT_USAGE
    except OSError as exc:
        _error(args, args.command, "io", str(exc))
        return EXIT_USAGE
    except (KeyError, CapError, ModelError, PolyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        _error(args, args.command, "input", msg)
        return EXIT_USAGE
    except MorphismError as exc:
        _error(args, args.command, "morphism", str(exc))
        return EXIT_FAIL
    except GroebnerGuardError as exc:
        _error(args, args.command, "guard", str(exc))
        return EXIT_GUARD
    finally:
        groebner.guard.max_degree, groebner.guard.max_size = saved
    print(report.to_json() if getattr(args, "json", False) else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
