"""Acceptance criteria 1-12, one reported line per criterion."""

import random
import time
from pathlib import Path

import pytest

from kuranishi.cli import verify_paper_example
from kuranishi.dspace import (check_interchange, compose_1, horizontal_compose, one_morphisms_equal,
                              random_two_morphism, two_morphisms_equal, verify_2morphism,
                              verify_dspace, vertical_compose, zero_2morphism)
from kuranishi.groebner import Ideal, ideal_equal, ideal_member, ideal_power, ideal_product
from kuranishi.macaulay import macaulay_member
from kuranishi.moore import (boundary_ideal, face_kernel, homotopy_group, normalized_ideal,
                             Obstruction, pi_obstruction)
from kuranishi.poly import PolyRing
from kuranishi.srings import (SectionData, build_morphism, compose_sr, constant_homotopy,
                              identity_morphism, kuranishi_model, solve_homotopies,
                              tensor_simplicial, verify_homotopy, verify_simplicial_identities)
from kuranishi.ssets import standard_simplex
from kuranishi.truncation import truncate_homotopy, truncate_morphism, truncate_object
from kuranishi.workspace import WorkspaceError, parse_workspace, print_workspace

from conftest import random_poly, random_section

LINES = {}
F = ("x^2", "y^2", "x*y")
DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "kuranishi" / "data"


def report(n, ok, detail):
    LINES[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, LINES[n]


def canonical():
    return kuranishi_model(SectionData.from_strings(["x", "y"], list(F)))


def random_models(count, seed):
    rng = random.Random(seed)
    return [kuranishi_model(random_section(rng)) for _ in range(count)]


def test_criterion_01_counterexample():
    t0 = time.perf_counter()
    rep = verify_paper_example()
    elapsed = time.perf_counter() - t0
    steps = {r["name"][:3]: r["status"] for r in rep.results}
    # (b) independently: normal form against the closed-form boundary ideal
    Y = canonical()
    R = Y.rings[1]
    closed = Ideal(R, [R.parse(f"u{i}*(u{j} - {F[j - 1]})") for i in (1, 2, 3) for j in (1, 2, 3)])
    nf = closed.normal_form(R.parse("u1*u2 - u3^2"))
    ok = (rep.ok and all(steps.get(s) == "pass" for s in ("(a)", "(b)", "(c)", "(d)", "(e)"))
          and not nf.is_zero() and elapsed < 5)
    report(1, ok, f"steps a-e pass, NF = {nf}, {elapsed:.2f} s")


def test_criterion_02_boundary_closed_form():
    Y = canonical()
    R = Y.rings[1]
    closed = Ideal(R, [R.parse(f"u{i}*(u{j} - {F[j - 1]})") for i in (1, 2, 3) for j in (1, 2, 3)])
    report(2, ideal_equal(boundary_ideal(Y, 1), closed), "B_1 equals the ideal of u_i(u_j - f_j)")


def test_criterion_03_n2_is_a_product():
    models = [canonical()] + random_models(24, 303)
    bad = [str(A.section) for A in models
           if not ideal_equal(normalized_ideal(A, 2), ideal_product(face_kernel(A, 2, 0), face_kernel(A, 2, 1)))]
    report(3, not bad, f"{len(models)} models, failures: {bad}")


def test_criterion_04_truncation_of_standard_model():
    T = truncate_object(canonical())
    R0 = T.ring0
    ok = (ideal_equal(T.oprime_ideal, ideal_power(Ideal(R0, ["x", "y"]), 4))
          and T.oprime_dimension() == 10
          and T.e_rank() == 3 and T.e_dimension() == 9
          and [str(T.reduce0(d)) for d in T.d_images] == list(F))
    report(4, ok, f"dim O' = {T.oprime_dimension()}, E rank {T.e_rank()}, dim E = {T.e_dimension()}")


def test_criterion_05_dspace_axioms():
    models = random_models(100, 505)
    failures = []
    for A in models:
        res = verify_dspace(truncate_object(A))
        if not (res.results["square-zero"] and res.results["Gce"]):
            failures.append(str(A.section))
    report(5, not failures, f"{len(models)} models, {len(failures)} failures")


def test_criterion_06_simplicial_identities():
    models = random_models(100, 606)
    failures = [str(A.section) for A in models if not verify_simplicial_identities(A).ok]
    report(6, not failures and all(A.cap == 3 for A in models),
           f"{len(models)} models up to level 3, {len(failures)} failures")


def test_criterion_07_moore_sanity():
    ok = True
    for A in [canonical()] + random_models(20, 707):
        R0 = A.rings[0]
        ok &= ideal_equal(homotopy_group(A, 0).defining_ideal(),
                          Ideal(R0, [R0.parse(str(f)) for f in A.section.section]))
    X = kuranishi_model(SectionData.from_strings([], ["0"]))
    pi1 = homotopy_group(X, 1)
    ok &= pi1.dimension() == 1 and ideal_equal(pi1.cycles, Ideal(X.rings[1], ["u1"])) \
        and ideal_equal(pi1.boundaries, Ideal(X.rings[1], ["u1^2"]))
    for n in range(4):
        M = kuranishi_model(SectionData.from_strings(["x", "y", "z"][:n], []))
        ok &= homotopy_group(M, 1).is_trivial()
    report(7, ok, "pi_0 = Q[x]/(f), pi_1 of the point model is (t)/(t^2), manifolds have trivial pi_1")


def test_criterion_08_tensor_block_counts():
    D1 = standard_simplex(1)
    ok = True
    for A in [canonical(), kuranishi_model(SectionData.from_strings([], ["0"]))] + random_models(5, 808):
        P = tensor_simplicial(A, D1)
        for k in range(4):
            ok &= len(D1.level_simplices(k)) == k + 2
            ok &= P.rings[k].nvars == (k + 2) * A.rings[k].nvars
    report(8, ok, "level k of A (x) Delta[1] has k+2 blocks for k <= 3")


def _endo(rng, K):
    R0, R1 = K.rings[0], K.rings[1]
    r = R0.parse(f"{rng.choice([1, -1, 2])} + {rng.randint(-2, 2)}*x + {rng.randint(-1, 1)}*x^2")
    return build_morphism(K, K, [R0.var("x") * r], [R1.var("u1") * K.degeneracy(0, 0)(r) ** 2])


def _chain(rng, K):
    phi = truncate_morphism(_endo(rng, K))
    for _ in range(10):
        a = random_two_morphism(rng, phi)
        b = a and random_two_morphism(rng, a[0])
        if a and b:
            return a[1], b[1]
    raise RuntimeError("no random chain found")


def test_criterion_09_two_category_laws():
    rng = random.Random(909)
    K = kuranishi_model(SectionData.from_strings(["x"], ["x^2"]))
    cases, fails = 0, 0
    for _ in range(50):
        eta1, theta1 = _chain(rng, K)
        eta2, theta2 = _chain(rng, K)
        _, kappa = random_two_morphism(rng, theta1.psi)
        ok = two_morphisms_equal(vertical_compose(vertical_compose(eta1, theta1), kappa),
                                 vertical_compose(eta1, vertical_compose(theta1, kappa)))
        ok &= two_morphisms_equal(vertical_compose(zero_2morphism(eta1.phi), eta1), eta1)
        ok &= two_morphisms_equal(vertical_compose(eta1, zero_2morphism(eta1.psi)), eta1)
        ok &= all(eta1.images[i] + zero_2morphism(eta1.phi).images[i] == eta1.images[i]
                  for i in range(len(eta1.images)))
        ok &= verify_2morphism(horizontal_compose(eta1, eta2))
        ok &= verify_2morphism(horizontal_compose(theta1, theta2))
        ok &= check_interchange(eta1, theta1, eta2, theta2)
        cases += 1
        fails += not ok
    report(9, fails == 0, f"{cases} randomized instances, {fails} failures")


def test_criterion_10_oracle_equivalence():
    rng = random.Random(1010)
    cases, disagreements, members = 0, 0, 0
    while cases < 60:
        R = PolyRing(("x", "y", "z")[: rng.randint(1, 3)])
        gens = [random_poly(rng, R, 4, 3) for _ in range(rng.randint(1, 3))]
        gens = [g - g.terms.get((0,) * R.nvars, 0) for g in gens]
        gens = [g for g in gens if g]
        if not gens:
            continue
        if cases % 2 == 0:
            p = sum((random_poly(rng, R, 2, 3) * g for g in gens), R.zero)
        else:
            p = random_poly(rng, R, 4, 4)
        bound = max([p.total_degree()] + [g.total_degree() for g in gens]) + 3
        a = ideal_member(p, Ideal(R, gens))
        b = macaulay_member(p, gens, bound)
        members += a
        disagreements += a != b
        cases += 1
    report(10, disagreements == 0, f"{cases} instances ({members} members), {disagreements} disagreements")


def test_criterion_11_functoriality_and_homotopies():
    rng = random.Random(1111)
    K = kuranishi_model(SectionData.from_strings(["x"], ["x^2"]))
    Y = canonical()
    pairs, bad = 0, 0
    for i in range(24):
        f = _endo(rng, K)
        if i % 3 == 0:
            a, b = rng.randint(-2, 2), rng.randint(-2, 2)
            c = rng.randint(-2, 2)
            g = build_morphism(K, Y, [f"{a}*x + {b}*y"],
                               [f"{a * a}*u1 + {2 * a * b}*u3 + {b * b}*u2 + {c}*(u1*u2 - u3^2)"])
        else:
            g = _endo(rng, K)
        lhs = truncate_morphism(compose_sr(g, f))
        rhs = compose_1(truncate_morphism(g), truncate_morphism(f))
        pairs += 1
        bad += not one_morphisms_equal(lhs, rhs)
    # constant homotopies
    X = kuranishi_model(SectionData.from_strings([], ["0"]))
    constants = [identity_morphism(K), _endo(rng, K), build_morphism(X, Y, [], ["u1*u2 - u3^2"]),
                 build_morphism(X, K, [], ["0"])]
    const_ok = all(verify_2morphism(truncate_homotopy(constant_homotopy(phi))) for phi in constants)
    # solved nonconstant homotopies
    solved = []
    fam = solve_homotopies(build_morphism(X, K, [], ["0"]), degree=3)
    Z = kuranishi_model(SectionData.from_strings(["x"], []))
    fam2 = solve_homotopies(build_morphism(Z, K, ["x"], []), degree=3)
    for family in (fam, fam2):
        for _ in range(3):
            H = family.instantiate([rng.randint(-2, 2) or 1 for _ in range(family.dimension)])
            solved.append(H)
    solved_ok = all(verify_homotopy(H) and verify_2morphism(truncate_homotopy(H)) for H in solved)
    nonconstant = sum(H.map != constant_homotopy(H.phi).map for H in solved)
    report(11, bad == 0 and const_ok and solved_ok and nonconstant >= 5,
           f"{pairs} composable pairs ({bad} failures), {len(constants)} constant and "
           f"{nonconstant} nonconstant homotopies truncate to valid 2-morphisms")


def test_criterion_12_parser_robustness():
    shipped = sorted(DATA_DIR.glob("*.dk"))
    base = shipped[0].read_text()
    rng = random.Random(1212)
    structured, other = 0, []
    for i in range(10_000):
        if i % 2:
            data = bytes(rng.randrange(256) for _ in range(rng.randint(0, 80)))
        else:
            chars = list(base)
            for _ in range(rng.randint(1, 5)):
                pos = rng.randrange(len(chars))
                if rng.random() < 0.5:
                    del chars[pos]
                else:
                    chars.insert(pos, chr(rng.randrange(32, 127)))
            data = "".join(chars).encode()
        try:
            parse_workspace(data)
        except WorkspaceError:
            structured += 1
        except Exception as exc:  # any other exception is a robustness failure
            other.append(repr(exc))
    fixed = all(parse_workspace(print_workspace(parse_workspace(p.read_bytes()))) == parse_workspace(p.read_bytes())
                for p in shipped)
    report(12, not other and fixed and len(shipped) >= 1,
           f"10000 fuzz inputs, {structured} structured errors, {len(other)} other; "
           f"{len(shipped)} shipped files round-trip")
