import random

import pytest
from hypothesis import given, settings, strategies as st

from kuranishi.linalg import InconsistentSystem
from kuranishi.poly import PolyRing, RingMorphism, compose_morphisms
from kuranishi.srings import (CapError, Homotopy, ModelError, MorphismError, SectionData, SRMorphism,
                              block_count, build_morphism, compose_sr, constant_homotopy,
                              homotopy_failures, identity_morphism, is_constant_homotopy,
                              kuranishi_model, morphism_failures, path_object, solve_homotopies,
                              tensor_simplicial, verify_homotopy, verify_morphism,
                              verify_simplicial_identities)
from kuranishi.ssets import standard_simplex

from conftest import random_section


def test_level_one_of_the_counterexample_model(Y):
    assert Y.rings[1].variables == ("x", "y", "u1", "u2", "u3")
    assert [str(p) for p in Y.face(1, 0).images] == ["x", "y", "0", "0", "0"]
    assert [str(p) for p in Y.face(1, 1).images] == ["x", "y", "x^2", "y^2", "x*y"]


def test_model_without_fibres_is_constant():
    M = kuranishi_model(SectionData.from_strings(["x", "y"], []))
    for k in range(M.cap + 1):
        assert M.rings[k].variables == ("x", "y")
    for k in range(1, M.cap + 1):
        for i in range(k + 1):
            assert M.face(k, i) == RingMorphism.identity(M.rings[k])


def test_point_model(X):
    assert X.rings[0].variables == ()
    assert X.rings[1].variables == ("u1",)
    assert X.face(1, 0).images[0].is_zero()
    assert X.face(1, 1).images[0].is_zero()


def test_higher_faces_by_hand(Y):
    # d_1 on level 2 merges the two blocks; d_2 substitutes the section in block 2
    R2 = Y.rings[2]
    assert str(Y.face(2, 1)(R2.parse("u1_1 - u1_2"))) == "0"
    assert str(Y.face(2, 2)(R2.parse("u1_1*u2_2"))) == "y^2*u1"
    assert str(Y.face(2, 0)(R2.parse("u1_1*u2_2 + u3_2"))) == "u3"
    # d0 d1 = d0 d0 on u1_2
    u = R2.var("u1_2")
    assert Y.face(1, 0)(Y.face(2, 1)(u)) == Y.face(1, 0)(Y.face(2, 0)(u))


def test_model_validation():
    with pytest.raises(ModelError):
        kuranishi_model(SectionData.from_strings(["x"], ["x"]), cap=1)
    with pytest.raises(ModelError):
        SectionData.from_strings(["x", "x"], [])
    with pytest.raises(ModelError):
        SectionData.from_strings(["u1"], ["u1"])
    with pytest.raises(Exception):
        SectionData.from_strings(["x"], ["y"])


def test_identities_hold(Y):
    rep = verify_simplicial_identities(Y)
    assert rep.ok and rep.checked > 0
    assert verify_simplicial_identities(kuranishi_model(SectionData.from_strings(["x"], []))).ok


def test_corrupted_face_is_named(Y):
    R1, R0 = Y.rings[1], Y.rings[0]
    bad = list(Y.face(1, 1).images)
    bad[2] = bad[2] + 1
    broken = Y.replace_face(1, 1, RingMorphism(R1, R0, bad))
    rep = verify_simplicial_identities(broken)
    assert not rep.ok
    assert "d1 d2 = d1 d1 on level 2" in rep.failures
    assert "d2 s0 = s0 d1 on level 1" in rep.failures


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_random_models_satisfy_identities(seed):
    data = random_section(random.Random(seed))
    assert verify_simplicial_identities(kuranishi_model(data)).ok


def test_tensor_with_delta1_block_counts(X, Y):
    P = tensor_simplicial(X, standard_simplex(1))
    assert P.rings[1].variables == ("u1__0", "u1__1", "u1__2")
    for A in (X, Y):
        P = tensor_simplicial(A, standard_simplex(1))
        for k in range(A.cap + 1):
            assert P.rings[k].nvars == (k + 2) * A.rings[k].nvars
            assert block_count(P, k) == k + 2
        assert verify_simplicial_identities(P).ok


def test_tensor_with_delta0_is_a_copy(Y):
    P = tensor_simplicial(Y, standard_simplex(0))
    for k in range(1, Y.cap + 1):
        for i in range(k + 1):
            rk = RingMorphism(Y.rings[k], P.rings[k], P.rings[k].gens)
            rk1 = RingMorphism(Y.rings[k - 1], P.rings[k - 1], P.rings[k - 1].gens)
            assert compose_morphisms(P.face(k, i), rk) == compose_morphisms(rk1, Y.face(k, i))


def test_path_object(X, Y):
    for A in (X, Y):
        P, i0, i1, collapse = path_object(A)
        ident = identity_morphism(A)
        assert compose_sr(collapse, i0) == ident
        assert compose_sr(collapse, i1) == ident
        assert verify_morphism(i0) and verify_morphism(i1) and verify_morphism(collapse)
    P, i0, _, _ = path_object(X)
    assert [str(p) for p in i0.maps[1].images] == ["u1__0"]
    assert P.rings[0].nvars == 0


def test_build_morphism_examples(X, Y):
    psi = build_morphism(X, Y, [], ["u1*u2 - u3^2"])
    phi = build_morphism(X, Y, [], ["0"])
    assert verify_morphism(psi) and verify_morphism(phi)
    with pytest.raises(MorphismError, match="x\\^2"):
        build_morphism(X, Y, [], ["u1"])


def test_built_morphisms_at_higher_levels(Y, K1):
    f = build_morphism(K1, Y, ["x + y"], ["u1 + 2*u3 + u2"])
    assert morphism_failures(f) == []
    # independent recheck of one level-2 square
    R = K1.rings[2]
    v = R.var("u1_2")
    assert f.maps[1](K1.face(2, 0)(v)) == Y.face(2, 0)(f.maps[2](v))


@given(st.integers(0, 10**6))
@settings(max_examples=20)
def test_random_bar_endomorphisms_commute(seed):
    rng = random.Random(seed)
    K = kuranishi_model(SectionData.from_strings(["x"], ["x^2"]))
    r = K.rings[0].parse(f"{rng.randint(-2, 2)} + {rng.randint(-2, 2)}*x")
    f = build_morphism(K, K, [K.rings[0].var("x") * r], [K.rings[1].var("u1") * K.degeneracy(0, 0)(r) ** 2])
    assert morphism_failures(f) == []


def test_constant_homotopy(X, Y):
    phi = build_morphism(X, Y, [], ["u1*u2 - u3^2"])
    H = constant_homotopy(phi)
    assert verify_homotopy(H)
    assert H.phi is phi and H.psi is phi


def test_broken_homotopy_is_rejected(X, K1):
    phi = build_morphism(X, K1, [], ["0"])
    H = constant_homotopy(phi)
    maps = list(H.map.maps)
    B2 = K1.rings[2]
    images = list(maps[2].images)
    images[2] = images[2] + B2.var("u1_1")  # a middle block at level 2
    maps[2] = RingMorphism(maps[2].source, B2, images)
    bad = Homotopy(H.source, H.target, SRMorphism(H.map.source, K1, maps), phi, phi)
    assert not verify_homotopy(bad)
    assert any(f.startswith("face d^2") or f.startswith("face d^3") for f in homotopy_failures(bad))


def test_solved_nonconstant_homotopies(X, K1):
    phi = build_morphism(X, K1, [], ["0"])
    fam = solve_homotopies(phi, degree=3)
    assert fam.dimension >= 1
    for i in range(fam.dimension):
        params = [0] * fam.dimension
        params[i] = 1
        H = fam.instantiate(params)
        assert verify_homotopy(H)
        assert not is_constant_homotopy(H)
        # the far end is again a morphism out of the bar model
        assert K1.face(1, 0)(H.psi.maps[1].images[0]).is_zero()
    assert is_constant_homotopy(fam.instantiate()) or verify_homotopy(fam.instantiate())


def test_solver_with_both_ends(X, K1):
    phi = build_morphism(X, K1, [], ["0"])
    H = solve_homotopies(phi, degree=3).instantiate([1])
    back = solve_homotopies(H.psi, degree=3, psi=H.phi).instantiate()
    assert verify_homotopy(back)
    assert back.psi == phi


def test_solver_reports_no_solution(X, K1):
    phi = build_morphism(X, K1, [], ["u1*(u1 - x^2)"])
    with pytest.raises(InconsistentSystem):
        solve_homotopies(phi, degree=2)


def test_cap_errors(Y):
    with pytest.raises(CapError):
        Y.ring(Y.cap + 1)
