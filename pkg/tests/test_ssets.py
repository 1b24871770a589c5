from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from kuranishi.ssets import (MonotoneMap, SimplicialError, as_monotone, connected_components,
                             disjoint_union, level_simplices, standard_simplex, structure_map)

D0, D1, D2, D3 = (standard_simplex(n) for n in range(4))


def test_delta0_has_one_simplex_per_level():
    for k in range(5):
        assert len(level_simplices(D0, k)) == 1


def test_delta1_levels_are_eta_maps():
    for k in range(7):
        simplices = level_simplices(D1, k)
        assert len(simplices) == k + 2
        # eta^i sends 0..i-1 to 0 and the rest to 1
        assert [as_monotone(s) for s in simplices] == [(0,) * i + (1,) * (k + 1 - i) for i in range(k + 2)]
    assert [as_monotone(s) for s in level_simplices(D1, 1)] == [(1, 1), (0, 1), (0, 0)]


def test_level_counts_of_delta2():
    assert len(level_simplices(D2, 0)) == 3
    # monotone maps [k] -> [2]: C(k+3, 2)
    assert len(level_simplices(D2, 2)) == 10


def test_structure_map_examples():
    eta11 = level_simplices(D1, 1)[1]
    assert as_monotone(D1.face(eta11, 0)) == (1,)
    assert D1.face(eta11, 0) == level_simplices(D1, 0)[0]
    assert structure_map(D1, MonotoneMap.identity(1), eta11) == eta11
    v1 = level_simplices(D1, 0)[0]
    assert D1.degeneracy(v1, 0) == level_simplices(D1, 1)[0]


def test_structure_map_dimension_mismatch():
    with pytest.raises(SimplicialError):
        structure_map(D1, MonotoneMap.identity(2), level_simplices(D1, 1)[0])


def test_components():
    assert len(connected_components(D3)) == 1
    assert len(connected_components(D1)) == 1
    assert len(connected_components(disjoint_union(D0, D0))) == 2


def test_identities_on_nondegenerate_simplices():
    for K in (D1, D2, D3, disjoint_union(D1, D2)):
        assert K.check_identities() == []


def test_monotone_validation():
    with pytest.raises(SimplicialError):
        MonotoneMap((1, 0), 1)
    with pytest.raises(SimplicialError):
        MonotoneMap((0, 3), 2)


def monotone(n, m):
    return st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1).map(lambda v: MonotoneMap(tuple(sorted(v)), n))


@st.composite
def composable(draw):
    k = draw(st.integers(0, 3))
    j = draw(st.integers(0, 3))
    i = draw(st.integers(0, 3))
    g = draw(monotone(k, j))   # [j] -> [k]
    f = draw(monotone(j, i))   # [i] -> [j]
    K = draw(st.sampled_from([D1, D2, D3]))
    s = draw(st.sampled_from(level_simplices(K, k)))
    return K, g, f, s


@given(composable())
def test_contravariance(data):
    K, g, f, s = data
    assert structure_map(K, g.after(f), s) == structure_map(K, f, structure_map(K, g, s))


@given(composable())
def test_standard_simplex_acts_by_precomposition(data):
    K, g, f, s = data
    assert as_monotone(structure_map(K, g, s)) == tuple(as_monotone(s)[v] for v in g.values)


def test_degenerate_simplices_are_in_ez_form():
    for k in range(4):
        for s in level_simplices(D2, k):
            vs = as_monotone(s)
            assert len(set(vs)) == s.base_dim + 1
            assert s.is_degenerate() == (len(set(vs)) < k + 1)
