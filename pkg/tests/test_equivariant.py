import random

import pytest
from hypothesis import given, settings, strategies as st

from equicyclic.core import Q, SparseLinearMap, Z2, field
from equicyclic.equivariant import (FIXED, ORBITS, TATE, _les, equivariant_complex, fixed,
                                    gysin_les, induced_map, induced_on_homology, iota_map,
                                    matrix_rank, norm_les, orbits, pr_map, tate)
from equicyclic.errors import UnboundedInput, WindowTooSmall
from equicyclic.s1mod import (S1Complex, S1Morphism, free_rank_one, is_closed, point,
                              premorphism_differential, random_premorphism, random_strict_mixed)

from oracles import homology_oracle


def test_orbits_of_k(F):
    dims = orbits(point(F), (-11, 1)).homology_dims()
    assert dims == {d: int(-10 <= d <= 0 and d % 2 == 0) for d in range(-11, 2)}


def test_fixed_points_and_tate_of_k(F):
    dims = fixed(point(F), (-1, 11)).homology_dims()
    assert dims == {d: int(0 <= d <= 10 and d % 2 == 0) for d in range(-1, 12)}
    assert tate(point(F), (-4, 4)).homology_dims() == {d: int(d % 2 == 0) for d in range(-4, 5)}


def test_free_module(F):
    xy = free_rank_one(F)
    assert not any(tate(xy, (-4, 4)).homology_dims().values())
    assert orbits(xy, (-4, 4)).homology_dims() == {d: int(d == 0) for d in range(-4, 5)}
    assert fixed(xy, (-4, 4)).homology_dims() == {d: int(d == -1) for d in range(-4, 5)}


def test_flavor_and_window_errors():
    with pytest.raises(ValueError):
        equivariant_complex(point(Q), "cyclic", (0, 2))
    with pytest.raises(WindowTooSmall):
        orbits(point(Q), (2, 0))
    z2 = S1Complex.from_matrices([("a", 0)], {}, Q, Z2)
    with pytest.raises(UnboundedInput):
        orbits(z2, (0, 1))


def test_pr_and_iota_are_chain_maps():
    xy = free_rank_one(Q)
    f, _, _ = pr_map(xy, (-3, 3))
    assert f.col("x") == {("x", 0): 1} and f.col("y") == {("y", 0): 1}
    g, _, _ = iota_map(xy, (-3, 3))
    assert g.col(("x", 0)) == {"x": 1}
    assert all(i == 0 for (_, i) in g.cols)


def test_u_acts_as_isomorphism_on_fixed_points_of_k():
    k = point(Q)
    h, s, t = induced_map(S1Morphism.u(k), FIXED, (0, 6))
    hs, ht = s.homology(), t.homology()
    for d in (0, 2, 4, 6):
        assert induced_on_homology(h, hs, ht, d, 2) == [[1]]


@pytest.mark.parametrize("flavor", [ORBITS, FIXED, TATE])
def test_homology_matches_dense_oracle(flavor):
    for p in (0, 2, 3):
        rng = random.Random(11 + p)
        for _ in range(3):
            M = random_strict_mixed(field(p), rng, 6, 6)
            E = equivariant_complex(M, flavor, (-4, 4))
            dims = E.homology_dims()
            for d in range(-4, 5):
                assert dims[d] == homology_oracle(E.space, E.differential, d, p)


@pytest.mark.parametrize("flavor", [ORBITS, FIXED, TATE])
def test_closed_morphisms_induce_chain_maps(flavor):
    rng = random.Random(4)
    F = Q
    M = random_strict_mixed(F, rng, 5, 4)
    ident = S1Morphism.identity(M)
    g, s, t = induced_map(ident, flavor, (-3, 3))
    assert all(g.col(l) == {l: 1} for l in s.space.labels if l in t.space)
    # a null-homotopic morphism D(h) is closed, so its extension commutes with the differentials
    h = random_premorphism(M, M, -1, 2, rng)
    f = premorphism_differential(h)
    assert is_closed(f)
    g, s, t = induced_map(f, flavor, (-3, 3))
    lhs = g @ s.differential
    rhs = (t.differential @ g).scale(F.sign(f.degree))
    inner = [l for l in s.space.labels if -3 <= s.space.degree(l) <= 2]
    for l in inner:
        a, b = lhs.col(l), rhs.col(l)
        keep = {k for k in set(a) | set(b) if -3 <= t.space.degree(k) - f.degree <= 3}
        assert {k: a.get(k, 0) for k in keep} == {k: b.get(k, 0) for k in keep}


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([0, 2]), st.integers(0, 10 ** 6))
def test_gysin_and_norm_les_are_exact(p, seed):
    M = random_strict_mixed(field(p), random.Random(seed), 8, 10)
    for rep in (gysin_les(M, (-5, 5)), norm_les(M, (-5, 5))):
        assert rep.ok, [s for s in rep.slots if s["verdict"] == "FAIL"]
        assert rep.interior()


def test_les_detects_a_broken_sequence():
    # i = p = id is not a short exact sequence; the middle slot must fail
    A = orbits(point(Q), (-6, 4)).complex
    ident = SparseLinearMap.identity(A.space, Q)
    rep = _les("broken", A, A, A, ident, ident, 0, (-4, 2))
    assert not rep.ok
    assert any(s["verdict"] == "FAIL" and s["slot"].startswith("B") for s in rep.slots)
    with pytest.raises(ValueError):
        _les("not onto", A, A, A, ident, SparseLinearMap.zero(A.space, A.space, 2, Q), 2, (-4, 2))


def test_matrix_rank():
    assert matrix_rank([[1, 2], [2, 4]], Q) == 1
    assert matrix_rank([[1, 1], [1, 3]], field(2)) == 1
    assert matrix_rank([], Q) == 0
