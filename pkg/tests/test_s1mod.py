import random

import pytest
from hypothesis import given, settings, strategies as st

from equicyclic.core import Q, SparseLinearMap, field
from equicyclic.equivariant import induced_on_homology, matrix_rank
from equicyclic.errors import NotAChainMap
from equicyclic.s1mod import (ObstructionReport, S1Complex, S1Morphism, compose, designed_obstruction,
                              diagonal_tensor, find_enhancement, free_rank_one, from_chain_complex,
                              is_closed, point, premorphism_differential, random_premorphism,
                              random_strict_mixed, rhom_class_of, rhom_complex, rhom_postcompose,
                              rhom_precompose, tensor_derived, tensor_pushforward_left,
                              tensor_pushforward_right, trivialize, validate_s1, zero_complex)


def test_validate_examples(F):
    assert validate_s1(point(F))
    assert validate_s1(free_rank_one(F))
    bad = S1Complex.from_matrices([("x", 0), ("y", -1), ("z", 1)],
                                  {0: {"x": {"z": 1}}, 1: {"x": {"y": 1}, "z": {"x": 1}}}, F)
    assert not validate_s1(bad)
    rng = random.Random(1)
    for _ in range(5):
        assert validate_s1(random_strict_mixed(F, rng))


def test_trivialize_and_diagonal(F):
    c = from_chain_complex([("a", 0), ("b", 1)], {"a": {"b": 1}}, F)
    assert c.K == 0 and validate_s1(c)
    assert validate_s1(trivialize(c.underlying()))
    M = free_rank_one(F)
    MM = diagonal_tensor(M, M)
    assert validate_s1(MM) and MM.space.dim == 4
    Mk = diagonal_tensor(M, point(F))
    assert Mk.space.dims() == M.space.dims()
    assert all(d.cols == {(s, "1"): {(t, "1"): v for t, v in col.items()}
                          for s, col in M.delta(k).cols.items()}
               for k, d in enumerate(Mk.deltas))


def test_rhom_k_k_is_polynomial():
    k = point(Q)
    R = rhom_complex(k, k, (0, 11))
    dims = R.homology_dims((0, 11))
    assert dims == {d: int(d % 2 == 0 and d <= 10) for d in range(12)}
    u = S1Morphism.u(k)
    assert is_closed(u)
    groups = R.homology((0, 11))
    uu = compose(u, u)
    assert uu.equals(S1Morphism.u(k, 2))
    assert rhom_class_of(uu, groups) == [1]


def test_rhom_of_free_module_and_zero():
    k = point(Q)
    assert rhom_complex(free_rank_one(Q), k, (-4, 4)).homology_dims((-4, 4)) == \
        {d: int(d == 0) for d in range(-4, 5)}
    assert rhom_complex(k, zero_complex(Q), (0, 4)).space.dim == 0


def test_tensor_examples():
    k = point(Q)
    assert tensor_derived(k, k, (-8, 2)).homology_dims((-8, 2)) == \
        {d: int(d <= 0 and d % 2 == 0) for d in range(-8, 3)}
    M = S1Complex.from_matrices([("a", 0), ("b", -1), ("c", 1)], {0: {"b": {"a": 1}}}, Q)
    T = tensor_derived(free_rank_one(Q), M, (-4, 3))
    assert T.homology_dims((-3, 2)) == {d: M.underlying().homology_dims((-3, 2))[d]
                                        for d in range(-3, 3)}
    assert tensor_derived(zero_complex(Q), k, (-3, 3)).space.dim == 0


def _pairs(F):
    rng = random.Random(7)
    fx = [point(F), free_rank_one(F), random_strict_mixed(F, rng, 5, 4),
          random_strict_mixed(F, rng, 5, 4)]
    return [(a, b) for a in fx for b in fx]


def test_differential_squares_to_zero(F):
    rng = random.Random(3)
    for M, N in _pairs(F):
        for _ in range(10):
            f = random_premorphism(M, N, rng.randint(-2, 2), 2, rng)
            assert premorphism_differential(premorphism_differential(f)).is_zero()


def test_leibniz(F):
    rng = random.Random(5)
    pairs = _pairs(F)
    for M, N in pairs[:6]:
        for _ in range(5):
            f = random_premorphism(M, N, rng.randint(-2, 2), 1, rng)
            g = random_premorphism(N, M, rng.randint(-2, 2), 1, rng)
            lhs = premorphism_differential(compose(g, f))
            # with D(X) = X delta - (-1)^{|X|} delta X the sign sits on the outer factor
            rhs = compose(g, premorphism_differential(f)) + \
                compose(premorphism_differential(g), f).scale(F.sign(f.degree))
            assert lhs.equals(rhs)


def _quasi_iso(F):
    """k.a (+) (p -> q) onto k, a closed morphism inducing an iso on homology."""
    M = S1Complex.from_matrices([("a", 0), ("p", -1), ("q", 0)], {0: {"p": {"q": 1}}}, F)
    N = point(F)
    f = S1Morphism(M, N, 0, [SparseLinearMap(M.space, N.space, 0, {"a": {"1": F.one}}, F)])
    assert is_closed(f)
    return f, M, N


def _is_iso(g, src, tgt, window, shift=0):
    hs, ht = src.homology(window), tgt.homology(window)
    for d in range(window[0], window[1] + 1):
        mat = induced_on_homology(g, hs, ht, d, shift)
        if hs[d].dim != ht[d].dim or matrix_rank(mat, g.field) != hs[d].dim:
            return False
    return True


def test_homotopy_invariance():
    F = Q
    f, M, N = _quasi_iso(F)
    P = free_rank_one(F)
    w = (-4, 4)
    a, b = rhom_complex(N, P, w), rhom_complex(M, P, w)
    assert _is_iso(rhom_precompose(f, P, a, b), a, b, (-3, 3))
    a, b = rhom_complex(P, M, w), rhom_complex(P, N, w)
    assert _is_iso(rhom_postcompose(f, P, a, b), a, b, (-3, 3))
    a, b = tensor_derived(P, M, w), tensor_derived(P, N, w)
    assert _is_iso(tensor_pushforward_right(f, P, a, b), a, b, (-3, 3))
    a, b = tensor_derived(M, P, w), tensor_derived(N, P, w)
    assert _is_iso(tensor_pushforward_left(f, P, a, b), a, b, (-3, 3))


def test_enhancement_examples(F):
    k = point(F)
    c = from_chain_complex([("a", 0), ("b", 1)], {"a": {"b": 1}}, F)
    f = SparseLinearMap(k.space, c.space, 0, {"1": {}}, F)
    out = find_enhancement(f, k, c)
    assert isinstance(out, S1Morphism) and is_closed(out)
    M = free_rank_one(F)
    ident = find_enhancement(SparseLinearMap.identity(M.space, F), M, M)
    assert isinstance(ident, S1Morphism) and ident.J == 0
    obs = find_enhancement(*designed_obstruction(F))
    assert isinstance(obs, ObstructionReport) and obs.stage == 1 and obs.nonzero
    assert obs.homology_class == [1] and obs.globally_unsolvable


def test_enhancement_rejects_non_chain_maps():
    c = from_chain_complex([("a", 0), ("b", 1)], {"a": {"b": 1}}, Q)
    f = SparseLinearMap(c.space, c.space, 0, {"a": {"a": 1}}, Q)
    with pytest.raises(NotAChainMap):
        find_enhancement(f, c, c)


def _null_homotopic(M, N, rng):
    """f = d h + h d for a random h of degree -1; always a chain map."""
    F = M.field
    h = random_premorphism(M, N, -1, 0, rng).term(0)
    return N.delta(0) @ h + h @ M.delta(0)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([0, 2, 3]), st.integers(0, 10 ** 6))
def test_enhancement_between_trivialized_complexes(p, seed):
    F = field(p)
    rng = random.Random(seed)
    M = trivialize(random_strict_mixed(F, rng, 5, 4).underlying())
    N = trivialize(random_strict_mixed(F, rng, 5, 4).underlying())
    out = find_enhancement(_null_homotopic(M, N, rng), M, N)
    assert isinstance(out, S1Morphism) and is_closed(out)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([0, 2, 3]), st.integers(0, 10 ** 6))
def test_enhancement_result_is_consistent(p, seed):
    F = field(p)
    rng = random.Random(seed)
    M = random_strict_mixed(F, rng, 5, 4)
    N = random_strict_mixed(F, rng, 5, 4)
    out = find_enhancement(_null_homotopic(M, N, rng), M, N)
    if isinstance(out, S1Morphism):
        assert is_closed(out)
    else:
        assert out.stage >= 1 and out.rhs


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([0, 2, 3]), st.integers(0, 10 ** 6))
def test_enhancement_output_is_closed(p, seed):
    F = field(p)
    rng = random.Random(seed)
    M = random_strict_mixed(F, rng, 5, 4)
    out = find_enhancement(SparseLinearMap.identity(M.space, F), M, M)
    assert isinstance(out, S1Morphism) and is_closed(out)
    u = S1Morphism.u(trivialize(M.underlying()))
    assert is_closed(u)
