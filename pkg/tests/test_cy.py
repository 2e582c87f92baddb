import pytest
from hypothesis import given, settings, strategies as st

from equicyclic.core import Q, field
from equicyclic.cy import (FAIL, PASS, CotraceData, TraceData, cap_word, check_cap_chain_map,
                           diagonal_bimodule, dual_diagonal, hochschild_cochains, hom_homology,
                           smooth_cy_lift_check, strong_proper_cy_check, validate_bimodule,
                           weak_proper_cy_check, weak_smooth_cy_check, yoneda_bimodule,
                           zero_bimodule)
from equicyclic.errors import DegreeMismatch, NotACycle
from equicyclic.fixtures import a_p, dual_numbers, exterior, ground_field, quiver
from equicyclic.hochschild import CHECK, HAT


def fixtures(F):
    return [ground_field(F), exterior(F), exterior(F, n=3), dual_numbers(F), quiver(F),
            quiver(F, unital=False)]


def test_bimodules_validate(F):
    for c in fixtures(F):
        assert validate_bimodule(diagonal_bimodule(c)), c.name
        for n in (0, 1, 2, 3):
            assert validate_bimodule(dual_diagonal(c, n)), (c.name, n)
        for A in c.objects:
            for B in c.objects:
                assert validate_bimodule(yoneda_bimodule(c, A, B))
    assert validate_bimodule(diagonal_bimodule(a_p(3)))


def test_bimodule_dimensions():
    g = ground_field(Q)
    for P in (diagonal_bimodule(g), dual_diagonal(g, 0), yoneda_bimodule(g, "X", "X")):
        assert P.dims() == {("X", "X"): 1}
    q = quiver(Q)
    homs = {(s, t): len(q.hom(s, t)) for s in q.objects for t in q.objects}
    for A in q.objects:
        for B in q.objects:
            dims = yoneda_bimodule(q, A, B).dims()
            for K in q.objects:
                for L in q.objects:
                    assert dims.get((K, L), 0) == homs[(A, K)] * homs[(L, B)]
    assert zero_bimodule(q).dims() == {}


def test_diagonal_actions_match_mu():
    c = exterior(Q)
    D = diagonal_bimodule(c)
    assert D.actions[(("D", "eps"), "1")] == {("D", "eps"): 1}
    assert D.actions[("1", ("D", "eps"))] == {("D", "eps"): -1}


def test_cochain_complexes():
    g = ground_field(Q)
    cc = hochschild_cochains(g, yoneda_bimodule(g, "X", "X"), 4, (-2, 2))
    assert cc.homology_dims() == {-2: 0, -1: 0, 0: 1, 1: 0, 2: 0}
    assert cc.certified
    for c in (exterior(Q), dual_numbers(Q), quiver(Q)):
        for A in c.objects:
            cc = hochschild_cochains(c, yoneda_bimodule(c, A, A), 3, (-2, 2))
            assert (cc.differential @ cc.differential).is_zero()


@pytest.mark.parametrize("make", [ground_field, exterior, dual_numbers, quiver,
                                  lambda F: quiver(F, unital=False)])
def test_cap_is_a_chain_map(make):
    c = make(Q)
    for A in c.objects:
        for B in c.objects:
            assert check_cap_chain_map(c, yoneda_bimodule(c, A, B), 3)


def test_cap_needs_yoneda_coefficients():
    c = exterior(Q)
    with pytest.raises(ValueError):
        cap_word(c, diagonal_bimodule(c), {}, ("eps",))


def test_hom_homology():
    q = quiver(Q)
    assert {d: g.dim for d, g in hom_homology(q, "A", "B").items() if g.dim} == {0: 1}
    assert not any(g.dim for g in hom_homology(q, "B", "A").values())


# -- proper ---------------------------------------------------------------------------

def test_weak_proper_on_exterior():
    v = weak_proper_cy_check(exterior(Q), {("eps",): 1}, 1)
    assert v.verdict == PASS
    pair = v.details["pairs"][("X", "X")]
    assert pair["rank"] == 2 == pair["rows"] == pair["cols"]
    zero = weak_proper_cy_check(exterior(Q), {}, 1)
    assert zero.verdict == FAIL and zero.witness["rank"] == 0


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([0, 3, 5]), st.integers(1, 40))
def test_weak_proper_is_scale_invariant(p, a):
    F = field(p)
    if F(a) == 0:
        return
    c = exterior(F)
    assert weak_proper_cy_check(c, {("eps",): F(a)}, 1).verdict == PASS


def test_weak_proper_degree_check():
    with pytest.raises(DegreeMismatch):
        weak_proper_cy_check(exterior(Q), {("1",): 1}, 1)


def test_quiver_trace():
    q = quiver(Q)
    assert weak_proper_cy_check(q, {("eA",): 1, ("eB",): 1}, 0)
    assert strong_proper_cy_check(q, TraceData({0: {("eA",): 1, ("eB",): 1}}, 0), 3)


def test_strong_proper_on_exterior():
    v = strong_proper_cy_check(exterior(Q), TraceData({0: {("eps",): 1}}, 1), 4)
    assert v.verdict == PASS and v.details["chain_map"] and v.details["residual_count"] == 0
    zero = strong_proper_cy_check(exterior(Q), TraceData({}, 1), 4)
    assert zero.verdict == FAIL and zero.details["chain_map"]


def test_corrupted_first_trace_term_fails():
    c = exterior(Q, n=3)
    good = TraceData({0: {("eps",): 1}}, 3)
    assert strong_proper_cy_check(c, good, 4)
    bad = TraceData({0: {("eps",): 1}, 1: {(HAT, ("1", "eps", "eps", "eps")): 1}}, 3)
    v = strong_proper_cy_check(c, bad, 4)
    assert v.verdict == FAIL and not v.details["chain_map"]
    assert v.details["weak"] == PASS
    assert {r["u_power"] for r in v.witness["residuals"]} <= {1, 2}


def test_trace_outside_truncation():
    c = exterior(Q, n=3)
    with pytest.raises(ValueError):
        strong_proper_cy_check(c, TraceData({0: {("eps",): 1}, 2: {("eps",) * 6: 1}}, 3), 3)


# -- smooth ---------------------------------------------------------------------------

def test_weak_smooth_on_ground_field():
    g = ground_field(Q)
    v = weak_smooth_cy_check(g, {("1",): 1}, 4, (-2, 2))
    assert v.verdict == PASS and v.details["n"] == 0 and v.details["smoothness"] == "assumed"
    assert v.details["pairs"][("X", "X")][0] == {"HH": 1, "hom": 1, "rank": 1, "iso": True}
    z = weak_smooth_cy_check(g, {}, 4, (-2, 2))
    assert z.verdict == FAIL and z.witness["degree"] == 0


def test_weak_smooth_input_errors():
    c = dual_numbers(Q)
    with pytest.raises(NotACycle):
        weak_smooth_cy_check(c, {("1", "x", "x"): 1}, 3, (0, 2))
    with pytest.raises(DegreeMismatch):
        weak_smooth_cy_check(exterior(Q), {("eps",): 1, ("1",): 1}, 3, (0, 2))
    with pytest.raises(ValueError):
        weak_smooth_cy_check(exterior(Q), {(HAT, ("eps",)): 1}, 3, (0, 2))


def _lift(F):
    return CotraceData({0: {(CHECK, ("eps", "1")): 1},
                        1: {(HAT, ("1", "1", "eps")): 1, (HAT, ("eps", "1", "1")): 1,
                            (HAT, ("1", "eps", "1")): -1}}, 0)


def test_designed_lift_is_chain_level(F):
    c = exterior(F, unital=False)
    v = smooth_cy_lift_check(c, _lift(F), 3, (-2, 2))
    assert v.details["chain_level"]
    # the exterior algebra is not smooth, so the weak part is expected to fail
    assert v.verdict == FAIL and v.details["weak"]["n"] == 0


def test_broken_lift_fails_at_chain_level():
    c = exterior(Q, unital=False)
    st_ = _lift(Q)
    st_.terms[1][(HAT, ("1", "eps", "1"))] = 1
    v = smooth_cy_lift_check(c, st_, 3, (-2, 2))
    assert v.verdict == FAIL and not v.details["chain_level"] and v.witness["residuals"]
    with pytest.raises(DegreeMismatch):
        smooth_cy_lift_check(c, CotraceData({0: {("eps",): 1}}, 0), 3, (-2, 2))
