import pytest
from hypothesis import given, settings, strategies as st

from equicyclic.ainfty import (AInfCategory, AInfFunctor, Generator, augment_units, check_ainfty,
                               check_functor, check_strict_units, gauge_transport, strip_units)
from equicyclic.core import Q, Z2, field
from equicyclic.fixtures import (a_p, dual_numbers, exterior, ground_field,
                                 quiver, quiver_collapse, quiver_scaling)


def all_fixtures(F):
    return [ground_field(F), exterior(F), exterior(F, n=3), dual_numbers(F), quiver(F),
            quiver(F, unital=False), exterior(F, mode=Z2)]


def test_fixtures_pass(F):
    for c in all_fixtures(F):
        assert check_ainfty(c).ok, c.name
        if c.units:
            assert check_strict_units(c).ok, c.name


@pytest.mark.parametrize("p", [3, 5])
def test_a_p_passes_mod_p_and_fails_over_Q(p):
    assert check_ainfty(a_p(p)).ok
    rep = check_ainfty(a_p(p, Q))
    assert not rep.ok
    bad = rep.first
    assert bad["inputs"] == ["x"] * (2 * p - 1)
    assert bad["residual"] == {"w": p}


def test_degree_rule_is_enforced():
    gens = [Generator("x", "X", "X", 1)]
    with pytest.raises(Exception):
        AInfCategory(["X"], gens, {("x", "x"): {"x": 1}}, Q)


def test_composability_is_enforced():
    gens = [Generator("a", "A", "B", 0), Generator("b", "A", "B", 0)]
    with pytest.raises(Exception):
        AInfCategory(["A", "B"], gens, {("a", "b"): {"a": 1}}, Q)


def test_corrupted_unit_is_reported():
    c = exterior(Q)
    bad = c.replace(mu={**c.mu, ("1", "eps", "eps"): {"eps": 1}})
    rep = check_strict_units(bad)
    assert not rep.ok
    assert rep.first["inputs"] == ["1", "eps", "eps"]


def test_augment_units_dimensions():
    c = strip_units(exterior(Q))
    assert set(c.gens) == {"eps"}
    cp = augment_units(c)
    assert len(cp.hom("X", "X")) == 2 and check_strict_units(cp).ok
    # a non-unital copy keeping the old unit as a plain generator gets a third one
    c3 = augment_units(exterior(Q, unital=False))
    assert len(c3.hom("X", "X")) == 3
    assert check_ainfty(c3).ok
    g = augment_units(strip_units(ground_field(Q)))
    assert len(g.gens) == 1


def test_augment_units_idempotent_up_to_renaming():
    for c in (strip_units(exterior(Q)), strip_units(quiver(Q)), strip_units(a_p(3))):
        once = augment_units(c)
        twice = augment_units(strip_units(once))
        for x in c.objects:
            for y in c.objects:
                assert len(once.hom(x, y)) == len(twice.hom(x, y))


def test_augmented_a_p_passes():
    assert check_ainfty(augment_units(strip_units(a_p(3)))).ok


def test_mod_p_reduction_of_reports():
    for c in (exterior(Q), dual_numbers(Q), a_p(3, Q), a_p(5, Q)):
        for p in (2, 3, 5):
            red = c.with_field(field(p))
            expected = all(all(field(p)(v) == 0 for v in f["residual"].values())
                           for f in check_ainfty(c, max_failures=10 ** 6).failures)
            assert check_ainfty(red).ok == expected


def _compose(c, a2, a1):
    """a2 . a1 = (-1)^{|a1|} mu^2(a2, a1) on sparse vectors."""
    F = c.field
    out = {}
    for x2, v2 in a2.items():
        for x1, v1 in a1.items():
            for y, w in c.mu.get((x2, x1), {}).items():
                out[y] = F.reduce(out.get(y, 0) + F.sign(c.deg(x1)) * v2 * v1 * w)
    return {k: v for k, v in out.items() if v != 0}


def test_quadratic_relation_is_twisted_associativity():
    g = [Generator("x", "X", "X", 2), Generator("y", "X", "X", 3), Generator("z", "X", "X", 4),
         Generator("v", "X", "X", 5)]
    plain = AInfCategory(["X"], g, {("x", "x"): {"z": 1}, ("x", "y"): {"v": 1},
                                    ("y", "x"): {"v": -1}}, Q)
    for c in (ground_field(Q), exterior(Q), dual_numbers(Q), quiver(Q), plain):
        assert check_ainfty(c).ok
        for w in c.composable_words(3):
            a3, a2, a1 = ({x: c.field.one} for x in w)
            assert _compose(c, _compose(c, a3, a2), a1) == _compose(c, a3, _compose(c, a2, a1))


def test_functor_checks(gauge):
    c = a_p(3)
    assert check_functor(AInfFunctor.identity(c)).ok
    scale = AInfFunctor(c, c, {"X": "X"}, {("1",): {"1": 1}, ("x",): {"x": 2}, ("z",): {"z": 1},
                                           ("w",): {"w": 1}})
    assert not check_functor(scale).ok
    assert check_functor(quiver_scaling(Q)).ok
    assert check_functor(quiver_collapse(Q)).ok
    for f in gauge:
        assert check_functor(f).ok
        assert any(len(k) >= 2 for k in f.terms)


@settings(max_examples=15, deadline=None)
@given(st.integers(-3, 3).filter(bool), st.integers(-3, 3), st.integers(-3, 3))
def test_gauge_transport_always_valid(a, b, c2):
    g = [Generator("x", "X", "X", 2), Generator("y", "X", "X", 3), Generator("z", "X", "X", 4),
         Generator("v", "X", "X", 5)]
    base = AInfCategory(["X"], g, {("x", "x"): {"z": a}, ("x", "y"): {"v": 1},
                                   ("y", "x"): {"v": -1}}, Q)
    assert check_ainfty(base).ok
    new, f = gauge_transport(base, {("x", "x"): {"y": b}, ("x", "z"): {"v": c2}}, 6)
    assert check_ainfty(new).ok
    assert check_functor(f).ok
