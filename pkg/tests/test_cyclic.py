import random

import pytest
from hypothesis import given, settings, strategies as st

from equicyclic.ainfty import AInfCategory
from equicyclic.core import Q, Z2, field
from equicyclic.cyclic import (DEGENERATE, NOT_DEGENERATE, degeneration_check, hc, hochschild_s1,
                               nchdr_pages, weight_grading)
from equicyclic.equivariant import gysin_les
from equicyclic.errors import TruncationTooSmall, UnboundedInput
from equicyclic.fixtures import dual_numbers, exterior, ground_field, quiver
from equicyclic.s1mod import S1Complex, free_rank_one, point, random_strict_mixed, trivialize


def test_dual_numbers_hh_and_orbits():
    c = dual_numbers(Q)
    hh7, hh8 = hc(c, "hh", 7, (0, 6)), hc(c, "hh", 8, (0, 6))
    assert hh7.dims == hh8.dims == {d: 1 for d in range(7)}
    o7, o8 = hc(c, "orbits", 7, (0, 6)), hc(c, "orbits", 8, (0, 6))
    assert o7.dims == o8.dims == {d: int(d % 2 == 0) for d in range(7)}
    assert hh7.certified and o7.certified and o7.notes["stable"]


def test_dual_numbers_connes_sequence_is_exact():
    M, _, _ = hochschild_s1(dual_numbers(Q), 8, (-2, 8))
    assert gysin_les(M, (0, 6))


def test_exterior_is_never_certified():
    r = hc(exterior(Q), "orbits", 4, (0, 4))
    assert not r.certified
    assert r.notes["stability"] in ("stable at (4, 5)", "unstable at (4, 5)")
    with pytest.raises(TruncationTooSmall):
        hc(exterior(Q), "hh", 4, (0, 4), require_certified=True)


def test_ground_field_flavors():
    g = ground_field(Q)
    w = (-6, 6)
    assert hc(g, "hh", 4, w).dims == {d: int(d == 0) for d in range(-6, 7)}
    assert hc(g, "orbits", 4, w).dims == {d: int(d <= 0 and d % 2 == 0) for d in range(-6, 7)}
    assert hc(g, "fixed", 4, w).dims == {d: int(d >= 0 and d % 2 == 0) for d in range(-6, 7)}
    assert hc(g, "tate", 4, w).dims == {d: int(d % 2 == 0) for d in range(-6, 7)}


def test_zero_category():
    z = AInfCategory([], [], {}, Q)
    r = hc(z, "orbits", 3, (-2, 2))
    assert r.certified and not any(r.dims.values())


def test_weight_grading():
    assert weight_grading(dual_numbers(Q)) == {"1": 0, "x": 2}
    # eps has weight 1 but degree-one letters never leave a finite truncation
    assert weight_grading(exterior(Q)) == {"1": 0, "eps": 1}
    assert weight_grading(quiver(Q)) is None


def test_unknown_flavor():
    with pytest.raises(ValueError):
        hc(ground_field(Q), "cyclic", 2, (0, 2))


def test_degeneration_examples(F):
    xy = free_rank_one(F)
    triv = degeneration_check(trivialize(xy.underlying()))
    assert triv.verdict == DEGENERATE and triv.pages_agree and triv.witness_page is None
    rep = degeneration_check(xy)
    assert rep.verdict == NOT_DEGENERATE and rep.pages_agree and rep.witness_page == 1
    assert rep.first_failure is not None


def test_ground_field_mixed_complex_degenerates():
    M, _, _ = hochschild_s1(ground_field(Q), 4, (-6, 2))
    rep = degeneration_check(M, (-6, 0))
    assert rep.degenerate and rep.pages_agree


def test_pages_shrink_and_start_at_homology():
    M = random_strict_mixed(Q, random.Random(2), 6, 6)
    pages = nchdr_pages(M)
    sizes = [sum(p.entries.values()) for p in pages]
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))
    assert not pages[-1].differential_ranks


def test_z2_complexes_are_rejected():
    z2 = S1Complex.from_matrices([("a", 0)], {}, Q, Z2)
    with pytest.raises(UnboundedInput):
        nchdr_pages(z2)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([0, 2, 3]), st.integers(0, 10 ** 6))
def test_two_degeneration_criteria_agree(p, seed):
    rng = random.Random(seed)
    M = random_strict_mixed(field(p), rng, 6, 6)
    rep = degeneration_check(M)
    assert rep.pages_agree
    triv = degeneration_check(trivialize(M.underlying()))
    assert triv.degenerate and triv.pages_agree


def test_point_is_degenerate():
    assert degeneration_check(point(Q)).degenerate


def test_dual_numbers_negative_cyclic_stabilizes():
    r = hc(dual_numbers(Q), "fixed", 6, (0, 6))
    assert r.notes["stability"] == "stable at (6, 7)"
    assert r.dims == {d: 1 for d in range(7)}
    # the length bound for a certificate on [0, 6] is 7
    assert not r.certified and hc(dual_numbers(Q), "fixed", 7, (0, 6)).certified
