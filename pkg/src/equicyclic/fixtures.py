"""Shipped fixture categories."""
from __future__ import annotations

from .ainfty import AInfCategory, AInfFunctor, Generator
from .core import Q, Field, Z, Z2


def _unital_mu(gens, units, F):
    mu = {}
    for g in gens:
        mu[(units[g.target], g.label)] = {g.label: F.sign(g.degree)}
        mu[(g.label, units[g.source])] = {g.label: F.one}
    return mu


def ground_field(F: Field = Q, unital: bool = True) -> AInfCategory:
    """One object with hom = k.1 in degree 0 and mu^2(1,1) = 1."""
    gens = [Generator("1", "X", "X", 0)]
    return AInfCategory(["X"], gens, {("1", "1"): {"1": 1}}, F, Z,
                        {"X": "1"} if unital else None, "ground_field")


def exterior(F: Field = Q, n: int = 1, unital: bool = True, mode: str = Z) -> AInfCategory:
    """Lambda(eps) with |eps| = n odd.

    ``unital=False`` keeps the same algebra but drops the unit designation, so
    Hochschild invariants use the nu-model instead of the reduced one.
    """
    if n % 2 == 0:
        raise ValueError("exterior fixture needs |eps| odd")
    gens = [Generator("1", "X", "X", 0), Generator("eps", "X", "X", n)]
    mu = _unital_mu(gens, {"X": "1"}, F)
    return AInfCategory(["X"], gens, mu, F, mode, {"X": "1"} if unital else None, "exterior")


def dual_numbers(F: Field = Q, deg: int = 2, unital: bool = True) -> AInfCategory:
    """k[x]/x^2 with |x| = deg (even); ``unital=False`` as for :func:`exterior`."""
    gens = [Generator("1", "X", "X", 0), Generator("x", "X", "X", deg)]
    mu = _unital_mu(gens, {"X": "1"}, F)
    return AInfCategory(["X"], gens, mu, F, Z, {"X": "1"} if unital else None, "dual_numbers")


def a_p(p: int, F: Field | None = None, unital: bool = True) -> AInfCategory:
    """Generators 1, x, z, w of degrees 0, 1, 2, 3.

    mu^p(x, ..., x) = z and mu^p(..., z, ...) = w for z in any slot among
    p - 1 copies of x.  The relations hold exactly in characteristic p; over Q
    the arity 2p - 1 relation on (x, ..., x) leaves the residue p*w.
    """
    if p < 3:
        raise ValueError("A_p fixture needs p >= 3")
    F = F if F is not None else Field(p)
    gens = [Generator("x", "X", "X", 1), Generator("z", "X", "X", 2),
            Generator("w", "X", "X", 3)]
    mu = {("x",) * p: {"z": 1}}
    for i in range(p):
        word = ["x"] * p
        word[i] = "z"
        mu[tuple(word)] = {"w": 1}
    units = None
    if unital:
        gens = [Generator("1", "X", "X", 0)] + gens
        units = {"X": "1"}
        mu.update(_unital_mu(gens, units, F))
    return AInfCategory(["X"], gens, mu, F, Z, units, f"A_{p}")


def quiver(F: Field = Q, arrow_degree: int = 0, unital: bool = True) -> AInfCategory:
    """Two objects A, B and one arrow a: A -> B."""
    gens = [Generator("a", "A", "B", arrow_degree)]
    units = None
    mu = {}
    if unital:
        gens = [Generator("eA", "A", "A", 0), Generator("eB", "B", "B", 0)] + gens
        units = {"A": "eA", "B": "eB"}
        mu = _unital_mu(gens, units, F)
    return AInfCategory(["A", "B"], gens, mu, F, Z, units, "quiver")


def quiver_scaling(F: Field = Q, factor=2) -> AInfFunctor:
    """Strict endofunctor of the unital quiver: a -> factor*a, units fixed."""
    c = quiver(F)
    return AInfFunctor(c, c, {"A": "A", "B": "B"},
                       {("eA",): {"eA": 1}, ("eB",): {"eB": 1}, ("a",): {"a": factor}},
                       "quiver_scaling")


def quiver_collapse(F: Field = Q) -> AInfFunctor:
    """Strict functor from the unital quiver (|a| = 0) to the ground field, a -> 1."""
    return AInfFunctor(quiver(F), ground_field(F), {"A": "X", "B": "X"},
                       {("eA",): {"1": 1}, ("eB",): {"1": 1}, ("a",): {"1": 1}},
                       "quiver_collapse")


CATEGORY_FIXTURES = {
    "ground_field": ground_field,
    "exterior": exterior,
    "dual_numbers": dual_numbers,
    "quiver": quiver,
}


def gauge_functors(F: Field = Q) -> list[AInfFunctor]:
    """Two non-strict functors (F^2, F^3 nonzero) obtained by gauge transport.

    Both categories have one object and positive reduced degrees, so the
    transported structures have bounded arity.
    """
    from .ainfty import gauge_transport
    g1 = [Generator("x", "X", "X", 2), Generator("y", "X", "X", 3),
          Generator("z", "X", "X", 4), Generator("v", "X", "X", 5)]
    c1 = AInfCategory(["X"], g1, {("x", "x"): {"z": 1}, ("x", "y"): {"v": 1},
                                  ("y", "x"): {"v": -1}}, F, Z, None, "gauge1")
    _, f1 = gauge_transport(c1, {("x", "x"): {"y": 1}, ("x", "y"): {"z": 1}, ("y", "x"): {"z": 3},
                                 ("x", "z"): {"v": 2}, ("x", "x", "x"): {"z": 5}}, 6)
    g2 = [Generator("x", "X", "X", 3), Generator("a", "X", "X", 2), Generator("y", "X", "X", 5),
          Generator("z", "X", "X", 6), Generator("q", "X", "X", 4)]
    c2 = AInfCategory(["X"], g2, {("x", "x"): {"z": 1}, ("a", "a"): {"q": 1}}, F, Z, None, "gauge2")
    _, f2 = gauge_transport(c2, {("x", "x"): {"y": 1}, ("x", "a"): {"q": 1}, ("a", "x"): {"q": 2},
                                 ("a", "q"): {"y": 1}, ("a", "a", "a"): {"q": 1}}, 7)
    return [f1, f2]
