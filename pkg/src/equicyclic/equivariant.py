"""Homotopy orbits, homotopy fixed points and Tate complexes of S^1-complexes.

Elements are finite u-series sum m_i u^i with |u| = 2 and differential
delta_eq = sum_k delta_k u^k.  Orbits keep i <= 0 (quotient by u M[[u]]),
fixed points keep i >= 0, Tate keeps all i.  For a bounded base each degree
is finite-dimensional, so everything below is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import (GradedVectorSpace, SparseLinearMap, TruncatedComplex, homology_groups,
                   solve_inhomogeneous, Obstruction, rank)
from .errors import NotAChainMap, UnboundedInput, WindowTooSmall
from .s1mod import S1Complex, S1Morphism

__all__ = ["ORBITS", "FIXED", "TATE", "FLAVORS", "EquivariantComplex", "equivariant_complex",
           "orbits", "fixed", "tate", "pr_map", "iota_map", "splitting_map", "induced_map",
           "induced_on_homology", "matrix_rank", "ExactnessReport", "gysin_les", "norm_les"]

ORBITS, FIXED, TATE = "orbits", "fixed", "tate"
FLAVORS = (ORBITS, FIXED, TATE)


def _allowed(flavor: str, i: int) -> bool:
    return (flavor == TATE) or (flavor == ORBITS and i <= 0) or (flavor == FIXED and i >= 0)


@dataclass
class EquivariantComplex:
    flavor: str
    base: S1Complex
    window: tuple
    complex: TruncatedComplex
    u_range: dict = field(default_factory=dict)

    @property
    def space(self):
        return self.complex.space

    @property
    def differential(self):
        return self.complex.differential

    def homology(self, window=None):
        return self.complex.homology(window or self.window)

    def homology_dims(self, window=None):
        return self.complex.homology_dims(window or self.window)


def _basis(M: S1Complex, flavor: str, lo: int, hi: int):
    """Basis (label, i) with degree |m| + 2i in [lo, hi]."""
    out = []
    for deg in range(lo, hi + 1):
        for m in M.space.labels:
            dm = M.space.degree(m)
            if (deg - dm) % 2:
                continue
            i = (deg - dm) // 2
            if _allowed(flavor, i):
                out.append(((m, i), deg))
    return out


def equivariant_complex(M: S1Complex, flavor: str, window) -> EquivariantComplex:
    """The flavored complex in degrees window[0]-1 .. window[1]+1."""
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    M.bounds()  # raises UnboundedInput in Z/2 mode
    a, b = window
    if b < a:
        raise WindowTooSmall("empty window")
    F = M.field
    space = GradedVectorSpace(_basis(M, flavor, a - 1, b + 1))
    cols = {}
    for (m, i) in space.labels:
        col: dict = {}
        for k, dk in enumerate(M.deltas):
            for m2, c in dk.col(m).items():
                key = (m2, i + k)
                if key in space:
                    col[key] = F.reduce(col.get(key, 0) + c)
        col = {k: v for k, v in col.items() if v != 0}
        if col:
            cols[(m, i)] = col
    d = SparseLinearMap(space, space, 1, cols, F)
    cx = TruncatedComplex(space, d, {"window": (a, b)}, True, {"flavor": flavor})
    us = [i for (_, i) in space.labels]
    return EquivariantComplex(flavor, M, (a, b), cx,
                              {"min": min(us, default=0), "max": max(us, default=0)})


def orbits(M: S1Complex, window) -> EquivariantComplex:
    return equivariant_complex(M, ORBITS, window)


def fixed(M: S1Complex, window) -> EquivariantComplex:
    return equivariant_complex(M, FIXED, window)


def tate(M: S1Complex, window) -> EquivariantComplex:
    return equivariant_complex(M, TATE, window)


def _base_complex(M: S1Complex, window) -> TruncatedComplex:
    a, b = window
    labs = [l for l in M.space.labels if a - 1 <= M.space.degree(l) <= b + 1]
    sp = GradedVectorSpace([(l, M.space.degree(l)) for l in labs], M.mode)
    return TruncatedComplex(sp, M.delta(0).restrict(sp, sp), {"window": (a, b)}, True, {})


def _is_chain_map(f: SparseLinearMap, ds: TruncatedComplex, dt: TruncatedComplex, sign=1) -> bool:
    """f d = sign * d f on the columns whose images stay inside the truncations."""
    F = f.field
    lhs = f @ ds.differential
    rhs = (dt.differential @ f).scale(F(sign))
    inner = [l for l in ds.space.labels if ds.space.degree(l) < max(ds.space.degrees(), default=0)]
    for l in inner:
        if lhs.col(l) != rhs.col(l):
            return False
    return True


def pr_map(M: S1Complex, window):
    """alpha -> alpha u^0 from M to its orbits."""
    src = _base_complex(M, window)
    tgt = orbits(M, window)
    F = M.field
    cols = {l: {(l, 0): F.one} for l in src.space.labels if (l, 0) in tgt.space}
    f = SparseLinearMap(src.space, tgt.space, 0, cols, F)
    if not _is_chain_map(f, src, tgt.complex):
        raise NotAChainMap("pr is not a chain map")
    return f, src, tgt


def iota_map(M: S1Complex, window):
    """sum alpha_i u^i -> alpha_0 from fixed points to M."""
    src = fixed(M, window)
    tgt = _base_complex(M, window)
    F = M.field
    cols = {(m, i): {m: F.one} for (m, i) in src.space.labels if i == 0 and m in tgt.space}
    f = SparseLinearMap(src.space, tgt.space, 0, cols, F)
    if not _is_chain_map(f, src.complex, tgt):
        raise NotAChainMap("iota is not a chain map")
    return f, src, tgt


def splitting_map(M: S1Complex, window):
    """alpha -> alpha u^0 into the fixed points (a chain map only for trivial M)."""
    src = _base_complex(M, window)
    tgt = fixed(M, window)
    F = M.field
    cols = {l: {(l, 0): F.one} for l in src.space.labels if (l, 0) in tgt.space}
    return SparseLinearMap(src.space, tgt.space, 0, cols, F), src, tgt


def induced_map(f: S1Morphism, flavor: str, window):
    """u-linear extension of sum_j F^j u^j between flavored complexes.

    Returns (map, source complex, target complex).  With dF = 0 the map
    satisfies F_eq delta_eq = (-1)^{deg F} delta_eq F_eq.
    """
    a, b = window
    src = equivariant_complex(f.source, flavor, window)
    tgt = equivariant_complex(f.target, flavor, (a + f.degree, b + f.degree))
    F = f.field
    cols = {}
    for (m, i) in src.space.labels:
        col: dict = {}
        for j, t in enumerate(f.terms):
            for m2, c in t.col(m).items():
                key = (m2, i + j)
                if key in tgt.space:
                    col[key] = F.reduce(col.get(key, 0) + c)
        col = {k: v for k, v in col.items() if v != 0}
        if col:
            cols[(m, i)] = col
    g = SparseLinearMap(src.space, tgt.space, f.degree, cols, F, check=False)
    return g, src, tgt


def induced_on_homology(g: SparseLinearMap, src_groups: dict, tgt_groups: dict, degree: int,
                        shift: int = 0) -> list[list]:
    """Matrix of g on homology bases in one degree (rows: target classes)."""
    hs = src_groups.get(degree)
    ht = tgt_groups.get(degree + shift)
    if hs is None or ht is None:
        return []
    cols = []
    for rep in hs.representatives:
        img = g.apply(rep)
        cols.append(ht.coordinates(img) if ht.dim else [])
    return [[cols[j][i] for j in range(len(cols))] for i in range(ht.dim)]


def matrix_rank(mat: list[list], F) -> int:
    if not mat or not mat[0]:
        return 0
    rows = [dict((j, F(v)) for j, v in enumerate(r) if v != 0) for r in mat]
    rows = [r for r in rows if r]
    if not rows:
        return 0
    n = len(mat[0])
    src = GradedVectorSpace([(i, 0) for i in range(len(mat))])
    tgt = GradedVectorSpace([(j, 0) for j in range(n)])
    cols = {i: {j: F(v) for j, v in enumerate(r) if v != 0} for i, r in enumerate(mat)}
    return rank(SparseLinearMap(src, tgt, 0, cols, F, check=False))


# -- long exact sequences ----------------------------------------------------------------

@dataclass
class ExactnessReport:
    name: str
    slots: list
    ok: bool

    def __bool__(self):
        return self.ok

    def interior(self):
        return [s for s in self.slots if s["verdict"] != "untested"]


def _les(name, A: TruncatedComplex, B: TruncatedComplex, C: TruncatedComplex,
         i_map: SparseLinearMap, p_map: SparseLinearMap, shift: int, window) -> ExactnessReport:
    """LES of 0 -> A -> B -> C[shift] -> 0 over degrees k in the window.

    Slots, for each k: H^k(A) -i-> H^k(B) -p-> H^{k+shift}(C) -conn-> H^{k+1}(A).
    """
    a, b = window
    F = A.field
    ks = list(range(a, b + 1))
    HA = homology_groups(A.space, A.differential, list(range(a, b + 2)))
    HB = homology_groups(B.space, B.differential, ks)
    HC = homology_groups(C.space, C.differential, [k + shift for k in ks])
    mats = {}
    for k in ks:
        mats[("i", k)] = induced_on_homology(i_map, HA, HB, k)
        mats[("p", k)] = induced_on_homology(p_map, HB, HC, k, shift)
        mats[("c", k)] = _connecting(HC[k + shift], HA[k + 1], B, i_map, p_map, F)
    slots = []

    def check(label, dim, m_in, m_out, tested):
        if not tested:
            slots.append({"slot": label, "dim": dim, "verdict": "untested"})
            return True
        r_in, r_out = matrix_rank(m_in, F), matrix_rank(m_out, F)
        comp_zero = _composite_zero(m_out, m_in, F)
        ok = comp_zero and r_in + r_out == dim
        slots.append({"slot": label, "dim": dim, "rank_in": r_in, "rank_out": r_out,
                      "verdict": "PASS" if ok else "FAIL"})
        return ok

    ok = True
    for k in ks:
        ok &= check(f"A[{k}]", HA[k].dim, mats.get(("c", k - 1)), mats[("i", k)], ("c", k - 1) in mats)
        ok &= check(f"B[{k}]", HB[k].dim, mats[("i", k)], mats[("p", k)], True)
        ok &= check(f"C[{k + shift}]", HC[k + shift].dim, mats[("p", k)], mats[("c", k)], True)
    return ExactnessReport(name, slots, ok)


def _composite_zero(m2, m1, F) -> bool:
    if not m1 or not m2 or not m1[0] or not m2[0]:
        return True
    n, k, m = len(m2), len(m1), len(m1[0])
    for r in range(n):
        for c in range(m):
            s = sum(F(m2[r][j]) * F(m1[j][c]) for j in range(k))
            if F.reduce(s) != 0:
                return False
    return True


def _connecting(hc, ha, B: TruncatedComplex, i_map, p_map, F) -> list[list]:
    """[z] -> [x] with i(x) = d(y), p(y) = z."""
    cols = []
    for z in hc.representatives:
        y = solve_inhomogeneous(p_map, z)
        if isinstance(y, Obstruction):
            raise ValueError("quotient map is not surjective on the truncation")
        dy = B.differential.apply(y)
        x = solve_inhomogeneous(i_map, dy)
        if isinstance(x, Obstruction):
            raise ValueError("d(lift) does not come from the subcomplex")
        cols.append(ha.coordinates(x) if ha.dim else [])
    return [[cols[j][i] for j in range(len(cols))] for i in range(ha.dim)]


def gysin_les(M: S1Complex, window) -> ExactnessReport:
    """0 -> M -pr-> orbits(M) -u-> orbits(M)[2] -> 0."""
    a, b = window
    if b < a:
        raise WindowTooSmall("empty window")
    F = M.field
    A = _base_complex(M, (a, b + 1))
    O = orbits(M, (a - 2, b + 3))
    i_map = SparseLinearMap(A.space, O.space, 0,
                            {l: {(l, 0): F.one} for l in A.space.labels if (l, 0) in O.space}, F)
    cols = {(m, i): {(m, i + 1): F.one} for (m, i) in O.space.labels if i < 0}
    p_map = SparseLinearMap(O.space, O.space, 2, cols, F)
    return _les("gysin", A, O.complex, O.complex, i_map, p_map, 2, window)


def norm_les(M: S1Complex, window) -> ExactnessReport:
    """0 -> fixed(M) -> tate(M) -> orbits(M)[2] -> 0."""
    a, b = window
    if b < a:
        raise WindowTooSmall("empty window")
    F = M.field
    Fx = fixed(M, (a - 1, b + 2))
    T = tate(M, (a - 1, b + 2))
    O = orbits(M, (a + 1, b + 4))
    i_map = SparseLinearMap(Fx.space, T.space, 0,
                            {l: {l: F.one} for l in Fx.space.labels if l in T.space}, F)
    cols = {(m, i): {(m, i + 1): F.one} for (m, i) in T.space.labels
            if i < 0 and (m, i + 1) in O.space}
    p_map = SparseLinearMap(T.space, O.space, 2, cols, F)
    return _les("norm", Fx.complex, T.complex, O.complex, i_map, p_map, 2, window)
