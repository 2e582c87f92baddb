"""S^1-complexes (A-infinity modules over k[Lambda]/Lambda^2) and their morphisms.

An S^1-complex is a bounded graded space with operators ``delta_k`` of degree
``1 - 2k`` satisfying ``sum_{i+j=s} delta_i delta_j = 0`` for every s.  A
pre-morphism of degree k is a list ``F^0, F^1, ...`` with ``deg F^j = k - 2j``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ainfty import ValidationReport
from .core import (Field, GradedVectorSpace, HomologyGroup, Obstruction, SparseLinearMap,
                   TruncatedComplex, Z, Z2, homology_groups, solve_inhomogeneous, vec_add,
                   window_degrees)
from .errors import DimensionMismatch, NotAChainMap, UnboundedInput

__all__ = ["S1Complex", "validate_s1", "trivialize", "from_chain_complex", "S1Morphism",
           "premorphism_differential", "compose", "is_closed", "random_premorphism",
           "rhom_complex", "element_of_rhom", "rhom_class_of", "tensor_derived",
           "tensor_pushforward_right", "tensor_pushforward_left", "rhom_precompose",
           "rhom_postcompose", "diagonal_tensor", "ObstructionReport", "hom_complex",
           "find_enhancement", "point", "zero_complex", "free_rank_one", "designed_obstruction",
           "random_strict_mixed"]


class S1Complex:
    """Graded space with operators delta_0, ..., delta_K."""

    def __init__(self, space: GradedVectorSpace, deltas: Sequence[SparseLinearMap], F: Field,
                 name: str = ""):
        self.space = space
        self.field = F
        self.name = name
        ds = []
        for k, d in enumerate(deltas):
            if not (d.source.same_basis(space) and d.target.same_basis(space)):
                raise DimensionMismatch(f"delta_{k} is not an endomorphism of the space")
            if d.degree != space.norm(1 - 2 * k):
                raise ValueError(f"delta_{k} must have degree {1 - 2 * k}")
            ds.append(d)
        if not ds:
            ds = [SparseLinearMap.zero(space, space, 1, F)]
        while len(ds) > 1 and ds[-1].is_zero():
            ds.pop()
        self.deltas = ds

    def __repr__(self) -> str:
        return f"S1Complex({self.name or '?'}, dim={self.space.dim}, K={self.K})"

    @property
    def K(self) -> int:
        return len(self.deltas) - 1

    @property
    def mode(self) -> str:
        return self.space.mode

    def delta(self, k: int) -> SparseLinearMap:
        if 0 <= k < len(self.deltas):
            return self.deltas[k]
        return SparseLinearMap.zero(self.space, self.space, 1 - 2 * k, self.field)

    def bounds(self):
        if self.mode == Z2:
            raise UnboundedInput("Z/2-graded S^1-complexes have unbounded u-series")
        return self.space.bounds()

    def underlying(self) -> TruncatedComplex:
        return TruncatedComplex(self.space, self.deltas[0])

    @classmethod
    def from_matrices(cls, basis, deltas: dict, F: Field, mode: str = Z, name: str = ""):
        """``deltas`` maps k to ``{source_label: {target_label: value}}``."""
        space = GradedVectorSpace(basis, mode)
        K = max(deltas, default=0)
        maps = []
        for k in range(K + 1):
            cols = {s: {t: F(v) for t, v in col.items()} for s, col in deltas.get(k, {}).items()}
            maps.append(SparseLinearMap(space, space, 1 - 2 * k, cols, F))
        return cls(space, maps, F, name)


def validate_s1(m: S1Complex) -> ValidationReport:
    rep = ValidationReport("s1", True)
    for s in range(2 * m.K + 1):
        acc = SparseLinearMap.zero(m.space, m.space, 2 - 2 * s, m.field)
        for i in range(s + 1):
            acc = acc + m.delta(i) @ m.delta(s - i)
        rep.checked += 1
        if not acc.is_zero():
            rep.ok = False
            rep.failures.append({"s": s, "residual": acc.entries()})
            break
    return rep


def trivialize(c: TruncatedComplex, name: str = "") -> S1Complex:
    return S1Complex(c.space, [c.differential], c.field, name or "trivial")


def from_chain_complex(basis, d: dict, F: Field, mode: str = Z, name: str = "") -> S1Complex:
    return S1Complex.from_matrices(basis, {0: d}, F, mode, name)


# -- morphisms -------------------------------------------------------------------

@dataclass
class S1Morphism:
    source: S1Complex
    target: S1Complex
    degree: int
    terms: list = field(default_factory=list)

    def __post_init__(self):
        for j, t in enumerate(self.terms):
            if not (t.source.same_basis(self.source.space) and t.target.same_basis(self.target.space)):
                raise DimensionMismatch(f"F^{j} has the wrong source or target")
            if t.degree != self.target.space.norm(self.degree - 2 * j):
                raise ValueError(f"F^{j} must have degree {self.degree - 2 * j}")

    @property
    def field(self):
        return self.source.field

    def term(self, j: int) -> SparseLinearMap:
        if 0 <= j < len(self.terms):
            return self.terms[j]
        return SparseLinearMap.zero(self.source.space, self.target.space, self.degree - 2 * j,
                                    self.field)

    @property
    def J(self) -> int:
        return len(self.terms) - 1

    def trimmed(self) -> "S1Morphism":
        terms = list(self.terms)
        while terms and terms[-1].is_zero():
            terms.pop()
        return S1Morphism(self.source, self.target, self.degree, terms)

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.terms)

    def equals(self, other: "S1Morphism") -> bool:
        n = max(len(self.terms), len(other.terms))
        return all(self.term(j).equals(other.term(j)) for j in range(n))

    def __add__(self, other):
        n = max(len(self.terms), len(other.terms))
        return S1Morphism(self.source, self.target, self.degree,
                          [self.term(j) + other.term(j) for j in range(n)])

    def scale(self, c):
        return S1Morphism(self.source, self.target, self.degree, [t.scale(c) for t in self.terms])

    @classmethod
    def identity(cls, m: S1Complex) -> "S1Morphism":
        return cls(m, m, 0, [SparseLinearMap.identity(m.space, m.field)])

    @classmethod
    def strict(cls, f: SparseLinearMap, M: S1Complex, N: S1Complex) -> "S1Morphism":
        return cls(M, N, f.degree, [f])

    @classmethod
    def u(cls, m: S1Complex, power: int = 1) -> "S1Morphism":
        """The morphism {F^power = id} of degree 2*power."""
        F = m.field
        terms = [SparseLinearMap.zero(m.space, m.space, 2 * power - 2 * j, F) for j in range(power)]
        terms.append(SparseLinearMap.identity(m.space, F))
        terms[-1] = SparseLinearMap(m.space, m.space, 0, terms[-1].cols, F)
        return cls(m, m, 2 * power, terms)


def premorphism_differential(f: S1Morphism) -> S1Morphism:
    """(dF)^s = sum F^i delta^M_{s-i} - (-1)^{deg F} sum delta^N_{s-j} F^j."""
    M, N = f.source, f.target
    F = f.field
    sgn = F.neg(F.sign(f.degree))
    top = f.J + max(M.K, N.K)
    terms = []
    for s in range(top + 1):
        acc = SparseLinearMap.zero(M.space, N.space, f.degree + 1 - 2 * s, F)
        for i in range(min(s, f.J) + 1):
            acc = acc + f.term(i) @ M.delta(s - i) + (N.delta(s - i) @ f.term(i)).scale(sgn)
        terms.append(acc)
    return S1Morphism(M, N, f.degree + 1, terms).trimmed()


def compose(g: S1Morphism, f: S1Morphism) -> S1Morphism:
    """(G o F)^s = sum_j G^{s-j} F^j."""
    if f.target is not g.source and not f.target.space.same_basis(g.source.space):
        raise DimensionMismatch("compose: target of F is not the source of G")
    F = f.field
    terms = []
    for s in range(f.J + g.J + 1):
        acc = SparseLinearMap.zero(f.source.space, g.target.space, f.degree + g.degree - 2 * s, F)
        for j in range(s + 1):
            acc = acc + g.term(s - j) @ f.term(j)
        terms.append(acc)
    return S1Morphism(f.source, g.target, f.degree + g.degree, terms).trimmed()


def is_closed(f: S1Morphism) -> bool:
    return premorphism_differential(f).is_zero()


def random_premorphism(M: S1Complex, N: S1Complex, degree: int, J: int, rng: random.Random,
                       density: float = 0.5) -> S1Morphism:
    F = M.field
    terms = []
    for j in range(J + 1):
        cols = {}
        for s in M.space.labels:
            for t in N.space.in_degree(M.space.degree(s) + degree - 2 * j):
                if rng.random() < density:
                    cols.setdefault(s, {})[t] = F(rng.randint(-3, 3))
        terms.append(SparseLinearMap(M.space, N.space, degree - 2 * j, cols, F))
    return S1Morphism(M, N, degree, terms)


# -- hom and tensor complexes ---------------------------------------------------------

def _hom_degree_range(M: S1Complex, N: S1Complex):
    bm, bn = M.bounds(), N.bounds()
    if bm is None or bn is None:
        return None
    return bn[0] - bm[1], bn[1] - bm[0]


def rhom_complex(M: S1Complex, N: S1Complex, window) -> TruncatedComplex:
    """Rhom_{S^1}(M, N) in degrees window[0]-1 .. window[1]+1.

    Basis element ``(j, t, s)`` is the pre-morphism whose only term is the
    matrix unit ``s -> t`` in slot F^j; its degree is ``|t| - |s| + 2j``.
    """
    a, b = window
    F = M.field
    hr = _hom_degree_range(M, N)
    basis = []
    if hr is not None:
        hmin, hmax = hr
        for deg in range(a - 1, b + 2):
            for j in range(0, max(0, (deg - hmin) // 2) + 1):
                hd = deg - 2 * j
                if hd < hmin or hd > hmax:
                    continue
                for s in M.space.labels:
                    for t in N.space.in_degree(M.space.degree(s) + hd):
                        basis.append(((j, t, s), deg))
    space = GradedVectorSpace(basis, Z)
    cols = {}
    for (j, t, s), deg in basis:
        sgn = F.neg(F.sign(deg))
        col: dict = {}
        # F^j o delta^M_i lands in slot j + i: entries (t, s') for delta_i(s') having s
        for i in range(M.K + 1):
            for s2, c in _rows_of(M.delta(i), s):
                _add(col, (j + i, t, s2), c, F, space)
            for t2, c in N.delta(i).col(t).items():
                _add(col, (j + i, t2, s), F.reduce(sgn * c), F, space)
        if col:
            cols[(j, t, s)] = col
    d = SparseLinearMap(space, space, 1, cols, F)
    return TruncatedComplex(space, d, {"window": (a, b)}, True, {"kind": "rhom"})


def _rows_of(m: SparseLinearMap, row):
    """Columns s' with m[row, s'] != 0, as (s', value)."""
    cache = m.__dict__.setdefault("_rows", None)
    if cache is None:
        cache = {}
        for s, col in m.cols.items():
            for t, v in col.items():
                cache.setdefault(t, []).append((s, v))
        m.__dict__["_rows"] = cache
    return cache.get(row, ())


def _add(col, key, val, F, space):
    if key in space:
        x = F.reduce(col.get(key, 0) + val)
        if x == 0:
            col.pop(key, None)
        else:
            col[key] = x


def element_of_rhom(f: S1Morphism) -> dict:
    """A pre-morphism as a vector in the basis of :func:`rhom_complex`."""
    vec = {}
    for j, t in enumerate(f.terms):
        for s, col in t.cols.items():
            for tt, v in col.items():
                vec[(j, tt, s)] = v
    return vec


def rhom_class_of(f: S1Morphism, groups: dict) -> list | None:
    g = groups.get(f.degree)
    if g is None:
        return None
    return g.coordinates(element_of_rhom(f))


def tensor_derived(N: S1Complex, M: S1Complex, window) -> TruncatedComplex:
    """N (x)^L_{S^1} M in degrees window[0]-1 .. window[1]+1.

    Basis ``(n, d, m)`` stands for n (x) Lambda^{(x) d} (x) m, of degree
    ``|n| + |m| - 2d``.
    """
    a, b = window
    F = M.field
    basis = []
    bn, bm = N.space.bounds(), M.space.bounds()
    if bn is not None and bm is not None:
        top = bn[1] + bm[1]
        for n in N.space.labels:
            for m in M.space.labels:
                base = N.space.degree(n) + M.space.degree(m)
                for d in range(0, (base - (a - 1)) // 2 + 1 if base >= a - 1 else 0):
                    deg = base - 2 * d
                    if a - 1 <= deg <= b + 1:
                        basis.append(((n, d, m), deg))
    space = GradedVectorSpace(basis, Z)
    cols = {}
    for (n, d, m), deg in basis:
        col: dict = {}
        sm = F.sign(M.space.degree(m))
        for i in range(0, min(d, max(N.K, M.K)) + 1):
            for n2, c in N.delta(i).col(n).items():
                _add(col, (n2, d - i, m), F.reduce(sm * c), F, space)
            for m2, c in M.delta(i).col(m).items():
                _add(col, (n, d - i, m2), c, F, space)
        if col:
            cols[(n, d, m)] = col
    dmap = SparseLinearMap(space, space, 1, cols, F)
    return TruncatedComplex(space, dmap, {"window": (a, b)}, True, {"kind": "tensor"})


def tensor_pushforward_right(f: S1Morphism, N: S1Complex, src: TruncatedComplex,
                             tgt: TruncatedComplex) -> SparseLinearMap:
    """N (x) M0 -> N (x) M1: n Lambda^d m -> sum_j n Lambda^{d-j} F^j(m)."""
    F = f.field
    cols = {}
    for (n, d, m) in src.space.labels:
        col: dict = {}
        for j in range(0, min(d, f.J) + 1):
            for m2, c in f.term(j).col(m).items():
                _add(col, (n, d - j, m2), c, F, tgt.space)
        if col:
            cols[(n, d, m)] = col
    return SparseLinearMap(src.space, tgt.space, f.degree, cols, F, check=False)


def tensor_pushforward_left(f: S1Morphism, N: S1Complex, src: TruncatedComplex,
                            tgt: TruncatedComplex) -> SparseLinearMap:
    """M0 (x) N -> M1 (x) N: m Lambda^d n -> sum_j (-1)^{deg F |n|} F^j(m) Lambda^{d-j} n."""
    F = f.field
    cols = {}
    for (m, d, n) in src.space.labels:
        col: dict = {}
        sgn = F.sign(f.degree * N.space.degree(n))
        for j in range(0, min(d, f.J) + 1):
            for m2, c in f.term(j).col(m).items():
                _add(col, (m2, d - j, n), F.reduce(sgn * c), F, tgt.space)
        if col:
            cols[(m, d, n)] = col
    return SparseLinearMap(src.space, tgt.space, f.degree, cols, F, check=False)


def rhom_precompose(f: S1Morphism, P: S1Complex, src: TruncatedComplex,
                    tgt: TruncatedComplex) -> SparseLinearMap:
    """Rhom(M', P) -> Rhom(M, P), G -> G o F, on basis pre-morphisms."""
    F = f.field
    cols = {}
    for (j, t, s) in src.space.labels:
        col: dict = {}
        for i in range(f.J + 1):
            for s2, c in _rows_of(f.term(i), s):
                _add(col, (j + i, t, s2), c, F, tgt.space)
        if col:
            cols[(j, t, s)] = col
    return SparseLinearMap(src.space, tgt.space, f.degree, cols, F, check=False)


def rhom_postcompose(f: S1Morphism, P: S1Complex, src: TruncatedComplex,
                     tgt: TruncatedComplex) -> SparseLinearMap:
    """Rhom(P, M) -> Rhom(P, M'), G -> F o G."""
    F = f.field
    cols = {}
    for (j, t, s) in src.space.labels:
        col: dict = {}
        for i in range(f.J + 1):
            for t2, c in f.term(i).col(t).items():
                _add(col, (j + i, t2, s), c, F, tgt.space)
        if col:
            cols[(j, t, s)] = col
    return SparseLinearMap(src.space, tgt.space, f.degree, cols, F, check=False)


# -- diagonal action ----------------------------------------------------------------

def diagonal_tensor(M: S1Complex, N: S1Complex) -> S1Complex:
    """delta_k(m (x) n) = (-1)^{|n|} delta_k m (x) n + m (x) delta_k n."""
    F = M.field
    basis = [((m, n), M.space.degree(m) + N.space.degree(n))
             for m in M.space.labels for n in N.space.labels]
    space = GradedVectorSpace(basis, M.mode)
    maps = []
    for k in range(max(M.K, N.K) + 1):
        cols = {}
        for (m, n) in space.labels:
            col: dict = {}
            sn = F.sign(N.space.degree(n))
            for m2, c in M.delta(k).col(m).items():
                vec_add(col, {(m2, n): c}, sn, F)
            for n2, c in N.delta(k).col(n).items():
                vec_add(col, {(m, n2): c}, F.one, F)
            if col:
                cols[(m, n)] = col
        maps.append(SparseLinearMap(space, space, 1 - 2 * k, cols, F))
    return S1Complex(space, maps, F, f"{M.name}(x){N.name}")


# -- enhancements ---------------------------------------------------------------------

@dataclass
class ObstructionReport:
    """Stage at which no enhancement extends, with the obstruction class."""
    stage: int
    rhs: dict
    residual: dict
    homology_class: list | None
    globally_unsolvable: bool
    notes: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    @property
    def nonzero(self) -> bool:
        return bool(self.residual)


def hom_complex(M: S1Complex, N: S1Complex) -> TruncatedComplex:
    """Graded Hom(M, N) with D(X) = X delta_0 - (-1)^{|X|} delta_0 X."""
    F = M.field
    basis = [((t, s), N.space.degree(t) - M.space.degree(s))
             for s in M.space.labels for t in N.space.labels]
    space = GradedVectorSpace(basis, M.mode)
    d0M, d0N = M.delta(0), N.delta(0)
    cols = {}
    for (t, s), deg in basis:
        col: dict = {}
        for s2, c in _rows_of(d0M, s):
            _add(col, (t, s2), c, F, space)
        sgn = F.neg(F.sign(deg))
        for t2, c in d0N.col(t).items():
            _add(col, (t2, s), F.reduce(sgn * c), F, space)
        if col:
            cols[(t, s)] = col
    return TruncatedComplex(space, SparseLinearMap(space, space, 1, cols, F), {}, True,
                            {"kind": "hom"})


def _as_vec(m: SparseLinearMap) -> dict:
    return {(t, s): v for s, col in m.cols.items() for t, v in col.items()}


def _as_map(vec: dict, M, N, degree, F) -> SparseLinearMap:
    cols: dict = {}
    for (t, s), v in vec.items():
        cols.setdefault(s, {})[t] = v
    return SparseLinearMap(M.space, N.space, degree, cols, F)


def _stage_rhs(terms, M, N, s, deg, F):
    """R_s = sum_{i<s} F^i delta^M_{s-i} - (-1)^{deg} sum_{j<s} delta^N_{s-j} F^j."""
    sgn = F.neg(F.sign(deg))
    acc = SparseLinearMap.zero(M.space, N.space, deg + 1 - 2 * s, F)
    for i in range(min(s, len(terms))):
        acc = acc + terms[i] @ M.delta(s - i) + (N.delta(s - i) @ terms[i]).scale(sgn)
    return acc


def find_enhancement(f: SparseLinearMap, M: S1Complex, N: S1Complex, J_max: int | None = None):
    """Extend the chain map ``f`` to a closed morphism {F^0 = f, F^1, ...}.

    Stage s solves D(F^s) = -R_s in Hom(M, N).  When a stage fails, the
    whole prefix F^1..F^s is re-solved as one linear system before reporting
    an obstruction, so a returned obstruction cannot be removed by changing
    earlier choices (with F^0 = f held fixed).
    """
    F = f.field
    deg = f.degree
    d0 = f @ M.delta(0) - (N.delta(0) @ f).scale(F.sign(deg))
    if not d0.is_zero():
        raise NotAChainMap("f does not commute with delta_0")
    hom = hom_complex(M, N)
    hr = _hom_degree_range(M, N)
    natural = 0 if hr is None else max(0, (deg - hr[0]) // 2)
    top = natural if J_max is None else J_max
    last_eq = top + max(M.K, N.K)
    terms = [f]
    groups_cache: dict = {}
    for s in range(1, last_eq + 1):
        R = _stage_rhs(terms, M, N, s, deg, F)
        rhs = {k: F.neg(v) for k, v in _as_vec(R).items()}
        if not rhs:
            terms.append(SparseLinearMap.zero(M.space, N.space, deg - 2 * s, F))
            continue
        if s <= top:
            sol = _solve_in_degree(hom, rhs, deg - 2 * s)
            if sol is not None:
                terms.append(_as_map(sol, M, N, deg - 2 * s, F))
                continue
            glob = _solve_prefix(f, M, N, s)
            if glob is not None:
                terms = [f] + glob
                continue
        # obstruction at stage s
        target_deg = deg - 2 * s + 1
        if target_deg not in groups_cache:
            groups_cache[target_deg] = homology_groups(hom.space, hom.differential, [target_deg])
        g = groups_cache[target_deg].get(hom.space.norm(target_deg))
        cls = g.coordinates(_as_vec(R)) if g is not None and not hom.differential.apply(_as_vec(R)) else None
        glob = _solve_prefix(f, M, N, s) if s <= top else None
        obs = solve_inhomogeneous(_degree_block(hom, deg - 2 * s, target_deg), rhs)
        residual = obs.residual if isinstance(obs, Obstruction) else {}
        return ObstructionReport(s, _as_vec(R), residual, cls, glob is None,
                                 {"J_max": top, "beyond_J_max": s > top})
    terms = terms[:top + 1]
    out = S1Morphism(M, N, deg, terms).trimmed()
    if not out.terms:
        out = S1Morphism(M, N, deg, [f])
    return out


def _degree_block(hom: TruncatedComplex, src_deg: int, tgt_deg: int) -> SparseLinearMap:
    sp = hom.space
    src = GradedVectorSpace([(l, 0) for l in sp.in_degree(src_deg)], Z)
    tgt = GradedVectorSpace([(l, 0) for l in sp.in_degree(tgt_deg)], Z)
    cols = {l: {t: v for t, v in hom.differential.col(l).items() if t in tgt} for l in src.labels}
    return SparseLinearMap(src, tgt, 0, cols, hom.field, check=False)


def _solve_in_degree(hom, rhs, src_deg):
    tgt_deg = src_deg + 1
    blk = _degree_block(hom, src_deg, tgt_deg)
    if any(k not in blk.target for k in rhs):
        return None
    sol = solve_inhomogeneous(blk, rhs)
    return None if isinstance(sol, Obstruction) else sol


def _solve_prefix(f, M, N, s):
    """Solve stages 1..s jointly for F^1..F^s (F^0 = f fixed); None if impossible."""
    F = f.field
    deg = f.degree
    hom = hom_complex(M, N)
    unknowns = [(i, l) for i in range(1, s + 1) for l in hom.space.in_degree(deg - 2 * i)]
    eqs = [(t, l) for t in range(1, s + 1) for l in hom.space.in_degree(deg - 2 * t + 1)]
    src = GradedVectorSpace([(u, 0) for u in unknowns], Z)
    tgt = GradedVectorSpace([(e, 0) for e in eqs], Z)
    sgn = F.neg(F.sign(deg))
    cols = {}
    for (i, (tl, sl)) in unknowns:
        X = _as_map({(tl, sl): F.one}, M, N, deg - 2 * i, F)
        col: dict = {}
        for t in range(i, s + 1):
            term = X @ M.delta(t - i) + (N.delta(t - i) @ X).scale(sgn)
            for k, v in _as_vec(term).items():
                if (t, k) in tgt:
                    col[(t, k)] = v
        cols[(i, (tl, sl))] = col
    A = SparseLinearMap(src, tgt, 0, cols, F, check=False)
    rhs = {}
    for t in range(1, s + 1):
        term = f @ M.delta(t) + (N.delta(t) @ f).scale(sgn)
        for k, v in _as_vec(term).items():
            if (t, k) not in tgt:
                return None
            rhs[(t, k)] = F.neg(v)
    sol = solve_inhomogeneous(A, rhs)
    if isinstance(sol, Obstruction):
        return None
    out = []
    for i in range(1, s + 1):
        vec = {k: v for (j, k), v in sol.items() if j == i}
        out.append(_as_map(vec, M, N, deg - 2 * i, F))
    return out


# -- fixtures and generators ---------------------------------------------------------

def point(F: Field, degree: int = 0) -> S1Complex:
    """k concentrated in one degree, trivial action."""
    return S1Complex.from_matrices([("1", degree)], {}, F, Z, "k")


def zero_complex(F: Field) -> S1Complex:
    return S1Complex.from_matrices([], {}, F, Z, "0")


def free_rank_one(F: Field) -> S1Complex:
    """The (x, y) fixture: |x| = 0, |y| = -1, delta_1 x = y (this is k[Lambda]/Lambda^2)."""
    return S1Complex.from_matrices([("x", 0), ("y", -1)], {1: {"x": {"y": 1}}}, F, Z, "xy")


def designed_obstruction(F: Field):
    """(f, M, N) with M the (x, y) fixture, N = k.y trivial and f projecting onto y.

    f is a chain map, but f delta_1 sends x to y and survives in the homology of
    Hom(M, N), so the first enhancement stage is obstructed.
    """
    M = free_rank_one(F)
    N = point(F, -1)
    f = SparseLinearMap(M.space, N.space, 0, {"y": {"1": F.one}}, F)
    return f, M, N


def random_strict_mixed(F: Field, rng: random.Random, max_dim: int = 8, span: int = 6) -> S1Complex:
    """Random strict mixed complex (delta_0 = d, delta_1 = B, delta_{>1} = 0).

    Built as a sum of standard blocks (points, d-pairs, B-pairs, squares,
    zigzags) and conjugated by a random degree-preserving automorphism.
    """
    basis, d, B = [], {}, {}
    n = 0

    def new(deg):
        nonlocal n
        lab = f"v{n}"
        n += 1
        basis.append((lab, deg))
        return lab

    target = rng.randint(1, max_dim)
    while len(basis) < target:
        room = max_dim - len(basis)
        kind = rng.choice(["point", "dpair", "Bpair", "square", "zigzag"])
        a = rng.randint(-span // 2, span // 2)
        if kind == "point" or room < 2:
            new(a)
        elif kind == "dpair":
            x, y = new(a), new(a + 1)
            d.setdefault(x, {})[y] = 1
        elif kind == "Bpair":
            x, y = new(a), new(a - 1)
            B.setdefault(x, {})[y] = 1
        elif kind == "square" and room >= 4:
            x, y, z, w = new(a), new(a + 1), new(a - 1), new(a)
            d.setdefault(x, {})[y] = 1
            B.setdefault(x, {})[z] = 1
            d.setdefault(z, {})[w] = 1
            B.setdefault(y, {})[w] = -1
        elif room >= 3:
            x1, y, x2 = new(a), new(a + 1), new(a + 2)
            d.setdefault(x1, {})[y] = 1
            B.setdefault(x2, {})[y] = 1
        else:
            new(a)
    space = GradedVectorSpace(basis, Z)
    P, Pinv = _random_automorphism(space, F, rng)
    dm = SparseLinearMap(space, space, 1, {s: {t: F(v) for t, v in c.items()} for s, c in d.items()}, F)
    Bm = SparseLinearMap(space, space, -1, {s: {t: F(v) for t, v in c.items()} for s, c in B.items()}, F)
    return S1Complex(space, [P @ dm @ Pinv, P @ Bm @ Pinv], F, "random")


def _random_automorphism(space, F, rng):
    """Block-triangular random automorphism per degree, with its inverse."""
    cols, icols = {}, {}
    for deg in space.degrees():
        labs = space.in_degree(deg)
        n = len(labs)
        # unit upper triangular U, and a permutation
        U = [[F.one if i == j else (F(rng.randint(-2, 2)) if j > i else F.zero) for j in range(n)]
             for i in range(n)]
        Ui = _inverse_upper(U, F)
        for j in range(n):
            cols[labs[j]] = {labs[i]: U[i][j] for i in range(n) if U[i][j] != 0}
            icols[labs[j]] = {labs[i]: Ui[i][j] for i in range(n) if Ui[i][j] != 0}
    P = SparseLinearMap(space, space, 0, cols, F)
    Pi = SparseLinearMap(space, space, 0, icols, F)
    return P, Pi


def _inverse_upper(U, F):
    n = len(U)
    inv = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            c = U[i][j]
            if c != 0:
                for k in range(n):
                    inv[i][k] = F.reduce(inv[i][k] - c * inv[j][k])
    return inv
