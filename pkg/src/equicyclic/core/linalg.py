"""Exact sparse elimination: rank, kernel, image, homology and linear solving.

Pivot policy: columns are processed in source-basis order and each new pivot is
the lowest target-basis index present in the reduced column.  Everything is
deterministic, so representatives are reproducible run to run.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from ..errors import DimensionMismatch
from .fields import Field
from .spaces import GradedVectorSpace, SparseLinearMap, vec_add, vec_scale

_THREADS = 1


def set_threads(n: int) -> None:
    """Number of worker threads used for per-degree homology computations."""
    global _THREADS
    _THREADS = max(1, int(n))


def get_threads() -> int:
    return _THREADS


def normalize(vec: Mapping, order: Mapping, F: Field) -> dict:
    """Scale so the coefficient of the lowest-ordered label is 1."""
    if not vec:
        return {}
    lead = min(vec, key=order.__getitem__)
    return vec_scale(vec, F.inv(vec[lead]), F)


class Echelon:
    """Incrementally built echelon basis of a span of sparse vectors.

    Each stored pivot vector has leading label (minimal in ``order``) with
    coefficient 1, and remembers its expression in the inserted generators.
    """

    def __init__(self, order: Mapping, F: Field):
        self.order = order
        self.F = F
        self.pivots: dict = {}  # lead label -> (vector, combo)

    def __len__(self) -> int:
        return len(self.pivots)

    def _lead(self, vec):
        return min(vec, key=self.order.__getitem__)

    def reduce(self, vec: Mapping, combo: Mapping | None = None) -> tuple[dict, dict]:
        """Leading-term reduction.

        Returns ``(residual, combo)`` with ``vec = sum(c_i * pivot_i) + residual``
        expressed as ``combo_out = combo - sum(c_i * combo_i)``, so that the
        residual equals the image of ``combo_out`` whenever the pivots are images
        of their combos.
        """
        F = self.F
        res = dict(vec)
        comb = dict(combo or {})
        while res:
            lead = self._lead(res)
            piv = self.pivots.get(lead)
            if piv is None:
                break
            c = res[lead]
            vec_add(res, piv[0], F.neg(c), F)
            vec_add(comb, piv[1], F.neg(c), F)
        return res, comb

    def insert(self, vec: Mapping, combo: Mapping | None = None) -> tuple[dict, dict] | None:
        """Insert ``vec``; returns ``None`` if it was new, else ``(0, kernel combo)``."""
        res, comb = self.reduce(vec, combo)
        if not res:
            return res, comb
        lead = self._lead(res)
        inv = self.F.inv(res[lead])
        self.pivots[lead] = (vec_scale(res, inv, self.F), vec_scale(comb, inv, self.F))
        return None

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]

    def coordinates(self, vec: Mapping) -> dict | None:
        """Combination of inserted generators equal to ``vec`` (None if not in span)."""
        F = self.F
        res, comb = self.reduce(vec)
        if res:
            return None
        return {k: F.neg(v) for k, v in comb.items()}


@dataclass
class RankData:
    rank: int
    kernel: list
    image: list


def rank_kernel_image(m: SparseLinearMap, source_labels: Sequence | None = None) -> RankData:
    """Exact rank of ``m`` with kernel and image bases (optionally on a subset of columns)."""
    F = m.field
    labels = m.source.labels if source_labels is None else source_labels
    ech = Echelon(m.target.index, F)
    kernel = []
    for lab in labels:
        out = ech.insert(m.col(lab), {lab: F.one})
        if out is not None:
            kernel.append(normalize(out[1], m.source.index, F))
    image = [v for _, (v, _) in sorted(ech.pivots.items(), key=lambda kv: m.target.index[kv[0]])]
    return RankData(len(ech), kernel, image)


def rank(m: SparseLinearMap, source_labels: Sequence | None = None) -> int:
    F = m.field
    labels = m.source.labels if source_labels is None else source_labels
    ech = Echelon(m.target.index, F)
    for lab in labels:
        col = m.col(lab)
        if col:
            ech.insert(col)
    return len(ech)


@dataclass
class Obstruction:
    """Certificate that ``rhs`` is not in the image of a map."""
    rhs: dict
    residual: dict
    is_cycle: bool | None = None
    homology_coordinates: list | None = None

    def __bool__(self) -> bool:  # an obstruction is never a usable solution
        return False


def solve_inhomogeneous(d: SparseLinearMap, rhs: Mapping,
                        next_differential: SparseLinearMap | None = None,
                        homology: "HomologyGroup | None" = None):
    """Solve ``d(x) = rhs`` exactly.

    Returns the solution vector (a dict over source labels), or an
    :class:`Obstruction` holding the normalized residual of ``rhs`` modulo
    ``im(d)``.  When ``next_differential`` is given the obstruction records
    whether ``rhs`` is a cycle; with ``homology`` it records the class.
    """
    F = d.field
    for k in rhs:
        if k not in d.target:
            raise DimensionMismatch(f"rhs label {k!r} not in the target of d")
    ech = Echelon(d.target.index, F)
    for lab in d.source.labels:
        col = d.col(lab)
        if col:
            ech.insert(col, {lab: F.one})
    res, comb = ech.reduce(rhs)
    if not res:
        return {k: F.neg(v) for k, v in comb.items()}
    obs = Obstruction(dict(rhs), normalize(res, d.target.index, F))
    if next_differential is not None:
        obs.is_cycle = not next_differential.apply(rhs)
    if homology is not None:
        obs.homology_coordinates = homology.coordinates(rhs)
    return obs


@dataclass
class HomologyGroup:
    """Homology in one degree: dimension, cycle representatives, class coordinates."""
    degree: int
    dim: int
    representatives: list
    kernel_dim: int = 0
    image_dim: int = 0
    _ech: Echelon | None = dc_field(default=None, repr=False)
    _nimage: int = dc_field(default=0, repr=False)

    def coordinates(self, cycle: Mapping) -> list:
        """Coordinates of the class of ``cycle`` in the representative basis."""
        coords = self._ech.coordinates(cycle)
        if coords is None:
            raise ValueError("vector is not a cycle of this degree")
        return [coords.get(("rep", i), 0) for i in range(self.dim)]


def homology_in_degree(space: GradedVectorSpace, diff: SparseLinearMap, d: int) -> HomologyGroup:
    F = diff.field
    order = space.index
    ech = Echelon(order, F)
    n_im = 0
    for lab in space.in_degree(d - 1):
        col = diff.col(lab)
        if col and ech.insert(col, {("im", lab): F.one}) is None:
            n_im += 1
    kern = rank_kernel_image(diff, space.in_degree(d)).kernel
    reps = []
    for z in kern:
        res, _ = ech.reduce(z)
        if res:
            rep = normalize(res, order, F)
            ech.insert(rep, {("rep", len(reps)): F.one})
            reps.append(rep)
    return HomologyGroup(space.norm(d), len(reps), reps, len(kern), n_im, ech, n_im)


def homology_groups(space: GradedVectorSpace, diff: SparseLinearMap,
                    degrees: Sequence[int]) -> dict[int, HomologyGroup]:
    degrees = list(dict.fromkeys(space.norm(d) for d in degrees))
    if _THREADS > 1 and len(degrees) > 1:
        with ThreadPoolExecutor(_THREADS) as ex:
            groups = list(ex.map(lambda d: homology_in_degree(space, diff, d), degrees))
    else:
        groups = [homology_in_degree(space, diff, d) for d in degrees]
    return dict(zip(degrees, groups))
