"""Graded vector spaces with labelled bases and sparse graded linear maps."""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping

from ..errors import DegreeViolation, DimensionMismatch
from .fields import Field

Label = Hashable
Vector = dict  # label -> nonzero field element

Z = "Z"
Z2 = "Z/2"


def norm_degree(d: int, mode: str) -> int:
    return d % 2 if mode == Z2 else d


class GradedVectorSpace:
    """Finite-dimensional graded space with an ordered basis of unique labels."""

    def __init__(self, basis: Iterable[tuple[Label, int]], mode: str = Z):
        if mode not in (Z, Z2):
            raise ValueError(f"unknown grading mode {mode!r}")
        self.mode = mode
        labels, degs = [], {}
        for label, d in basis:
            if label in degs:
                raise ValueError(f"duplicate basis label {label!r}")
            labels.append(label)
            degs[label] = norm_degree(int(d), mode)
        self.labels: tuple = tuple(labels)
        self._deg = degs
        self.index = {label: i for i, label in enumerate(labels)}
        by_deg: dict[int, list] = {}
        for label in labels:
            by_deg.setdefault(degs[label], []).append(label)
        self._by_deg = {d: tuple(v) for d, v in by_deg.items()}

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self._deg

    def __repr__(self) -> str:
        return f"GradedVectorSpace(dim={self.dim}, dims={self.dims()}, mode={self.mode!r})"

    def degree(self, label) -> int:
        return self._deg[label]

    def in_degree(self, d: int) -> tuple:
        return self._by_deg.get(norm_degree(d, self.mode), ())

    def degrees(self) -> list[int]:
        return sorted(self._by_deg)

    def dims(self) -> dict[int, int]:
        return {d: len(self._by_deg[d]) for d in self.degrees()}

    def bounds(self) -> tuple[int, int] | None:
        ds = self.degrees()
        return (ds[0], ds[-1]) if ds else None

    def norm(self, d: int) -> int:
        return norm_degree(d, self.mode)

    def vector_degree(self, vec: Mapping) -> int | None:
        """The common degree of a homogeneous vector (None for zero)."""
        ds = {self._deg[k] for k in vec}
        if len(ds) > 1:
            raise DegreeViolation(f"vector is not homogeneous: degrees {sorted(ds)}")
        return ds.pop() if ds else None

    def same_basis(self, other: "GradedVectorSpace") -> bool:
        return self.labels == other.labels and self._deg == other._deg and self.mode == other.mode


def vec_add(acc: dict, vec: Mapping, coef, F: Field) -> dict:
    """acc += coef * vec (in place), dropping zeros."""
    if coef == 0:
        return acc
    for k, v in vec.items():
        x = F.reduce(acc.get(k, 0) + coef * v)
        if x == 0:
            acc.pop(k, None)
        else:
            acc[k] = x
    return acc


def vec_add_term(acc: dict, key, value, F: Field) -> None:
    x = F.reduce(acc.get(key, 0) + value)
    if x == 0:
        acc.pop(key, None)
    else:
        acc[key] = x


def vec_scale(vec: Mapping, coef, F: Field) -> dict:
    if coef == 0:
        return {}
    return {k: F.reduce(coef * v) for k, v in vec.items()}


def vec_clean(vec: Mapping, F: Field) -> dict:
    """Coerce values into ``F`` and drop zeros."""
    out = {}
    for k, v in vec.items():
        v = F(v)
        if v != 0:
            out[k] = v
    return out


class SparseLinearMap:
    """Homogeneous linear map between graded spaces, stored column-wise.

    ``cols[source_label]`` is a sparse image vector ``{target_label: scalar}``.
    """

    def __init__(self, source: GradedVectorSpace, target: GradedVectorSpace, degree: int,
                 cols: Mapping | None = None, field: Field | None = None, check: bool = True):
        if field is None:
            raise ValueError("a field is required")
        self.source = source
        self.target = target
        self.field = field
        self.degree = norm_degree(degree, target.mode)
        self.cols: dict = {}
        for src, col in (cols or {}).items():
            col = {t: v for t, v in col.items() if v != 0}
            if col:
                self.cols[src] = col
        if check:
            self._check()

    def _check(self) -> None:
        s, t = self.source, self.target
        for src, col in self.cols.items():
            if src not in s:
                raise DimensionMismatch(f"column label {src!r} not in source")
            for tgt in col:
                if tgt not in t:
                    raise DimensionMismatch(f"row label {tgt!r} not in target")
                if t.norm(s.degree(src) + self.degree) != t.degree(tgt):
                    raise DegreeViolation(
                        f"entry {tgt!r} <- {src!r} breaks degree {self.degree}: "
                        f"{s.degree(src)} -> {t.degree(tgt)}")

    @classmethod
    def from_function(cls, source, target, degree, fn: Callable[[Label], Mapping], field: Field,
                      check: bool = True) -> "SparseLinearMap":
        return cls(source, target, degree, {lab: fn(lab) for lab in source.labels}, field, check)

    @classmethod
    def zero(cls, source, target, degree, field) -> "SparseLinearMap":
        return cls(source, target, degree, {}, field)

    @classmethod
    def identity(cls, space, field) -> "SparseLinearMap":
        return cls(space, space, 0, {lab: {lab: field.one} for lab in space.labels}, field)

    def __repr__(self) -> str:
        return (f"SparseLinearMap({self.source.dim}->{self.target.dim}, degree={self.degree}, "
                f"nnz={self.nnz})")

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def col(self, src) -> dict:
        return self.cols.get(src, {})

    def apply(self, vec: Mapping) -> dict:
        F = self.field
        out: dict = {}
        for k, v in vec.items():
            c = self.cols.get(k)
            if c:
                vec_add(out, c, v, F)
        return out

    __call__ = apply

    def __matmul__(self, other: "SparseLinearMap") -> "SparseLinearMap":
        if not other.target.same_basis(self.source):
            raise DimensionMismatch("composition of maps with mismatched spaces")
        cols = {src: self.apply(col) for src, col in other.cols.items()}
        return SparseLinearMap(other.source, self.target, self.degree + other.degree, cols,
                               self.field, check=False)

    def _combine(self, other: "SparseLinearMap", coef) -> "SparseLinearMap":
        if not (self.source.same_basis(other.source) and self.target.same_basis(other.target)):
            raise DimensionMismatch("sum of maps with mismatched spaces")
        if other.cols and self.cols and self.target.norm(self.degree - other.degree) != 0:
            raise DegreeViolation("sum of maps of different degrees")
        F = self.field
        cols = {k: dict(v) for k, v in self.cols.items()}
        for src, col in other.cols.items():
            vec_add(cols.setdefault(src, {}), col, coef, F)
        deg = self.degree if self.cols or not other.cols else other.degree
        return SparseLinearMap(self.source, self.target, deg, cols, F, check=False)

    def __add__(self, other):
        return self._combine(other, self.field.one)

    def __sub__(self, other):
        return self._combine(other, self.field.neg(self.field.one))

    def __neg__(self):
        return self.scale(self.field.neg(self.field.one))

    def scale(self, c) -> "SparseLinearMap":
        F = self.field
        return SparseLinearMap(self.source, self.target, self.degree,
                               {k: vec_scale(v, c, F) for k, v in self.cols.items()}, F, check=False)

    def is_zero(self) -> bool:
        return not self.cols

    def entries(self) -> list[tuple]:
        """Sorted (target, source, value) triplets in basis order."""
        si, ti = self.source.index, self.target.index
        out = [(t, s, v) for s, col in self.cols.items() for t, v in col.items()]
        out.sort(key=lambda e: (si[e[1]], ti[e[0]]))
        return out

    def equals(self, other: "SparseLinearMap") -> bool:
        return (self - other).is_zero()

    def restrict(self, source: GradedVectorSpace, target: GradedVectorSpace) -> "SparseLinearMap":
        """Restrict columns to ``source`` and project rows onto ``target``."""
        cols = {}
        for s in source.labels:
            col = self.cols.get(s)
            if col:
                cols[s] = {t: v for t, v in col.items() if t in target}
        return SparseLinearMap(source, target, self.degree, cols, self.field, check=False)
