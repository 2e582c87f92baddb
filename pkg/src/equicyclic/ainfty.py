"""A-infinity categories given by finitely many sparse structure constants.

Inputs of ``mu^d`` are written left to right as ``(x_d, ..., x_1)`` with
``x_i in hom(X_{i-1}, X_i)``; the output lies in ``hom(X_0, X_d)`` and has degree
``sum |x_i| + 2 - d``.  Signs use reduced degrees ``||x|| = |x| - 1``.

Functors follow the convention

    sum_r mu'^r(F^{s_r}(...), ..., F^{s_1}(...))
        = sum (-1)^{||x_1|| + ... + ||x_n||} F(x_d, ..., mu^m(...), x_n, ..., x_1)

(no sign on the composite side, Koszul sign on the insertion side).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from .core import Field, GradedVectorSpace, Z, norm_degree, vec_add
from .errors import AlreadyUnital, DegreeViolation, MissingUnit

__all__ = ["Generator", "ValidationReport", "AInfCategory", "check_ainfty",
           "check_strict_units", "augment_units", "strip_units", "AInfFunctor", "check_functor",
           "gauge_transport"]


@dataclass(frozen=True)
class Generator:
    label: str
    source: str
    target: str
    degree: int


@dataclass
class ValidationReport:
    """Outcome of an exact validation: ``ok`` plus the first failures found."""
    check: str
    ok: bool
    failures: list = field(default_factory=list)
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first(self):
        return self.failures[0] if self.failures else None


class AInfCategory:
    """Finite A-infinity category with sparse ``mu`` tensors."""

    def __init__(self, objects: Iterable[str], generators: Iterable, mu: Mapping, F: Field,
                 mode: str = Z, units: Mapping | None = None, name: str = ""):
        self.objects = tuple(objects)
        self.field = F
        self.mode = mode
        self.name = name
        gens = []
        for g in generators:
            g = g if isinstance(g, Generator) else Generator(*g)
            g = Generator(g.label, g.source, g.target, norm_degree(g.degree, mode))
            if g.source not in self.objects or g.target not in self.objects:
                raise ValueError(f"generator {g.label!r} has unknown endpoints")
            gens.append(g)
        self.gens = {g.label: g for g in gens}
        if len(self.gens) != len(gens):
            raise ValueError("duplicate generator labels")
        self.order = {g.label: i for i, g in enumerate(gens)}
        self.out_edges: dict[str, list[str]] = {x: [] for x in self.objects}
        for g in gens:
            self.out_edges[g.source].append(g.label)
        self.mu: dict[tuple, dict] = {}
        for inputs, out in mu.items():
            inputs = tuple(inputs)
            out = {k: F(v) for k, v in out.items()}
            out = {k: v for k, v in out.items() if v != 0}
            if out:
                self.mu[inputs] = out
        self.units = dict(units) if units else None
        self.max_arity = max((len(k) for k in self.mu), default=0)
        self._check_structure()
        self._producers: dict[str, list] | None = None

    def __repr__(self) -> str:
        return (f"AInfCategory({self.name or '?'}, objects={len(self.objects)}, "
                f"generators={len(self.gens)}, D={self.max_arity}, field={self.field.name})")

    def _check_structure(self) -> None:
        for inputs, out in self.mu.items():
            if not inputs:
                raise DegreeViolation("mu^0 (curvature) is not supported")
            src, tgt = self.composable_ends(inputs)
            deg = self.norm(sum(self.gens[x].degree for x in inputs) + 2 - len(inputs))
            for y in out:
                g = self.gens.get(y)
                if g is None:
                    raise ValueError(f"mu output {y!r} is not a generator")
                if (g.source, g.target) != (src, tgt):
                    raise DegreeViolation(f"mu{inputs} -> {y!r} lands in the wrong hom space")
                if g.degree != deg:
                    raise DegreeViolation(
                        f"mu^{len(inputs)}{inputs} -> {y!r}: degree {g.degree}, expected {deg}")
        if self.units:
            for x, e in self.units.items():
                g = self.gens.get(e)
                if g is None or g.source != x or g.target != x or g.degree != 0:
                    raise ValueError(f"unit {e!r} for {x!r} must be a degree-0 endomorphism")

    # -- basic data -------------------------------------------------------
    def norm(self, d: int) -> int:
        return norm_degree(d, self.mode)

    def deg(self, x: str) -> int:
        return self.gens[x].degree

    def red(self, x: str) -> int:
        return self.gens[x].degree - 1

    def hom(self, source: str, target: str) -> GradedVectorSpace:
        return GradedVectorSpace([(g.label, g.degree) for g in self.gens.values()
                                  if g.source == source and g.target == target], self.mode)

    def composable_ends(self, inputs: tuple) -> tuple[str, str]:
        """(X_0, X_d) for a composable tuple ``(x_d, ..., x_1)``; raises otherwise."""
        g = [self.gens[x] for x in inputs]
        for i in range(len(g) - 1):
            if g[i].source != g[i + 1].target:
                raise ValueError(f"inputs {inputs} are not composable")
        return g[-1].source, g[0].target

    def is_composable(self, inputs: tuple) -> bool:
        return all(self.gens[inputs[i]].source == self.gens[inputs[i + 1]].target
                   for i in range(len(inputs) - 1))

    def unit_labels(self) -> set:
        return set(self.units.values()) if self.units else set()

    # -- evaluation --------------------------------------------------------
    def mu_basis(self, inputs: tuple) -> dict:
        return self.mu.get(tuple(inputs), {})

    def mu_vectors(self, vectors: list) -> dict:
        """Multilinear extension of ``mu`` to sparse vectors ``[v_d, ..., v_1]``."""
        F = self.field
        out: dict = {}
        for combo in product(*(list(v.items()) for v in vectors)):
            coef = F.one
            for _, c in combo:
                coef = coef * c
            vals = self.mu.get(tuple(k for k, _ in combo))
            if vals:
                vec_add(out, vals, F.reduce(coef), F)
        return out

    def producers(self) -> dict[str, list]:
        """label -> [(inputs, coefficient)] over all mu entries producing it."""
        if self._producers is None:
            prod: dict[str, list] = {}
            for inputs, out in self.mu.items():
                for y, c in out.items():
                    prod.setdefault(y, []).append((inputs, c))
            self._producers = prod
        return self._producers

    def sort_key(self, word: tuple) -> tuple:
        return (len(word), tuple(self.order[x] for x in word))

    def composable_words(self, length: int, start: str | None = None) -> list[tuple]:
        """All composable ``(x_d, ..., x_1)`` of the given length."""
        out: list[tuple] = []

        def extend(word, obj):
            if len(word) == length:
                out.append(tuple(reversed(word)))
                return
            for x in self.out_edges[obj]:
                word.append(x)
                extend(word, self.gens[x].target)
                word.pop()

        for x0 in ([start] if start else self.objects):
            extend([], x0)
        return out

    def with_field(self, F: Field) -> "AInfCategory":
        """The same structure constants read in another field (e.g. mod p)."""
        mu = {k: {y: F(v) for y, v in out.items()} for k, out in self.mu.items()}
        return AInfCategory(self.objects, self.gens.values(), mu, F, self.mode, self.units,
                            self.name)

    def replace(self, **kw) -> "AInfCategory":
        args = dict(objects=self.objects, generators=list(self.gens.values()), mu=self.mu,
                    F=self.field, mode=self.mode, units=self.units, name=self.name)
        args.update(kw)
        return AInfCategory(**args)


# -- A-infinity relations ------------------------------------------------------

def _relation_residuals(c: AInfCategory, inner: Mapping, outer: Mapping, red) -> dict:
    """sum over all (outer entry, slot, inner entry) of the signed quadratic terms.

    Returns {input tuple: residual vector}.  Only nonzero terms are visited.
    """
    F = c.field
    prod: dict[str, list] = {}
    for inputs, out in inner.items():
        for y, coef in out.items():
            prod.setdefault(y, []).append((inputs, coef))
    acc: dict[tuple, dict] = {}
    for okey, oval in outer.items():
        m = len(okey)
        for j in range(m):          # slot index in okey (0 = leftmost = x_k side)
            for ikey, icoef in prod.get(okey[j], ()):
                tail = okey[j + 1:]
                sign = sum(red(x) for x in tail)
                word = okey[:j] + ikey + tail
                coef = F.reduce(icoef * F.sign(sign))
                vec_add(acc.setdefault(word, {}), oval, coef, F)
    return {k: v for k, v in acc.items() if v}


def check_ainfty(c: AInfCategory, max_failures: int = 5) -> ValidationReport:
    """Exact check of the quadratic A-infinity relations on all generator tuples.

    Degree consistency of every ``mu`` entry is enforced when the category is
    built (:class:`DegreeViolation`), i.e. before any relation is evaluated.
    """
    c._check_structure()
    res = _relation_residuals(c, c.mu, c.mu, c.red)
    fails = sorted(res.items(), key=lambda kv: c.sort_key(kv[0]))
    report = ValidationReport("ainfty", not fails, checked=len(c.mu))
    for word, vec in fails[:max_failures]:
        report.failures.append({"inputs": list(word), "residual": vec,
                                "terms": _relation_terms(c, word)})
    return report


def _relation_terms(c: AInfCategory, word: tuple) -> list:
    """Individual nonzero terms of the relation on ``word`` (for reports)."""
    F = c.field
    terms = []
    k = len(word)
    for l in range(1, k + 1):
        for i in range(0, k - l + 1):
            inner_in = word[k - i - l:k - i]
            inner = c.mu_basis(inner_in)
            if not inner:
                continue
            sign = F.sign(sum(c.red(x) for x in word[k - i:]))
            for y, cy in inner.items():
                outer_in = word[:k - i - l] + (y,) + word[k - i:]
                val = c.mu_basis(outer_in)
                if val:
                    terms.append({"inner": list(inner_in), "outer": list(outer_in),
                                  "value": {z: F.reduce(sign * cy * v) for z, v in val.items()}})
    return terms


def check_strict_units(c: AInfCategory) -> ValidationReport:
    if not c.units:
        raise MissingUnit("category has no designated units")
    missing = [x for x in c.objects if x not in c.units]
    if missing:
        raise MissingUnit(f"objects without unit: {missing}")
    F = c.field
    units = c.unit_labels()
    report = ValidationReport("strict_units", True)
    for x, e in c.units.items():
        if c.mu_basis((e,)):
            report.failures.append({"kind": "mu1(e)!=0", "unit": e})
    for y, g in c.gens.items():
        el, er = c.units[g.target], c.units[g.source]
        left = {k: F.reduce(F.sign(g.degree) * v) for k, v in c.mu_basis((el, y)).items()}
        right = c.mu_basis((y, er))
        report.checked += 2
        if left != {y: F.one}:
            report.failures.append({"kind": "left unit", "inputs": [el, y], "value": left})
        if right != {y: F.one}:
            report.failures.append({"kind": "right unit", "inputs": [y, er], "value": right})
    for inputs, out in sorted(c.mu.items(), key=lambda kv: c.sort_key(kv[0])):
        if len(inputs) > 2 and units.intersection(inputs):
            report.failures.append({"kind": "higher unit", "inputs": list(inputs), "value": out})
    report.ok = not report.failures
    return report


def augment_units(c: AInfCategory, prefix: str = "e+") -> AInfCategory:
    """Adjoin a strict unit ``e+X`` to every endomorphism space."""
    if c.units:
        raise AlreadyUnital("category already has designated units")
    F = c.field
    units = {}
    for x in c.objects:
        lab = f"{prefix}{x}"
        while lab in c.gens:
            lab += "'"
        units[x] = lab
    gens = list(c.gens.values()) + [Generator(units[x], x, x, 0) for x in c.objects]
    mu = {k: dict(v) for k, v in c.mu.items()}
    for g in gens:
        el, er = units[g.target], units[g.source]
        mu[(el, g.label)] = {g.label: F.sign(g.degree)}
        mu[(g.label, er)] = {g.label: F.one}
    return AInfCategory(c.objects, gens, mu, F, c.mode, units, (c.name + "+") if c.name else "")


def strip_units(c: AInfCategory) -> AInfCategory:
    """Remove designated units and every mu entry touching them."""
    if not c.units:
        return c
    units = c.unit_labels()
    gens = [g for g in c.gens.values() if g.label not in units]
    mu = {k: v for k, v in c.mu.items() if not units.intersection(k)}
    return AInfCategory(c.objects, gens, mu, c.field, c.mode, None, c.name)


# -- functors ----------------------------------------------------------------

class AInfFunctor:
    """A-infinity functor with sparse components ``F^d`` of degree ``1 - d``."""

    def __init__(self, source: AInfCategory, target: AInfCategory, object_map: Mapping,
                 terms: Mapping, name: str = ""):
        self.source, self.target = source, target
        self.object_map = dict(object_map)
        self.name = name
        F = target.field
        self.terms: dict[tuple, dict] = {}
        for inputs, out in terms.items():
            out = {k: F(v) for k, v in out.items()}
            out = {k: v for k, v in out.items() if v != 0}
            if out:
                self.terms[tuple(inputs)] = out
        self.max_arity = max((len(k) for k in self.terms), default=0)
        self._check_structure()

    def _check_structure(self) -> None:
        s, t = self.source, self.target
        for inputs, out in self.terms.items():
            x0, xd = s.composable_ends(inputs)
            deg = t.norm(sum(s.deg(x) for x in inputs) + 1 - len(inputs))
            for y in out:
                g = t.gens[y]
                if (g.source, g.target) != (self.object_map[x0], self.object_map[xd]):
                    raise DegreeViolation(f"F{inputs} -> {y!r} lands in the wrong hom space")
                if g.degree != deg:
                    raise DegreeViolation(f"F^{len(inputs)}{inputs} -> {y!r}: degree {g.degree}, "
                                          f"expected {deg}")

    def apply_basis(self, inputs: tuple) -> dict:
        return self.terms.get(tuple(inputs), {})

    @classmethod
    def identity(cls, c: AInfCategory) -> "AInfFunctor":
        return cls(c, c, {x: x for x in c.objects}, {(x,): {x: 1} for x in c.gens}, "id")


def _functor_composites(f: AInfFunctor) -> dict:
    """sum_r mu'^r(F(...), ..., F(...)) accumulated per source input tuple."""
    s, t = f.source, f.target
    F = t.field
    by_output: dict[str, list] = {}
    for inputs, out in f.terms.items():
        for y, c in out.items():
            by_output.setdefault(y, []).append((inputs, c))
    acc: dict[tuple, dict] = {}
    for key, val in t.mu.items():
        choices = [by_output.get(y, ()) for y in key]
        if not all(choices):
            continue
        for combo in product(*choices):
            word = tuple(x for ins, _ in combo for x in ins)
            if not s.is_composable(word):
                continue
            coef = F.one
            for _, cc in combo:
                coef = coef * cc
            vec_add(acc.setdefault(word, {}), val, F.reduce(coef), F)
    return acc


def check_functor(f: AInfFunctor, max_failures: int = 5) -> ValidationReport:
    s, t = f.source, f.target
    F = t.field
    f._check_structure()
    lhs = _functor_composites(f)
    rhs = _relation_residuals(s, s.mu, f.terms, s.red)
    words = set(lhs) | set(rhs)
    fails = []
    for w in words:
        diff = dict(lhs.get(w, {}))
        vec_add(diff, rhs.get(w, {}), F.neg(F.one), F)
        if diff:
            fails.append((w, lhs.get(w, {}), rhs.get(w, {})))
    fails.sort(key=lambda e: s.sort_key(e[0]))
    report = ValidationReport("functor", not fails, checked=len(words))
    for w, l, r in fails[:max_failures]:
        report.failures.append({"inputs": list(w), "composite_side": l, "insertion_side": r})
    return report


def gauge_transport(c: AInfCategory, higher: Mapping, max_arity: int, name: str = ""):
    """Transport ``c`` along G = id + (higher terms) to get (c', G: c -> c').

    ``higher`` gives the terms G^d for d >= 2 (sparse, degree 1 - d).  The new
    operations are solved arity by arity from the functor equation, so G is an
    A-infinity functor by construction; ``max_arity`` must bound the arities
    where the transported operations can be nonzero (checked on return).
    """
    F = c.field
    terms = {(x,): {x: F.one} for x in c.gens}
    for k, v in higher.items():
        terms[tuple(k)] = {y: F(a) for y, a in v.items()}
    # G applied to mu-insertions: the right-hand side of the functor equation
    stub = AInfFunctor(c, c, {x: x for x in c.objects}, terms)
    rhs = _relation_residuals(c, c.mu, stub.terms, c.red)
    by_output: dict[str, list] = {}
    for inputs, out in stub.terms.items():
        if len(inputs) > 1:
            for y, a in out.items():
                by_output.setdefault(y, []).append((inputs, a))
    new_mu: dict[tuple, dict] = {}
    for n in range(1, max_arity + 1):
        for word in c.composable_words(n):
            val = dict(rhs.get(word, {}))
            # subtract mu'(G(...), ..., G(...)) over non-trivial segmentations
            for parts in _compositions(n):
                if all(p == 1 for p in parts):
                    continue
                pos, choices = 0, []
                for p in parts:
                    seg = word[pos:pos + p]
                    choices.append(list(stub.terms.get(seg, {}).items()))
                    pos += p
                if not all(choices):
                    continue
                for combo in product(*choices):
                    mval = new_mu.get(tuple(y for y, _ in combo))
                    if not mval:
                        continue
                    coef = F.one
                    for _, a in combo:
                        coef = coef * a
                    vec_add(val, mval, F.neg(F.reduce(coef)), F)
            if val:
                new_mu[word] = val
    for word, val in rhs.items():
        if len(word) > max_arity and val:
            raise ValueError("max_arity too small for the transported structure")
    target = c.replace(mu=new_mu, name=name or (c.name + "'"))
    return target, AInfFunctor(c, target, {x: x for x in c.objects}, terms, "gauge")


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest
