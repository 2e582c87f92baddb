"""Cyclic bar complex, non-unital Hochschild complex and its circle action.

A word is a tuple ``(x_d, ..., x_{1})`` of generator labels, written left to
right as in ``x_d (x) ... (x) x_1``; basis labels of the non-unital complex are
``("c", word)`` (check copy) and ``("h", word)`` (hat copy, degree shifted down
by one).  Every word has at least one letter: the chain of length one
``x`` is the smallest Hochschild chain.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .ainfty import AInfCategory, AInfFunctor, augment_units, strip_units
from .core import (GradedVectorSpace, SparseLinearMap, TruncatedComplex, Z, rank,
                   vec_add, vec_add_term)
from .errors import MissingUnit, TruncationTooSmall

__all__ = ["CHECK", "HAT", "is_cyclic", "word_degree", "cyclic_words", "b_word", "bprime_word",
           "dcheck_word", "t_word", "s_nu_sign", "NuComplex", "certification_bound",
           "reduced_certification_bound", "build_nu", "build_hochschild", "ReducedComplex",
           "build_reduced", "f_bijection", "reduced_B", "check_f_conjugation",
           "fsharp_prime_word", "fsharp_word", "functor_pushforward", "check_pushforward"]

CHECK, HAT = "c", "h"


def _sum(r, a, b):
    """sum of r[a..b] with 1-based inclusive indices (r[0] unused)."""
    return sum(r[a:b + 1]) if b >= a else 0


def is_cyclic(c: AInfCategory, word: tuple) -> bool:
    return c.is_composable(word) and c.gens[word[-1]].source == c.gens[word[0]].target


def word_degree(c: AInfCategory, word: tuple) -> int:
    return c.norm(c.deg(word[0]) + sum(c.red(x) for x in word[1:]))


def cyclic_words(c: AInfCategory, L: int) -> list[tuple]:
    out = []
    for n in range(1, L + 1):
        out.extend(w for w in c.composable_words(n) if is_cyclic(c, w))
    return out


# -- the operators on single words --------------------------------------------

def b_word(c: AInfCategory, w: tuple) -> dict:
    """Cyclic bar differential of a check word (returns {word: coef})."""
    F = c.field
    d = len(w)
    x = (None,) + tuple(reversed(w))          # x[i] is x_i
    r = [0] + [c.red(x[i]) for i in range(1, d + 1)]
    out: dict = {}
    for k in range(d):                        # wrap-around terms contain x_d
        for i in range(d - k):
            inputs = tuple(x[j] for j in range(k, 0, -1)) + tuple(x[j] for j in range(d, k + i, -1))
            val = c.mu.get(inputs)
            if not val:
                continue
            sgn = F.sign(_sum(r, 1, k) * (1 + _sum(r, k + 1, d)) + _sum(r, k + 1, d - 1) + 1)
            rest = tuple(x[j] for j in range(k + i, k, -1))
            for y, v in val.items():
                vec_add_term(out, (y,) + rest, sgn * v, F)
    _inner_terms(c, w, r, d - 1, out)
    return out


def _inner_terms(c, w, r, top, out) -> None:
    """sum (-1)^{✠_1^s} (..., mu^j(x_{s+j}, ..., x_{s+1}), x_s, ...) with s + j <= top."""
    F = c.field
    d = len(w)
    for s in range(d):
        sgn = F.sign(_sum(r, 1, s))
        for j in range(1, top - s + 1):
            val = c.mu.get(w[d - s - j:d - s])
            if not val:
                continue
            head, tail = w[:d - s - j], w[d - s:]
            for y, v in val.items():
                vec_add_term(out, head + (y,) + tail, sgn * v, F)


def bprime_word(c: AInfCategory, w: tuple) -> dict:
    """Bar differential (no wrap-around terms)."""
    d = len(w)
    r = [0] + [c.red(x) for x in reversed(w)]
    out: dict = {}
    _inner_terms(c, w, r, d, out)
    return out


def dcheck_word(c: AInfCategory, w: tuple) -> dict:
    """The hat-to-check component of the non-unital differential."""
    F = c.field
    d = len(w)
    r = [0] + [c.red(x) for x in reversed(w)]
    a = _sum(r, 2, d)
    out: dict = {}
    vec_add_term(out, (w[-1],) + w[:-1], F.sign(a + r[1] * a + 1), F)
    vec_add_term(out, w, F.sign(_sum(r, 1, d - 1)), F)
    return out


def t_word(c: AInfCategory, w: tuple) -> tuple:
    """(sign exponent, rotated word) for the cyclic permutation operator."""
    k = len(w)
    r = [0] + [c.red(x) for x in reversed(w)]
    return r[1] * _sum(r, 2, k) + r[1] + r[k], (w[-1],) + w[:-1]


def s_nu_sign(c: AInfCategory, w: tuple) -> int:
    r = [c.red(x) for x in w]
    return sum(r) + r[0] + 1


# -- the complex ---------------------------------------------------------------

@dataclass
class NuComplex:
    """The length-filtered piece CH^nu_{<=L} with its operators.

    ``complex`` is the :class:`TruncatedComplex` with differential ``b^nu``.
    Words are all cyclic words of length at most ``L``; the degree window is
    metadata used when reporting homology.
    """
    category: AInfCategory
    L: int
    window: tuple | None
    space: GradedVectorSpace
    check_words: list
    certified: bool = False
    notes: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def field(self):
        return self.category.field

    def _map(self, name, degree, fn) -> SparseLinearMap:
        if name not in self._cache:
            cols = {}
            for lab in self.space.labels:
                col = fn(lab)
                if col:
                    cols[lab] = col
            self._cache[name] = SparseLinearMap(self.space, self.space, degree, cols, self.field)
        return self._cache[name]

    # individual operators, as maps on the whole space (zero on the other sector)
    @property
    def b(self):
        c = self.category
        return self._map("b", 1, lambda lab: _tag(CHECK, b_word(c, lab[1])) if lab[0] == CHECK else {})

    @property
    def bprime(self):
        c = self.category
        return self._map("b'", 1, lambda lab: _tag(HAT, bprime_word(c, lab[1])) if lab[0] == HAT else {})

    @property
    def dcheck(self):
        c = self.category
        return self._map("d", 1, lambda lab: _tag(CHECK, dcheck_word(c, lab[1])) if lab[0] == HAT else {})

    @property
    def b_nu(self):
        if "b_nu" not in self._cache:
            self._cache["b_nu"] = self.b + self.bprime + self.dcheck
        return self._cache["b_nu"]

    @property
    def t(self):
        c, F = self.category, self.field

        def col(lab):
            if lab[0] != CHECK:
                return {}
            e, w = t_word(c, lab[1])
            return {(CHECK, w): F.sign(e)}
        return self._map("t", 0, col)

    @property
    def N(self):
        c, F = self.category, self.field

        def col(lab):
            if lab[0] != CHECK:
                return {}
            out: dict = {}
            w, e = lab[1], 0
            for _ in range(len(lab[1])):
                vec_add_term(out, (CHECK, w), F.sign(e), F)
                de, w = t_word(c, w)
                e += de
            return out
        return self._map("N", 0, col)

    @property
    def s_nu(self):
        c, F = self.category, self.field
        return self._map("s_nu", -1, lambda lab: {(HAT, lab[1]): F.sign(s_nu_sign(c, lab[1]))}
                         if lab[0] == CHECK else {})

    @property
    def B_nu(self):
        if "B_nu" not in self._cache:
            self._cache["B_nu"] = self.s_nu @ self.N
        return self._cache["B_nu"]

    @property
    def complex(self) -> TruncatedComplex:
        if "complex" not in self._cache:
            self._cache["complex"] = TruncatedComplex(
                self.space, self.b_nu, {"length_bound": self.L, "window": self.window},
                self.certified, dict(self.notes))
        return self._cache["complex"]

    def check_subcomplex(self) -> TruncatedComplex:
        """The check sector with differential b."""
        sub = GradedVectorSpace([(l, self.space.degree(l)) for l in self.space.labels
                                 if l[0] == CHECK], self.space.mode)
        return TruncatedComplex(sub, self.b.restrict(sub, sub),
                                {"length_bound": self.L, "window": self.window},
                                self.certified, dict(self.notes))

    def identities(self) -> dict[str, bool]:
        """The exact operator identities of the strict circle action."""
        b, bp, bn, B = self.b, self.bprime, self.b_nu, self.B_nu
        one = SparseLinearMap.identity(self.space, self.field)
        chk = _sector_projection(self.space, CHECK, self.field)
        return {
            "b^2": (b @ b).is_zero(),
            "b'^2": (bp @ bp).is_zero(),
            "b_nu^2": (bn @ bn).is_zero(),
            "B_nu^2": (B @ B).is_zero(),
            "b_nu B_nu + B_nu b_nu": (bn @ B + B @ bn).is_zero(),
            "N(1-t)": (self.N @ (chk - self.t)).is_zero(),
            "(1-t)N": ((chk - self.t) @ self.N).is_zero(),
        }


def _tag(sector, vec: dict) -> dict:
    return {(sector, w): v for w, v in vec.items()}


def _sector_projection(space, sector, F) -> SparseLinearMap:
    return SparseLinearMap(space, space, 0, {l: {l: F.one} for l in space.labels if l[0] == sector}, F)


def certification_bound(c: AInfCategory, window, hat_shift: int = 1) -> int | None:
    """Smallest L that captures every word of degree <= b + 1, or None.

    Needs Z grading and reduced degree >= 1 on all non-unit generators; words
    then have degree >= m + (d - 1) where m is the least admissible degree of
    the first letter, so length grows linearly with degree.
    """
    if c.mode != Z or window is None:
        return None
    units = c.unit_labels()
    nonunits = [g for lab, g in c.gens.items() if lab not in units]
    if any(g.degree - 1 < 1 for g in nonunits):
        return None
    if units:
        return None
    firsts = [g.degree for g in nonunits]
    if not firsts:
        return 1
    m = min(firsts) - hat_shift
    rmin = min((g.degree - 1 for g in nonunits), default=1)
    top = window[1] + 1
    return max(1, (top - m) // rmin + 1)


def reduced_certification_bound(c: AInfCategory, window) -> int | None:
    """Least number of non-unit letters that captures every reduced word of degree <= b + 1.

    A reduced word with n non-unit letters has degree >= n * r_min, where
    r_min is the least reduced degree of a non-unit generator.
    """
    if c.mode != Z or window is None:
        return None
    units = c.unit_labels()
    reds = [g.degree - 1 for lab, g in c.gens.items() if lab not in units]
    if any(r < 1 for r in reds):
        return None
    if not reds:
        return 1
    return max(1, (window[1] + 1) // min(reds))


def _space(c: AInfCategory, words: Iterable[tuple], hat: bool = True) -> GradedVectorSpace:
    words = list(words)
    basis = [((CHECK, w), word_degree(c, w)) for w in words]
    if hat:
        basis += [((HAT, w), c.norm(word_degree(c, w) - 1)) for w in words]
    return GradedVectorSpace(basis, c.mode)


def build_nu(c: AInfCategory, L: int, window=None, require_certified: bool = False) -> NuComplex:
    """CH^nu of ``c`` restricted to words of length <= L."""
    words = cyclic_words(c, L)
    bound = certification_bound(c, window)
    certified = bound is not None and L >= bound
    if require_certified and not certified:
        raise TruncationTooSmall(
            f"window {window} needs L >= {bound}" if bound else "no certified truncation exists")
    notes = {"model": "nu", "required_L": bound}
    return NuComplex(c, L, tuple(window) if window else None, _space(c, words), words,
                     certified, notes)


def build_hochschild(c: AInfCategory, L: int, window=None, require_certified: bool = False):
    """The check sector (CH, b) of :func:`build_nu`."""
    return build_nu(c, L, window, require_certified).check_subcomplex()


# -- reduced complex of a strictly unital category ------------------------------

@dataclass
class ReducedComplex:
    """Normalized Hochschild complex with B = sN.

    Basis: words whose letters after the first are not units, with at most
    ``L`` non-unit letters.  With
    ``drop_units`` the length-one unit words are removed as well, which is the
    quotient matched with CH^nu of the non-unital part by ``f``.
    """
    category: AInfCategory
    L: int
    window: tuple | None
    space: GradedVectorSpace
    differential: SparseLinearMap
    B: SparseLinearMap
    certified: bool
    notes: dict

    @property
    def complex(self) -> TruncatedComplex:
        return TruncatedComplex(self.space, self.differential,
                                {"length_bound": self.L, "window": self.window},
                                self.certified, dict(self.notes))


def _s_word(c, w, unit):
    r = [0] + [c.red(x) for x in reversed(w)]
    k = len(w)
    return r[k] + _sum(r, 1, k) + 1, (unit,) + w


def build_reduced(c: AInfCategory, L: int, window=None, drop_units: bool = False,
                  require_certified: bool = False) -> ReducedComplex:
    if not c.units:
        raise MissingUnit("reduced complex needs strict units")
    F = c.field
    units = c.unit_labels()
    # L bounds the number of non-unit letters, so a leading unit may push the
    # length to L + 1; this piece is closed under b and B = sN.
    words = [w for w in cyclic_words(c, L + 1) if not units.intersection(w[1:])
             and len(w) - (w[0] in units) <= L]
    if drop_units:
        words = [w for w in words if not (len(w) == 1 and w[0] in units)]
    space = GradedVectorSpace([(w, word_degree(c, w)) for w in words], c.mode)
    keep = set(words)

    def proj(vec):
        return {k: v for k, v in vec.items() if k in keep}

    diff = SparseLinearMap(space, space, 1, {w: proj(b_word(c, w)) for w in words}, F)
    cols = {}
    for w in words:
        if w[0] in units:
            continue
        unit = c.units[c.gens[w[0]].target]
        col: dict = {}
        cur, e = w, 0
        for _ in range(len(w)):
            if not units.intersection(cur[1:]) and cur[0] not in units:
                se, sw = _s_word(c, cur, unit)
                vec_add_term(col, sw, F.sign(e + se), F)
            de, cur = t_word(c, cur)
            e += de
        cols[w] = proj(col)
    B = SparseLinearMap(space, space, -1, cols, F)
    bound = reduced_certification_bound(c, window)
    certified = bound is not None and L >= bound
    if require_certified and not certified:
        raise TruncationTooSmall(
            f"window {window} needs L >= {bound}" if bound else "no certified truncation exists")
    notes = {"model": "reduced", "required_L": bound}
    return ReducedComplex(c, L, tuple(window) if window else None, space, diff, B, certified, notes)


def f_bijection(red: ReducedComplex, nu: NuComplex) -> SparseLinearMap:
    """f(e+ x_{k-1} ... x_1) = hat(x_{k-1} ... x_1), f(y) = check(y) otherwise."""
    units = red.category.unit_labels()
    F = red.category.field
    cols = {}
    for w in red.space.labels:
        if w[0] in units:
            tgt = (HAT, w[1:])
        else:
            tgt = (CHECK, w)
        if tgt in nu.space:
            cols[w] = {tgt: F.one}
    return SparseLinearMap(red.space, nu.space, 0, cols, F)


def reduced_B(c: AInfCategory, L: int, window=None):
    """(reduced complex of c, B^red, f) with f matching CH^nu of the non-unital part.

    ``c`` must be strictly unital with units adjoined (non-unit letters closed
    under mu), e.g. the output of :func:`augment_units`.
    """
    if not c.units:
        raise MissingUnit("reduced_B needs strict units")
    red = build_reduced(c, L, window, drop_units=True)
    base = strip_units(c)
    nu = build_nu(base, L - 1, window)
    f = _f_lengthwise(red, nu)
    return red, red.B, f, nu


def _f_lengthwise(red, nu):
    """f restricted to reduced words whose image lies in the L-1 piece of CH^nu."""
    units = red.category.unit_labels()
    keep = [w for w in red.space.labels if w[0] in units or len(w) <= nu.L]
    sub = GradedVectorSpace([(w, red.space.degree(w)) for w in keep], red.space.mode)
    return f_bijection(_restrict_reduced(red, sub), nu), sub


def _restrict_reduced(red, sub):
    return ReducedComplex(red.category, red.L, red.window, sub, red.differential.restrict(sub, sub),
                          red.B.restrict(sub, sub), red.certified, red.notes)


def check_f_conjugation(c: AInfCategory, L: int) -> dict[str, bool]:
    """Entrywise check that f intertwines (b_red, B_red) with (b_nu, B_nu).

    The reduced words of length <= L correspond under f to CH^nu words of
    length <= L - 1 (hat) and <= L (check); we compare on the common part,
    i.e. reduced words mapping into CH^nu_{<= L-1}.
    """
    red = build_reduced(c, L, drop_units=True)
    nu = build_nu(strip_units(c), L - 1)
    units = c.unit_labels()
    F = c.field
    fmap = {}
    for w in red.space.labels:
        tgt = (HAT, w[1:]) if w[0] in units else (CHECK, w)
        if tgt in nu.space:
            fmap[w] = tgt
    inv = {v: k for k, v in fmap.items()}
    ok_b = ok_B = True
    for w, tgt in fmap.items():
        for op_red, op_nu, key in ((red.differential, nu.b_nu, "b"), (red.B, nu.B_nu, "B")):
            lhs = {fmap.get(k, ("?", k)): v for k, v in op_red.col(w).items()}
            rhs = op_nu.col(tgt)
            if lhs != rhs:
                if key == "b":
                    ok_b = False
                else:
                    ok_B = False
    return {"f b_red = b_nu f": ok_b, "f B_red = B_nu f": ok_B, "size": len(fmap),
            "bijective": len(inv) == len(fmap) == len(nu.space)}


# -- functoriality ---------------------------------------------------------------

def _segmentations(n: int, max_seg: int):
    """Compositions of n into parts of size <= max_seg (left to right)."""
    if n == 0:
        yield ()
        return
    for first in range(1, min(n, max_seg) + 1):
        for rest in _segmentations(n - first, max_seg):
            yield (first,) + rest


def _apply_segments(f: AInfFunctor, word: tuple, parts) -> dict:
    F = f.target.field
    pieces = []
    pos = 0
    for p in parts:
        val = f.apply_basis(word[pos:pos + p])
        if not val:
            return {}
        pieces.append(list(val.items()))
        pos += p
    out: dict = {}
    for combo in product(*pieces):
        coef = F.one
        for _, v in combo:
            coef = coef * v
        vec_add_term(out, tuple(y for y, _ in combo), coef, F)
    return out


def fsharp_prime_word(f: AInfFunctor, w: tuple) -> dict:
    """Bar-complex pushforward: sum over segmentations, no signs."""
    out: dict = {}
    for parts in _segmentations(len(w), max(f.max_arity, 1)):
        vec_add(out, _apply_segments(f, w, parts), f.target.field.one, f.target.field)
    return out


def fsharp_word(f: AInfFunctor, w: tuple) -> dict:
    """Cyclic pushforward: the first segment contains x_d and may wrap around.

    For the first segment (x_k, ..., x_1, x_d, ..., x_m) the sign exponent is
    ✠_m^{d-1} + ✠_1^k (1 + ✠_{k+1}^d): the Koszul sign of rotating x_k ... x_1
    to the front, with x_d in its unshifted degree, plus the letters that
    join x_d inside the segment.
    """
    s = f.source
    F = f.target.field
    d = len(w)
    r = [0] + [s.red(x) for x in reversed(w)]
    out: dict = {}
    D = max(f.max_arity, 1)
    for k in range(0, min(d, D)):
        rot = w[d - k:] + w[:d - k]           # (x_k..x_1, x_d..x_{k+1})
        rotation = _sum(r, 1, k) * (1 + _sum(r, k + 1, d))
        for parts in _segmentations(d, D):
            if parts[0] < k + 1:
                continue
            m = d - (parts[0] - k) + 1
            sgn = F.sign(rotation + _sum(r, m, d - 1))
            vec_add(out, _apply_segments(f, rot, parts), sgn, F)
    return out


def functor_pushforward(f: AInfFunctor, L: int, window=None, source: NuComplex | None = None,
                        target: NuComplex | None = None) -> SparseLinearMap:
    """F_sharp^nu = (F_sharp, F_sharp') between the length <= L pieces."""
    source = source or build_nu(f.source, L, window)
    target = target or build_nu(f.target, L, window)
    cols = {}
    for lab in source.space.labels:
        sector, w = lab
        img = fsharp_word(f, w) if sector == CHECK else fsharp_prime_word(f, w)
        col = {}
        for y, v in img.items():
            if (sector, y) not in target.space:
                raise TruncationTooSmall(f"image word {y} is not in the target truncation")
            col[(sector, y)] = v
        cols[lab] = col
    return SparseLinearMap(source.space, target.space, 0, cols, f.target.field)


def check_pushforward(f: AInfFunctor, L: int) -> dict[str, bool]:
    src, tgt = build_nu(f.source, L), build_nu(f.target, L)
    Fs = functor_pushforward(f, L, source=src, target=tgt)
    return {"chain map": (Fs @ src.b_nu - tgt.b_nu @ Fs).is_zero(),
            "commutes with B": (Fs @ src.B_nu - tgt.B_nu @ Fs).is_zero()}
