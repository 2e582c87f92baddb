"""Calabi-Yau checks: traces, bimodules, Hochschild cochains and cap products.

Bimodule elements are treated as letters.  An element of ``P(K, L)`` sits in
a composable word like a morphism ``L -> K``; its reduced degree is
``|p| - 1`` and the bimodule equations are the A-infinity equations on words
with exactly one such letter.  Conventions (checked by :func:`validate_bimodule`
on every fixture):

* diagonal: ``P(K, L) = hom(L, K)``, actions are ``mu`` itself;
* Yoneda ``Y^l_A (x) Y^r_B``: ``P(K, L) = hom(A, K) (x) hom(L, B)``,
  ``mu(a_s..a_1, alpha(x)beta) = (-1)^{|beta|} mu(a_s..a_1, alpha) (x) beta`` and
  ``mu(alpha(x)beta, b_1..b_t) = alpha (x) mu(beta, b_1..b_t)``;
* dual diagonal ``C^v[n]``: ``P(K, L) = hom(K, L)^v`` with ``|x^v| = n - |x|`` and
  ``mu(a_s..a_1, x^v, b_1..b_t) = sum_y (-1)^{|y| + n ||a||} <x^v, mu(b_1..b_t, y, a_s..a_1)> y^v``.

Hochschild cochains use the Gerstenhaber-type differential
``delta phi = mu o phi - (-1)^{||phi||} phi o mu`` where ``f o g`` inserts ``g``
with sign ``(-1)^{||g|| (||x_1|| + ... + ||x_n||)}`` (``x_1..x_n`` to its right).
A cochain sending a word to ``p`` has degree ``|p| - sum ||x_i||``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .ainfty import AInfCategory, ValidationReport, _relation_residuals
from .core import (GradedVectorSpace, SparseLinearMap, TruncatedComplex, homology_groups,
                   rank, vec_add, vec_add_term, window_degrees)
from .core.linalg import Echelon
from .errors import DegreeMismatch, NotACycle, TruncationTooSmall
from .hochschild import CHECK, HAT, build_nu, cyclic_words, b_word, word_degree

__all__ = ["AInfBimodule", "validate_bimodule", "diagonal_bimodule", "dual_diagonal",
           "yoneda_bimodule", "zero_bimodule", "hochschild_cochains", "CochainComplex",
           "cap_product", "cap_word", "check_cap_chain_map", "hom_homology", "TraceData", "CotraceData", "CYVerdict",
           "weak_proper_cy_check", "strong_proper_cy_check", "weak_smooth_cy_check",
           "smooth_cy_lift_check", "PASS", "FAIL"]

PASS, FAIL = "PASS", "FAIL"


# -- bimodules ----------------------------------------------------------------------

@dataclass
class AInfBimodule:
    """Finite A-infinity bimodule with sparse actions.

    ``basis``: label -> (K, L, degree) for the element's space ``P(K, L)``.
    ``actions``: (a_s, .., a_1, p, b_1, .., b_t) -> {label: coefficient}.
    Labels are tuples, so they never collide with generator labels.
    """
    over: AInfCategory
    basis: dict
    actions: dict
    name: str = ""
    validate: bool = True

    def __post_init__(self):
        self.actions = {k: v for k, v in self.actions.items() if v}
        if self.validate:
            report = validate_bimodule(self)
            if not report:
                raise ValueError(f"bimodule {self.name!r} fails its equations: {report.first}")

    def red(self, x) -> int:
        return self.basis[x][2] - 1 if isinstance(x, tuple) else self.over.red(x)

    def deg(self, x) -> int:
        return self.basis[x][2] if isinstance(x, tuple) else self.over.deg(x)

    def space(self, K: str, L: str) -> GradedVectorSpace:
        return GradedVectorSpace([(p, d) for p, (k, l, d) in self.basis.items() if (k, l) == (K, L)],
                                 self.over.mode)

    def dims(self) -> dict:
        out: dict = {}
        for k, l, _ in self.basis.values():
            out[(k, l)] = out.get((k, l), 0) + 1
        return out

    def by_frame(self) -> dict:
        """(left letters, right letters) -> [(p, output vector)]."""
        idx: dict = {}
        for key, out in self.actions.items():
            j = next(i for i, x in enumerate(key) if isinstance(x, tuple))
            idx.setdefault((key[:j], key[j + 1:]), []).append((key[j], out))
        return idx


def validate_bimodule(P: AInfBimodule, max_failures: int = 5) -> ValidationReport:
    """Exact bimodule equations: every word with one bimodule letter."""
    c = P.over
    combined = dict(c.mu)
    combined.update(P.actions)
    res = _relation_residuals(c, combined, combined, P.red)
    fails = [(k, v) for k, v in res.items() if any(isinstance(x, tuple) for x in k)]
    fails.sort(key=lambda kv: (len(kv[0]), repr(kv[0])))
    report = ValidationReport("bimodule", not fails, checked=len(P.actions))
    for word, vec in fails[:max_failures]:
        report.failures.append({"inputs": list(word), "residual": vec})
    return report


def _accumulate(act, key, y, v, F):
    d = act.setdefault(key, {})
    d[y] = F.reduce(d.get(y, 0) + v)


def diagonal_bimodule(c: AInfCategory) -> AInfBimodule:
    basis = {("D", x): (g.target, g.source, g.degree) for x, g in c.gens.items()}
    act: dict = {}
    for inputs, out in c.mu.items():
        for j in range(len(inputs)):
            key = inputs[:j] + (("D", inputs[j]),) + inputs[j + 1:]
            for y, v in out.items():
                _accumulate(act, key, ("D", y), v, c.field)
    return AInfBimodule(c, basis, _clean(act), name=f"diag({c.name})")


def dual_diagonal(c: AInfCategory, n: int) -> AInfBimodule:
    basis = {("V", x): (g.source, g.target, n - g.degree) for x, g in c.gens.items()}
    F = c.field
    act: dict = {}
    for inputs, out in c.mu.items():
        for j, y in enumerate(inputs):
            bs, as_ = inputs[:j], inputs[j + 1:]
            e = c.deg(y) + n * sum(c.red(a) for a in as_)
            for x, v in out.items():
                _accumulate(act, as_ + (("V", x),) + bs, ("V", y), F.sign(e) * v, F)
    return AInfBimodule(c, basis, _clean(act), name=f"dual({c.name})[{n}]")


def yoneda_bimodule(c: AInfCategory, A: str, B: str) -> AInfBimodule:
    """Y^l_A (x) Y^r_B: P(K, L) = hom(A, K) (x) hom(L, B)."""
    F = c.field
    basis = {("Y", a.label, b.label): (a.target, b.source, a.degree + b.degree)
             for a in c.gens.values() if a.source == A
             for b in c.gens.values() if b.target == B}
    lefts: dict = {}
    rights: dict = {}
    for p in basis:
        lefts.setdefault(p[1], []).append(p)
        rights.setdefault(p[2], []).append(p)
    act: dict = {}
    for inputs, out in c.mu.items():
        for p in lefts.get(inputs[-1], ()):
            sign = F.sign(c.deg(p[2]))
            for y, v in out.items():
                _accumulate(act, inputs[:-1] + (p,), ("Y", y, p[2]), sign * v, F)
        for p in rights.get(inputs[0], ()):
            for y, v in out.items():
                _accumulate(act, (p,) + inputs[1:], ("Y", p[1], y), v, F)
    return AInfBimodule(c, basis, _clean(act), name=f"Y({A},{B})")


def zero_bimodule(c: AInfCategory) -> AInfBimodule:
    return AInfBimodule(c, {}, {}, name="0")


def _clean(act):
    return {k: {y: v for y, v in d.items() if v != 0} for k, d in act.items()}


# -- Hochschild cochains -------------------------------------------------------------

def _ends(c, w, K=None):
    """(target, source) of a composable word; the empty word needs ``K``."""
    if not w:
        return K, K
    return c.gens[w[0]].target, c.gens[w[-1]].source


@dataclass
class CochainComplex:
    """Length-<= L quotient of CH^*(C, P) in degrees window +- 1."""
    category: AInfCategory
    bimodule: AInfBimodule
    L: int
    window: tuple
    complex: TruncatedComplex
    certified: bool
    notes: dict = field(default_factory=dict)

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


def _cochain_degree(c, P, w, p) -> int:
    return P.basis[p][2] - sum(c.red(x) for x in w)


def _cochain_bound(c: AInfCategory, P: AInfBimodule, window, normalized: bool) -> int | None:
    """Longest word whose cochains reach degree >= a - 1, if reduced degrees are >= 1."""
    skip = c.unit_labels() if normalized else set()
    if c.mode != "Z" or any(c.red(x) < 1 for x in c.gens if x not in skip):
        return None
    top = max((d for _, _, d in P.basis.values()), default=0)
    return max(0, top - (window[0] - 1))


def hochschild_cochains(c: AInfCategory, P: AInfBimodule, L: int, window,
                        normalized: bool | None = None,
                        require_certified: bool = False) -> CochainComplex:
    """Cochains on words of length <= L with values in P; d^2 = 0 is checked exactly.

    ``normalized`` (default: whenever ``c`` has strict units) keeps only
    cochains vanishing on words that contain a unit, a quasi-isomorphic
    subcomplex without the unit-word artifacts at the top length.
    """
    F = c.field
    a, b = window
    if normalized is None:
        normalized = bool(c.units)
    units = c.unit_labels() if normalized else set()
    bound = _cochain_bound(c, P, window, normalized)
    certified = bound is not None and L >= bound
    if require_certified and not certified:
        raise TruncationTooSmall(
            f"cochains on window {window} need L >= {bound}" if bound is not None
            else "no certified truncation exists (a generator has reduced degree < 1)")
    targets: dict = {}
    for p, (K, Lo, _) in P.basis.items():
        targets.setdefault((K, Lo), []).append(p)
    words = [()] + [w for n in range(1, L + 1) for w in c.composable_words(n)
                    if not units.intersection(w)]
    basis = []
    for w in words:
        if w:
            keys = [_ends(c, w)]
        else:
            keys = [(X, X) for X in c.objects]
        for key in keys:
            for p in targets.get(key, ()):
                d = _cochain_degree(c, P, w, p)
                if a - 1 <= d <= b + 1:
                    basis.append(((w, p), d))
    space = GradedVectorSpace(basis, c.mode)
    frames = P.by_frame()
    cols: dict = {}

    def add(col_key, row_key, v):
        if col_key in space and row_key in space:
            vec_add_term(cols.setdefault(col_key, {}), row_key, v, F)

    for W in words:
        n = len(W)
        keysW = [_ends(c, W)] if W else [(X, X) for X in c.objects]
        for key in keysW:
            for q in targets.get(key, ()):
                row = (W, q)
                if row not in space:
                    continue
                # mu o phi: mu_P(left, phi(S), right)
                for i in range(n + 1):
                    for j in range(i, n + 1):
                        left, S, right = W[:i], W[i:j], W[j:]
                        for p, out in frames.get((left, right), ()):
                            v = out.get(q)
                            if v is None or (S, p) not in space:
                                continue
                            if not S and P.basis[p][0] != P.basis[p][1]:
                                continue
                            red_phi = _cochain_degree(c, P, S, p) - 1
                            e = red_phi * sum(c.red(x) for x in right)
                            add((S, p), row, F.sign(e) * v)
                # -(-1)^{||phi||} phi o mu: phi(left, mu(S), right)
                for i in range(n):
                    for j in range(i + 1, n + 1):
                        S = W[i:j]
                        prod = c.mu.get(S)
                        if not prod:
                            continue
                        right = W[j:]
                        for y, v in prod.items():
                            W2 = W[:i] + (y,) + right
                            if (W2, q) not in space:
                                continue
                            red_phi = _cochain_degree(c, P, W2, q) - 1
                            e = 1 + red_phi + sum(c.red(x) for x in right)
                            add((W2, q), row, F.sign(e) * v)
    d = SparseLinearMap(space, space, 1, {k: v for k, v in cols.items() if v}, F)
    notes = {"required_L": bound, "normalized": normalized}
    cx = TruncatedComplex(space, d, {"length_bound": L, "window": (a, b)}, certified, dict(notes))
    return CochainComplex(c, P, L, (a, b), cx, certified, notes)


# -- cap product ----------------------------------------------------------------------

def cap_word(c: AInfCategory, P: AInfBimodule, phi: Mapping, word: tuple) -> dict:
    """phi cap (x_d .. x_1) in hom(K, L) for Yoneda coefficients Y^l_K (x) Y^r_L.

    x_d is the coefficient slot.  For a segment S = (x_j .. x_{i+1}) avoiding it
    with phi(S) = alpha (x) beta, and each split point m in j+1 .. d:

        (-1)^e mu( mu(beta, x_i..x_1, x_d..x_m), x_{m-1}..x_{j+1}, alpha )

    With R1, S, R3, R2 the reduced degree sums of x_i..x_1, S, x_{m-1}..x_{j+1},
    x_{d-1}..x_m and D = ||x_d||:

        e = R1 + S + R3 + R2 + ||phi|| (R1 + R3 + D + |alpha|) + S (R3 + D + |alpha|) + D |alpha|

    ``phi`` maps (S, p) -> coefficient.
    """
    F = c.field
    if any(lab[0] != "Y" for lab in P.basis):
        raise ValueError("the cap product is implemented for Yoneda coefficients only")
    d = len(word)
    x = {k: word[d - k] for k in range(1, d + 1)}  # x[k] = x_k
    r = {k: c.red(x[k]) for k in x}
    out: dict = {}
    for (S, p), coef in phi.items():
        if not coef:
            continue
        _, al, be = p
        ls = len(S)
        red_phi = _cochain_degree(c, P, S, p) - 1
        da = c.deg(al)
        for i in range(0, d - ls):
            j = i + ls
            if tuple(x[k] for k in range(j, i, -1)) != S:
                continue
            R1, Sg = _rsum(r, 1, i), _rsum(r, i + 1, j)
            for m in range(j + 1, d + 1):
                inner = c.mu.get((be,) + tuple(x[k] for k in range(i, 0, -1))
                                 + tuple(x[k] for k in range(d, m - 1, -1)))
                if not inner:
                    continue
                mid = tuple(x[k] for k in range(m - 1, j, -1))
                R3, R2, D = _rsum(r, j + 1, m - 1), _rsum(r, m, d - 1), r[d]
                e = (R1 + Sg + R3 + R2 + red_phi * (R1 + R3 + D + da) + Sg * (R3 + D + da)
                     + D * da)
                for y, v in inner.items():
                    outer = c.mu.get((y,) + mid + (al,))
                    if outer:
                        vec_add(out, outer, F.sign(e) * F.reduce(coef * v), F)
    return out


def _rsum(r, lo, hi):
    return sum(r[k] for k in range(lo, hi + 1))


def cap_product(c: AInfCategory, P: AInfBimodule, phi: Mapping, sigma: Mapping) -> dict:
    """Bilinear extension of :func:`cap_word`; ``sigma`` maps words to coefficients."""
    F = c.field
    out: dict = {}
    for w, v in sigma.items():
        if v:
            vec_add(out, cap_word(c, P, phi, w), v, F)
    return out


def check_cap_chain_map(c: AInfCategory, P: AInfBimodule, L: int, window=(-20, 20)) -> ValidationReport:
    """cap(delta phi, s) + mu^1 cap(phi, s) + (-1)^{|phi|} cap(phi, b s) = 0 on all basis pairs.

    Uses unnormalized cochains and every cyclic word of length <= L, so every
    value involved is exact in the truncation.
    """
    F = c.field
    cc = hochschild_cochains(c, P, L, window, normalized=False)
    words = cyclic_words(c, L)
    report = ValidationReport("cap chain map", True)
    for col in cc.space.labels:
        phi = {col: F.one}
        dphi = cc.differential.col(col)
        sign = F.sign(cc.space.degree(col))
        for w in words:
            total = cap_word(c, P, dphi, w)
            cw = cap_word(c, P, phi, w)
            vec_add(total, _mu1(c, cw), F.one, F)
            vec_add(total, cap_product(c, P, phi, b_word(c, w)), sign, F)
            report.checked += 1
            if total:
                report.ok = False
                if len(report.failures) < 5:
                    report.failures.append({"cochain": col, "word": w, "residual": total})
    return report


def _mu1(c: AInfCategory, vec: Mapping) -> dict:
    out: dict = {}
    for x, v in vec.items():
        img = c.mu.get((x,))
        if img:
            vec_add(out, img, v, c.field)
    return out


# -- homology of morphism spaces ---------------------------------------------------------

def hom_homology(c: AInfCategory, K: str, L: str) -> dict:
    """degree -> HomologyGroup of (hom(K, L), mu^1)."""
    space = c.hom(K, L)
    cols = {x: dict(c.mu.get((x,), {})) for x in space.labels}
    d = SparseLinearMap(space, space, 1, {k: v for k, v in cols.items() if v}, c.field)
    return homology_groups(space, d, space.degrees())


def _hom_basis(groups: dict) -> list:
    """[(degree, index, representative)] over all degrees."""
    return [(deg, i, rep) for deg in sorted(groups) for i, rep in enumerate(groups[deg].representatives)]


# -- proper Calabi-Yau ----------------------------------------------------------------------

@dataclass
class TraceData:
    """tr~ = sum tr^k u^k; tr^k maps CH^nu basis labels to scalars and has degree -n - 2k."""
    terms: dict
    n: int

    def term(self, k: int) -> dict:
        return {_nu_label(w): v for w, v in self.terms.get(k, {}).items() if v}

    @property
    def K(self) -> int:
        return max(self.terms, default=-1)


@dataclass
class CotraceData:
    """sigma~ = sum sigma_k u^k in the fixed-point complex of CH^nu."""
    terms: dict
    n: int

    def term(self, k: int) -> dict:
        return {_nu_label(w): v for w, v in self.terms.get(k, {}).items() if v}

    @property
    def K(self) -> int:
        return max(self.terms, default=-1)


def _nu_label(w):
    """Accept plain words as check-sector labels."""
    if isinstance(w, tuple) and len(w) == 2 and w[0] in (CHECK, HAT) and isinstance(w[1], tuple):
        return w
    return (CHECK, tuple(w) if not isinstance(w, str) else (w,))


@dataclass
class CYVerdict:
    check: str
    verdict: str
    details: dict = field(default_factory=dict)
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.verdict == PASS


def _label_degree(c, label) -> int:
    sector, w = label
    d = word_degree(c, w)
    return d if sector == CHECK else c.norm(d - 1)


def weak_proper_cy_check(c: AInfCategory, tr0: Mapping, n: int) -> CYVerdict:
    """Non-degeneracy of (a, b) -> tr[mu^2(a, b)] on H(hom(X, Y)) x H(hom(Y, X))."""
    F = c.field
    tr = {_nu_label(w): F(v) for w, v in tr0.items() if F(v) != 0}
    for label in tr:
        if label[0] != CHECK or _label_degree(c, label) != c.norm(n):
            raise DegreeMismatch(f"trace is nonzero on {label}, which is not a check word of degree {n}")
    pairs = {}
    ok = True
    witness = None
    for X in c.objects:
        for Y in c.objects:
            rows = _hom_basis(hom_homology(c, X, Y))
            cols = _hom_basis(hom_homology(c, Y, X))
            mat = []
            for _, _, a in rows:
                row = []
                for _, _, bvec in cols:
                    prod = c.mu_vectors([a, bvec]) if a and bvec else {}
                    val = F.zero
                    for z, v in prod.items():
                        val = F.reduce(val + v * tr.get((CHECK, (z,)), F.zero))
                    row.append(val)
                mat.append(row)
            rk = _matrix_rank(mat, F)
            full = min(len(rows), len(cols))
            pairs[(X, Y)] = {"rows": len(rows), "cols": len(cols), "rank": rk,
                             "matrix": [[F.fmt(v) for v in r] for r in mat]}
            if rk != full:
                ok = False
                if witness is None:
                    witness = {"pair": (X, Y), "rank": rk, "expected": full}
    return CYVerdict("weak proper CY", PASS if ok else FAIL, {"pairs": pairs, "n": n}, witness)


def _matrix_rank(mat, F) -> int:
    if not mat or not mat[0]:
        return 0
    ech = Echelon({j: j for j in range(len(mat[0]))}, F)
    for row in mat:
        ech.insert({j: v for j, v in enumerate(row) if v != 0})
    return len(ech)


def strong_proper_cy_check(c: AInfCategory, t: TraceData, L: int, window=None) -> CYVerdict:
    """tr~ o b_eq = 0 on the length-<= L orbit complex, then the weak check for tr^0.

    On an element m u^{-i} the equation reads tr^i(b^nu m) + tr^{i-1}(B^nu m) = 0.
    """
    F = c.field
    nu = build_nu(c, L, window)
    for k in range(t.K + 1):
        for label in t.term(k):
            if label not in nu.space:
                raise ValueError(f"trace label {label} is outside the length-{L} truncation")
            if _label_degree(c, label) != c.norm(t.n + 2 * k):
                raise DegreeMismatch(f"tr^{k} is nonzero on {label}, expected degree {t.n + 2 * k}")
    terms = [t.term(k) for k in range(t.K + 1)]
    b, B = nu.b_nu, nu.B_nu
    residuals = []
    for i in range(t.K + 2):
        for m in nu.space.labels:
            val = F.zero
            if i < len(terms):
                for z, v in b.col(m).items():
                    val = F.reduce(val + v * terms[i].get(z, F.zero))
            if 0 <= i - 1 < len(terms):
                for z, v in B.col(m).items():
                    val = F.reduce(val + v * terms[i - 1].get(z, F.zero))
            if val != 0:
                residuals.append({"u_power": i, "element": m, "value": F.fmt(val)})
    weak = weak_proper_cy_check(c, {w: v for (sec, w), v in (terms[0] if terms else {}).items()
                                    if sec == CHECK}, t.n)
    chain_ok = not residuals
    verdict = PASS if chain_ok and weak else FAIL
    witness = {"residuals": residuals[:10]} if residuals else weak.witness
    return CYVerdict("strong proper CY", verdict,
                     {"chain_map": chain_ok, "residual_count": len(residuals), "weak": weak.verdict,
                      "L": L, "pairs": weak.details["pairs"]}, witness)


# -- smooth Calabi-Yau -------------------------------------------------------------------------

def _check_chain(c: AInfCategory, sigma: Mapping) -> dict:
    """Plain words -> coefficients; rejects hat-sector components."""
    F = c.field
    out = {}
    for w, v in sigma.items():
        sec, word = _nu_label(w)
        if sec != CHECK:
            raise ValueError("the cap product needs a chain in the check sector")
        if F(v) != 0:
            out[word] = F(v)
    return out


def weak_smooth_cy_check(c: AInfCategory, sigma: Mapping, L: int, window, pairs=None,
                         smooth_assumed: bool = True) -> CYVerdict:
    """[cap sigma]: HH^k(C, Y_K (x) Y_L) -> H^{k-n}(hom(K, L)) is an isomorphism for k in window.

    ``n = -deg sigma``.  Homological smoothness is the caller's assumption and
    is recorded in the verdict, never verified.
    """
    F = c.field
    chain = _check_chain(c, sigma)
    bs: dict = {}
    for w, v in chain.items():
        vec_add(bs, b_word(c, w), v, F)
    if bs:
        raise NotACycle(f"b(sigma) != 0: {sorted(bs.items(), key=repr)[:3]}")
    degs = {word_degree(c, w) for w in chain}
    if len(degs) > 1:
        raise DegreeMismatch(f"sigma is not homogeneous (degrees {sorted(degs)})")
    n = -degs.pop() if degs else 0
    pairs = list(pairs) if pairs is not None else [(K, Lo) for K in c.objects for Lo in c.objects]
    details = {"n": n, "pairs": {}, "smoothness": "assumed" if smooth_assumed else "unknown"}
    ok = True
    certified = True
    witness = None
    for K, Lo in pairs:
        P = yoneda_bimodule(c, K, Lo)
        cc = hochschild_cochains(c, P, L, window)
        certified = certified and cc.certified
        hh = cc.homology(window)
        hom = hom_homology(c, K, Lo)
        per = {}
        for k in window_degrees(window, c.mode):
            src = hh[k]
            tgt = hom.get(c.norm(k - n))
            tdim = tgt.dim if tgt else 0
            mat = []
            for rep in src.representatives:
                img = cap_product(c, P, rep, chain)
                mat.append(tgt.coordinates(img) if tgt and tdim else [])
            rk = _matrix_rank(mat, F) if tdim else 0
            iso = src.dim == tdim == rk
            per[k] = {"HH": src.dim, "hom": tdim, "rank": rk, "iso": iso}
            if not iso:
                ok = False
                if witness is None:
                    witness = {"pair": (K, Lo), "degree": k, "HH": src.dim, "hom": tdim, "rank": rk}
        details["pairs"][(K, Lo)] = per
    details["certified"] = certified
    return CYVerdict("weak smooth CY", PASS if ok else FAIL, details, witness)


def smooth_cy_lift_check(c: AInfCategory, st: CotraceData, L: int, window, pairs=None) -> CYVerdict:
    """b_eq(sigma~) = 0 in the fixed-point complex, then the weak check on sigma_0."""
    F = c.field
    nu = build_nu(c, L)
    terms = [st.term(k) for k in range(st.K + 1)]
    for k, tk in enumerate(terms):
        for label in tk:
            if label not in nu.space:
                raise ValueError(f"cotrace label {label} is outside the length-{L} truncation")
            if _label_degree(c, label) != c.norm(-st.n - 2 * k):
                raise DegreeMismatch(f"sigma_{k} is nonzero on {label}, expected degree {-st.n - 2 * k}")
    residuals = []
    for k in range(len(terms) + 1):
        acc: dict = {}
        if k < len(terms):
            vec_add(acc, nu.b_nu.apply(terms[k]), F.one, F)
        if k >= 1:
            vec_add(acc, nu.B_nu.apply(terms[k - 1]), F.one, F)
        if acc:
            residuals.append({"u_power": k, "residual": {repr(z): F.fmt(v) for z, v in acc.items()}})
    if residuals:
        return CYVerdict("smooth CY lift", FAIL, {"chain_level": False}, {"residuals": residuals[:5]})
    weak = weak_smooth_cy_check(c, terms[0] if terms else {}, L, window, pairs)
    return CYVerdict("smooth CY lift", weak.verdict, {"chain_level": True, "weak": weak.details},
                     weak.witness)
