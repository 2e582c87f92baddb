"""Cyclic homology of A-infinity categories and the Hodge-de Rham spectral sequence.

``hc`` wraps a Hochschild model as an S^1-complex (delta_0 = b, delta_1 = B)
and applies one of the three u-flavors.  Strictly unital inputs use the
normalized model by default; it is quasi-isomorphic to CH^nu as an
S^1-complex and has no spurious classes at the top truncation length.

Certification.  HH and HC^- in a window [a, b] only see words of degree
<= b + 1, so the length bound of the Hochschild layer certifies them.  HC^+
and HC^infty see words of every degree above the window.  They are
certified only in characteristic 0 for inputs that carry a positive weight
grading (weights = degrees, mu homogeneous).  There the periodic homology of
every positive-weight piece vanishes (Goodwillie), which confines the
orbit homology of a weight piece to degrees above its lowest word degree.
The computation then keeps the weight pieces that fit under the length
bound and drops the rest.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ainfty import AInfCategory
from .core import GradedVectorSpace, SparseLinearMap, Echelon, rank_kernel_image, window_degrees
from .errors import TruncationTooSmall, UnboundedInput
from .equivariant import ORBITS, FIXED, TATE, FLAVORS, equivariant_complex
from .hochschild import build_nu, build_reduced, certification_bound
from .s1mod import S1Complex

__all__ = ["CyclicResult", "SpectralPage", "DegenerationReport", "hochschild_s1", "weight_grading",
           "hc", "nchdr_pages", "degeneration_check", "DEGENERATE", "NOT_DEGENERATE"]

DEGENERATE, NOT_DEGENERATE = "DEGENERATE", "NOT DEGENERATE"


# -- hc ---------------------------------------------------------------------------

def weight_grading(c: AInfCategory) -> dict | None:
    """Weights equal to degrees if mu respects them and non-units weigh >= 1.

    This holds exactly for graded associative algebras (only mu^2) concentrated
    in non-negative degrees; any higher or lower mu shifts the weight.
    """
    if c.mode != "Z":
        return None
    units = c.unit_labels()
    w = {lab: g.degree for lab, g in c.gens.items()}
    if any(w[u] != 0 for u in units):
        return None
    if any(w[lab] < 1 for lab in c.gens if lab not in units):
        return None
    for inputs, out in c.mu.items():
        total = sum(w[x] for x in inputs)
        if any(w[y] != total for y in out):
            return None
    return w


def hochschild_s1(c: AInfCategory, L: int, window=None, model: str = "auto"):
    """(S1Complex, certified HH flag, notes) for the chosen model."""
    if model == "auto":
        model = "reduced" if c.units else "nu"
    if model == "reduced":
        red = build_reduced(c, L, window)
        M = S1Complex(red.space, [red.differential, red.B], c.field, name=f"CC({c.name})")
        return M, red.certified, dict(red.notes)
    if model == "nu":
        nu = build_nu(c, L, window)
        M = S1Complex(nu.space, [nu.b_nu, nu.B_nu], c.field, name=f"CC^nu({c.name})")
        return M, nu.certified, dict(nu.notes)
    raise ValueError(f"unknown model {model!r}")


def _weight_cut(c: AInfCategory, L: int, window, weights: dict) -> int | None:
    """Weight below which every piece lies in the truncation, if the rest is invisible.

    A word with n non-unit letters and weight W has degree >= W - n and
    n <= W / w_min, so pieces of weight >= w_min (L + 1) sit in degrees
    >= (L + 1)(w_min - 1).  Their orbit, fixed and Tate homology vanish in
    degrees <= b once that number exceeds b.
    """
    units = c.unit_labels()
    nonunit = [w for lab, w in weights.items() if lab not in units]
    if not nonunit:
        return None  # nothing is ever dropped
    w_min = min(nonunit)
    if (L + 1) * (w_min - 1) < window[1] + 1:
        return -1
    return w_min * (L + 1)


def _restrict_s1(M: S1Complex, keep) -> S1Complex:
    labs = [l for l in M.space.labels if keep(l)]
    sp = GradedVectorSpace([(l, M.space.degree(l)) for l in labs], M.mode)
    return S1Complex(sp, [d.restrict(sp, sp) for d in M.deltas], M.field, name=M.name)


@dataclass
class CyclicResult:
    """Homology table of one flavor with truncation metadata."""
    flavor: str
    L: int
    window: tuple
    dims: dict
    representatives: dict
    certified: bool
    notes: dict = field(default_factory=dict)


def _flavor_dims(c, flavor, L, window, model):
    M, hh_cert, notes = hochschild_s1(c, L, window, model)
    certified = hh_cert
    if flavor == "hh":
        cx = M.underlying()
    else:
        if flavor != FIXED and certified:
            weights = weight_grading(c) if notes.get("model") == "reduced" else None
            cut = _weight_cut(c, L, window, weights) if weights and c.field.p == 0 else -1
            if cut == -1:
                certified = False
            elif cut is not None:
                def weight(w):
                    return sum(weights[x] for x in w)
                M = _restrict_s1(M, lambda w: weight(w) < cut)
                notes["weight_cut"] = cut
        cx = equivariant_complex(M, flavor, window).complex
    return cx, certified, notes


def hc(c: AInfCategory, flavor: str, L: int, window, model: str = "auto",
       require_certified: bool = False, check_stability: bool = True) -> CyclicResult:
    """HH ("hh") or HC^+ / HC^- / HC^infty ("orbits" / "fixed" / "tate") on ``window``.

    The result records whether the truncation is certified and, when
    ``check_stability`` is set, whether the dims agree at L and L + 1.
    """
    if flavor not in FLAVORS + ("hh",):
        raise ValueError(f"unknown flavor {flavor!r}")
    window = tuple(window)
    if not c.objects:
        degs = window_degrees(window, c.mode)
        return CyclicResult(flavor, L, window, {d: 0 for d in degs}, {d: [] for d in degs}, True,
                            {"model": "empty"})
    cx, certified, notes = _flavor_dims(c, flavor, L, window, model)
    if require_certified and not certified:
        raise TruncationTooSmall(
            f"{flavor} on window {window} is not certified at L = {L}"
            + (f" (needs L >= {notes['required_L']})" if notes.get("required_L") else ""))
    groups = cx.homology(window)
    dims = {d: g.dim for d, g in groups.items()}
    reps = {d: g.representatives for d, g in groups.items()}
    if check_stability:
        nxt, _, _ = _flavor_dims(c, flavor, L + 1, window, model)
        same = nxt.homology_dims(window) == dims
        notes["stable"] = same
        notes["stability"] = f"{'stable' if same else 'unstable'} at ({L}, {L + 1})"
    return CyclicResult(flavor, L, window, dims, reps, certified, notes)


# -- spectral sequence of the u-filtration -----------------------------------------

@dataclass
class SpectralPage:
    """E_r with entries (p, d) -> dim and ranks of d_r: (p, d) -> (p - r, d + 1)."""
    r: int
    entries: dict
    differential_ranks: dict

    def nonzero_differentials(self) -> dict:
        return {k: v for k, v in self.differential_ranks.items() if v}


class _Filtration:
    """F_p of orbits(M) (u-exponent >= -p), sliced by degree."""

    def __init__(self, cx):
        self.cx = cx
        self.space = cx.space
        self.d = cx.differential
        self.F = cx.field
        self.order = self.space.index

    def basis(self, p: int, deg: int) -> list:
        return [l for l in self.space.in_degree(deg) if -l[1] <= p]

    def _ech(self, vecs):
        e = Echelon(self.order, self.F)
        for v in vecs:
            e.insert(v)
        return e

    def Z(self, r: int, p: int, deg: int) -> list:
        """Basis of {x in F_p : dx in F_{p-r}} in degree ``deg``."""
        src = self.basis(p, deg)
        if r <= 0:
            return [{l: self.F.one} for l in src]
        outside = [l for l in self.space.in_degree(deg + 1) if -l[1] > p - r]
        if not outside:
            return [{l: self.F.one} for l in src]
        # kernel of x -> (dx projected away from F_{p-r})
        out_set = set(outside)
        sub = GradedVectorSpace([(l, deg) for l in src])
        tgt = GradedVectorSpace([(l, deg + 1) for l in outside])
        cols = {}
        for l in src:
            col = {t: v for t, v in self.d.col(l).items() if t in out_set}
            if col:
                cols[l] = col
        m = SparseLinearMap(sub, tgt, 1, cols, self.F, check=False)
        return rank_kernel_image(m).kernel

    def dim_sum(self, *families) -> int:
        return len(self._ech([v for fam in families for v in fam]))

    def image(self, vecs) -> list:
        return [self.d.apply(v) for v in vecs]


def nchdr_pages(M: S1Complex, r_max: int | None = None, window=None) -> list[SpectralPage]:
    """Pages E_1 .. E_{r_max + 1} of the u-filtration on orbits(M), degrees in ``window``.

    E_1(p, d) must equal H^{d+2p}(M); this is asserted.
    """
    bounds = M.bounds()  # raises UnboundedInput in Z/2 mode
    if window is None:
        if bounds is None:
            window = (0, 0)
        else:
            window = (bounds[0] - 2 * (bounds[1] - bounds[0]) - 2, bounds[1])
    a, b = window
    if r_max is None:
        r_max = (b - a) // 2 + 1
    ext = (a - 1, b + 1)
    cx = equivariant_complex(M, ORBITS, ext).complex
    filt = _Filtration(cx)
    top = 0 if bounds is None else bounds[1]
    cols = {d: list(range(0, max(0, (top - d) // 2) + 1)) for d in range(a, b + 1)}

    def E(r, p, d):
        num = filt.Z(r, p, d)
        den = filt.dim_sum(filt.Z(r - 1, p - 1, d), filt.image(filt.Z(r - 1, p + r - 1, d - 1)))
        return len(num) - den

    def d_rank(r, p, d):
        # rank of d_r out of (p, d): Z_r^p / (Z_{r+1}^p + Z_{r-1}^{p-1})
        return len(filt.Z(r, p, d)) - filt.dim_sum(filt.Z(r + 1, p, d), filt.Z(r - 1, p - 1, d))

    base = M.underlying().homology_dims((a, top + 1) if top + 1 >= a else (a, a))
    pages = []
    for r in range(1, r_max + 2):
        entries = {(p, d): E(r, p, d) for d, ps in cols.items() for p in ps}
        if r == 1:
            for (p, d), v in entries.items():
                assert v == base.get(d + 2 * p, 0), f"E_1({p},{d}) != H^{d + 2 * p}(M)"
        ranks = {(p, d): d_rank(r, p, d) for d, ps in cols.items() for p in ps
                 if r <= r_max and d + 1 <= b}
        pages.append(SpectralPage(r, entries, ranks if r <= r_max else {}))
    return pages


@dataclass
class DegenerationReport:
    verdict: str
    window: tuple
    orbit_dims: dict
    expected_dims: dict
    first_failure: int | None
    witness_page: int | None
    pages_agree: bool
    notes: dict = field(default_factory=dict)

    @property
    def degenerate(self) -> bool:
        return self.verdict == DEGENERATE


def degeneration_check(M: S1Complex, window=None, r_max: int | None = None) -> DegenerationReport:
    """Dimension-count verdict with spectral pages as evidence.

    DEGENERATE iff dim H(orbits)_d = sum_{i>=0} dim H^{d+2i}(M) for every d in
    the window.
    """
    bounds = M.bounds()
    if window is None:
        window = (0, 0) if bounds is None else (bounds[0] - 2, bounds[1])
    a, b = window
    top = b if bounds is None else max(b, bounds[1])
    base = M.underlying().homology_dims((a, top + 1))
    orb = equivariant_complex(M, ORBITS, (a, b)).homology_dims((a, b))
    expected = {d: sum(base.get(d + 2 * i, 0) for i in range((top - d) // 2 + 1)) for d in range(a, b + 1)}
    failing = [d for d in range(a, b + 1) if orb[d] != expected[d]]
    verdict = NOT_DEGENERATE if failing else DEGENERATE
    # pages over the whole support so that every differential is seen
    full = (a, top) if bounds is None else (min(a, bounds[0] - 2 * (bounds[1] - bounds[0]) - 2), top)
    pages = nchdr_pages(M, r_max if r_max is not None else (full[1] - full[0]) // 2 + 1, full)
    witness = next((pg.r for pg in pages if pg.nonzero_differentials()), None)
    agree = (witness is None) == (not failing)
    return DegenerationReport(verdict, (a, b), orb, expected, failing[0] if failing else None,
                              witness, agree)
