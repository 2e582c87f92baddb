"""Command-line driver, JSON input documents and deterministic reports.

Input documents (``schema_version`` 1) carry a field, a grading mode, an
optional category, an optional S^1-complex, optional trace/cotrace data and
job parameters.  Every scalar is a string ("a/b" over Q, an integer over F_p).
Reports are canonical JSON (sorted keys, scalars as strings); wall-clock timing
goes to stderr so that stdout is byte-identical across runs.

Exit codes: 0 all verdicts PASS, 1 some verdict FAIL, 2 input error,
3 uncertified truncation under ``--require-certified``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from .ainfty import AInfCategory, Generator, check_ainfty, check_strict_units
from .core import Field, SparseLinearMap, Z, Z2, parse_field, set_threads
from .cyclic import degeneration_check, hc, nchdr_pages
from .cy import (CotraceData, TraceData, smooth_cy_lift_check, strong_proper_cy_check,
                 weak_proper_cy_check, weak_smooth_cy_check)
from .equivariant import FLAVORS, equivariant_complex, gysin_les, norm_les
from .errors import EngineError, InputError, TruncationTooSmall
from .hochschild import CHECK, HAT, build_nu
from .s1mod import S1Complex, S1Morphism, find_enhancement, validate_s1

__all__ = ["SCHEMA_VERSION", "EXIT_OK", "EXIT_FAIL", "EXIT_INPUT", "EXIT_UNCERTIFIED",
           "parse_document", "category_to_doc", "s1_to_doc", "canonical_json", "run", "main"]

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNCERTIFIED = 0, 1, 2, 3

FLAVOR_ALIASES = {"plus": "orbits", "minus": "fixed", "periodic": "tate", "infinity": "tate",
                  "orbits": "orbits", "fixed": "fixed", "tate": "tate", "hh": "hh"}
SECTORS = {"check": CHECK, "hat": HAT}


class Uncertified(Exception):
    pass


# -- parsing -------------------------------------------------------------------------

def _scalar(F: Field, v):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise InputError(f"scalar {v!r} must be a string or integer")
    try:
        return F(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {v!r}: {exc}") from None


def _vec(F, raw: dict, where: str) -> dict:
    if not isinstance(raw, dict):
        raise InputError(f"{where}: expected an object of label -> scalar")
    return {k: _scalar(F, v) for k, v in raw.items()}


def _need(doc: dict, key: str, where: str):
    if key not in doc:
        raise InputError(f"{where}: missing {key!r}")
    return doc[key]


def parse_category(raw: dict, F: Field, mode: str) -> AInfCategory:
    objects = _need(raw, "objects", "category")
    gens = []
    for g in _need(raw, "generators", "category"):
        try:
            gens.append(Generator(str(g["label"]), str(g["source"]), str(g["target"]), int(g["degree"])))
        except (KeyError, TypeError, ValueError):
            raise InputError(f"category: malformed generator {g!r}") from None
    labels = {g.label for g in gens}
    mu = {}
    for entry in raw.get("mu", []):
        inputs = tuple(_need(entry, "inputs", "mu entry"))
        out = _vec(F, _need(entry, "output", "mu entry"), f"mu{list(inputs)}")
        for lab in inputs + tuple(out):
            if lab not in labels:
                raise InputError(f"mu{list(inputs)}: unknown label {lab!r}")
        if inputs in mu:
            raise InputError(f"mu{list(inputs)} given twice")
        mu[inputs] = out
    units = raw.get("units")
    try:
        return AInfCategory(objects, gens, mu, F, mode, units, raw.get("name", ""))
    except (ValueError, KeyError, EngineError) as exc:
        raise InputError(f"category: {exc}") from None


def parse_s1(raw: dict, F: Field, mode: str) -> S1Complex:
    basis = [(str(lab), int(deg)) for lab, deg in _need(raw, "basis", "s1_complex")]
    labels = {lab for lab, _ in basis}
    deltas = {}
    for k, cols in raw.get("deltas", {}).items():
        mat = {}
        for s, col in cols.items():
            vec = _vec(F, col, f"delta_{k}[{s}]")
            if s not in labels or any(t not in labels for t in vec):
                raise InputError(f"delta_{k}: unknown label in column {s!r}")
            mat[s] = vec
        deltas[int(k)] = mat
    try:
        return S1Complex.from_matrices(basis, deltas, F, mode, raw.get("name", ""))
    except (ValueError, EngineError) as exc:
        raise InputError(f"s1_complex: {exc}") from None


def _nu_terms(F, raw: dict, where: str) -> dict:
    out = {}
    for k, entries in raw.items():
        tk = {}
        for e in entries:
            sector = SECTORS.get(e.get("sector", "check"))
            if sector is None:
                raise InputError(f"{where}: sector must be 'check' or 'hat'")
            tk[(sector, tuple(_need(e, "word", where)))] = _scalar(F, _need(e, "value", where))
        out[int(k)] = tk
    return out


def _map(F, raw, M: S1Complex, N: S1Complex, degree: int) -> SparseLinearMap:
    cols = {}
    for s, col in raw.items():
        vec = _vec(F, col, f"map[{s}]")
        if s not in M.space or any(t not in N.space for t in vec):
            raise InputError(f"map: unknown label in column {s!r}")
        cols[s] = vec
    try:
        return SparseLinearMap(M.space, N.space, degree, cols, F)
    except EngineError as exc:
        raise InputError(f"map: {exc}") from None


def parse_document(doc: dict) -> dict:
    """Validated objects of an input document."""
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"schema_version must be {SCHEMA_VERSION}")
    try:
        F = parse_field(doc.get("field", "Q"))
    except (ValueError, TypeError) as exc:
        raise InputError(f"field: {exc}") from None
    mode = doc.get("grading_mode", Z)
    if mode not in (Z, Z2):
        raise InputError(f"grading_mode must be {Z!r} or {Z2!r}")
    out: dict[str, Any] = {"field": F, "mode": mode, "job": dict(doc.get("job", {}))}
    try:
        if "category" in doc:
            out["category"] = parse_category(doc["category"], F, mode)
            cats = out["category"].gens
            for key, cls in (("trace", TraceData), ("cotrace", CotraceData)):
                if key in doc:
                    raw = doc[key]
                    terms = _nu_terms(F, _need(raw, "terms", key), key)
                    for tk in terms.values():
                        for _, w in tk:
                            if any(x not in cats for x in w):
                                raise InputError(f"{key}: unknown label in word {list(w)}")
                    out[key] = cls(terms, int(_need(raw, "n", key)))
        if "s1_complex" in doc:
            out["s1_complex"] = parse_s1(doc["s1_complex"], F, mode)
        if "enhancement" in doc:
            raw = doc["enhancement"]
            M = parse_s1(_need(raw, "source", "enhancement"), F, mode)
            N = parse_s1(_need(raw, "target", "enhancement"), F, mode)
            deg = int(raw.get("degree", 0))
            out["enhancement"] = (_map(F, _need(raw, "map", "enhancement"), M, N, deg), M, N)
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed document: {exc!r}") from None
    return out


# -- serialization ------------------------------------------------------------------------

def category_to_doc(c: AInfCategory) -> dict:
    F = c.field
    doc = {"name": c.name, "objects": list(c.objects),
           "generators": [{"label": g.label, "source": g.source, "target": g.target,
                           "degree": g.degree} for g in c.gens.values()],
           "mu": [{"inputs": list(k), "output": {y: F.fmt(v) for y, v in sorted(out.items())}}
                  for k, out in sorted(c.mu.items(), key=lambda kv: (len(kv[0]), kv[0]))]}
    if c.units:
        doc["units"] = dict(c.units)
    return doc


def s1_to_doc(M: S1Complex) -> dict:
    F = M.field
    return {"name": M.name,
            "basis": [[lab, M.space.degree(lab)] for lab in M.space.labels],
            "deltas": {str(k): {s: {t: F.fmt(v) for t, v in sorted(col.items())}
                                for s, col in sorted(d.cols.items()) if col}
                       for k, d in enumerate(M.deltas) if not d.is_zero()}}


def _jsonable(x, F: Field | None = None):
    if isinstance(x, dict):
        return {_key(k): _jsonable(v, F) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v, F) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if F is not None:
        return F.fmt(x)
    return str(x)


def _key(k) -> str:
    if isinstance(k, tuple):
        return "|".join(_key(x) for x in k)
    return str(k)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _word_label(label) -> str:
    sector, w = label
    return ("check" if sector == CHECK else "hat") + ":" + ".".join(w)


# -- commands --------------------------------------------------------------------------

def _window(args, job, default=(0, 6)):
    if args.window is not None:
        return tuple(args.window)
    return tuple(job.get("window", default))


def _L(args, job, default=4):
    return args.L if args.L is not None else int(job.get("L", default))


def _require(obj: dict, key: str, cmd: str):
    if key not in obj:
        raise InputError(f"{cmd} needs a {key!r} section")
    return obj[key]


def cmd_validate(doc, args) -> dict:
    verdicts, results = {}, {}
    if "category" in doc:
        c = doc["category"]
        rep = check_ainfty(c)
        verdicts["ainfty"] = rep.ok
        results["ainfty"] = {"checked": rep.checked, "first_failure": rep.first}
        if c.units:
            rep = check_strict_units(c)
            verdicts["strict_units"] = rep.ok
            results["strict_units"] = {"checked": rep.checked, "first_failure": rep.first}
    if "s1_complex" in doc:
        rep = validate_s1(doc["s1_complex"])
        verdicts["s1"] = rep.ok
        results["s1"] = {"checked": rep.checked, "first_failure": rep.first}
    if not verdicts:
        raise InputError("nothing to validate")
    return {"results": results, "verdicts": verdicts, "certified": True}


def cmd_hh(doc, args) -> dict:
    c = _require(doc, "category", "hh")
    L, window = _L(args, doc["job"]), _window(args, doc["job"])
    nu = build_nu(c, L, window)
    res = hc(c, "hh", L, window)
    results = {"check": nu.check_subcomplex().homology_dims(window),
               "nu": nu.complex.homology_dims(window),
               "hh": res.dims, "model": res.notes.get("model"),
               "stability": res.notes.get("stability"), "required_L": res.notes.get("required_L")}
    return {"results": results, "verdicts": {}, "certified": res.certified}


def cmd_hc(doc, args) -> dict:
    c = _require(doc, "category", "hc")
    L, window = _L(args, doc["job"]), _window(args, doc["job"])
    flavor = FLAVOR_ALIASES.get(args.flavor or doc["job"].get("flavor", "plus"))
    if flavor is None:
        raise InputError(f"unknown flavor {args.flavor!r}")
    res = hc(c, flavor, L, window)
    results = {"flavor": flavor, "dims": res.dims,
               "notes": {k: v for k, v in sorted(res.notes.items())}}
    return {"results": results, "verdicts": {}, "certified": res.certified}


def cmd_equiv(doc, args) -> dict:
    M = _require(doc, "s1_complex", "equiv")
    window = _window(args, doc["job"])
    flavors = FLAVORS if not (args.flavor or doc["job"].get("flavor")) else \
        (FLAVOR_ALIASES.get(args.flavor or doc["job"]["flavor"]),)
    if None in flavors or "hh" in flavors:
        raise InputError("flavor must be orbits, fixed or tate")
    results = {f: equivariant_complex(M, f, window).homology_dims(window) for f in flavors}
    verdicts = {}
    for name, rep in (("gysin", gysin_les(M, window)), ("norm", norm_les(M, window))):
        results[name + "_les"] = rep.slots
        verdicts[name + "_les"] = rep.ok
    return {"results": results, "verdicts": verdicts, "certified": True}


def cmd_enhance(doc, args) -> dict:
    f, M, N = _require(doc, "enhancement", "enhance")
    jmax = args.jmax if args.jmax is not None else doc["job"].get("J_max")
    out = find_enhancement(f, M, N, None if jmax is None else int(jmax))
    if isinstance(out, S1Morphism):
        results = {"closed": True,
                   "terms": [{f"{t}<-{s}": v for s, col in sorted(m.cols.items())
                              for t, v in sorted(col.items())} for m in out.terms]}
        return {"results": results, "verdicts": {"enhancement": True}, "certified": True}
    results = {"closed": False, "stage": out.stage,
               "obstruction": {f"{t}<-{s}": v for (t, s), v in sorted(out.rhs.items())},
               "homology_class": out.homology_class,
               "globally_unsolvable": out.globally_unsolvable}
    return {"results": results, "verdicts": {"enhancement": False}, "certified": True}


def cmd_ss(doc, args) -> dict:
    M = _require(doc, "s1_complex", "ss")
    window = tuple(args.window) if args.window else (tuple(doc["job"]["window"])
                                                     if "window" in doc["job"] else None)
    rmax = args.rmax if args.rmax is not None else doc["job"].get("r_max")
    rep = degeneration_check(M, window, rmax)
    pages = nchdr_pages(M, rmax)
    results = {"verdict": rep.verdict, "window": rep.window, "orbit_dims": rep.orbit_dims,
               "expected_dims": rep.expected_dims, "first_failure": rep.first_failure,
               "witness_page": rep.witness_page, "pages_agree": rep.pages_agree,
               "pages": [{"r": p.r, "entries": {k: v for k, v in sorted(p.entries.items()) if v},
                          "differential_ranks": p.nonzero_differentials()} for p in pages]}
    return {"results": results, "verdicts": {"degeneration": rep.degenerate}, "certified": True}


def _cy_result(v) -> dict:
    return {"verdict": v.verdict, "details": v.details, "witness": v.witness}


def cmd_cy(doc, args) -> dict:
    c = _require(doc, "category", "cy")
    mode = args.mode or doc["job"].get("mode", "proper")
    L, window = _L(args, doc["job"]), _window(args, doc["job"], (-3, 3))
    pairs = doc["job"].get("pairs")
    pairs = [tuple(p) for p in pairs] if pairs else None
    certified = True
    if mode in ("proper", "strong-proper"):
        t = _require(doc, "trace", "cy")
        if mode == "proper":
            v = weak_proper_cy_check(c, {w: x for (sec, w), x in t.terms.get(0, {}).items()
                                         if sec == CHECK}, t.n)
        else:
            v = strong_proper_cy_check(c, t, L, window)
    elif mode in ("smooth", "smooth-lift"):
        st = _require(doc, "cotrace", "cy")
        if mode == "smooth":
            v = weak_smooth_cy_check(c, st.terms.get(0, {}), L, window, pairs)
            certified = v.details.get("certified", False)
        else:
            v = smooth_cy_lift_check(c, st, L, window, pairs)
            certified = v.details.get("weak", {}).get("certified", v.details.get("chain_level"))
    else:
        raise InputError(f"unknown cy mode {mode!r}")
    return {"results": {"mode": mode, **_cy_result(v)}, "verdicts": {mode: bool(v)},
            "certified": bool(certified)}


COMMANDS = {"validate": cmd_validate, "hh": cmd_hh, "hc": cmd_hc, "equiv": cmd_equiv,
            "enhance": cmd_enhance, "ss": cmd_ss, "cy": cmd_cy}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equicyclic", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=1, help="worker threads for homology")
    p.add_argument("--require-certified", action="store_true",
                   help="exit 3 instead of reporting an uncertified truncation")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("path")
        s.add_argument("--L", type=int)
        s.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"))
        if name in ("hc", "equiv"):
            s.add_argument("--flavor")
        if name == "enhance":
            s.add_argument("--jmax", type=int)
        if name == "ss":
            s.add_argument("--rmax", type=int)
        if name == "cy":
            s.add_argument("--mode", choices=["proper", "strong-proper", "smooth", "smooth-lift"])
    return p


def _defaults(args):
    for name in ("L", "window", "flavor", "jmax", "rmax", "mode"):
        if not hasattr(args, name):
            setattr(args, name, None)
    return args


def run(argv, out=sys.stdout, err=sys.stderr) -> int:
    """Run one command; returns the exit code."""
    t0 = time.perf_counter()
    try:
        args = _defaults(_parser().parse_args(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    set_threads(max(1, args.threads))
    try:
        with open(args.path, encoding="utf-8") as fh:
            raw = json.load(fh)
        doc = parse_document(raw)
        res = COMMANDS[args.command](doc, args)
    except (OSError, json.JSONDecodeError, InputError) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except TruncationTooSmall as exc:
        err.write(f"truncation: {exc}\n")
        return EXIT_UNCERTIFIED if args.require_certified else EXIT_INPUT
    except EngineError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    finally:
        set_threads(1)
    if args.require_certified and not res["certified"]:
        err.write("truncation is not certified\n")
        return EXIT_UNCERTIFIED
    F = doc["field"]
    verdicts = {k: "PASS" if v else "FAIL" for k, v in res["verdicts"].items()}
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": {"name": args.command, "input": raw.get("name", ""),
                    "options": {k: v for k, v in sorted(vars(args).items())
                                if k in ("L", "window", "flavor", "jmax", "rmax", "mode") and v is not None}},
        "field": F.name,
        "certificate": {"certified": res["certified"]},
        "results": res["results"],
        "verdicts": verdicts,
    }
    out.write(canonical_json(_jsonable(report, F)))
    err.write(f"# elapsed {time.perf_counter() - t0:.3f} s\n")
    return EXIT_OK if all(v == "PASS" for v in verdicts.values()) else EXIT_FAIL


def main(argv=None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
