"""Command-line front end. Every command prints one JSON document on stdout.

Exit status: 0 for success or a positive verdict, 1 for a negative verdict,
2 for usage, validation and cap errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import characters, codes, extension, linalg, modules, rings
from .bogart import recover_monomial, t_matrix
from .corpus import corpus_modules, corpus_rings
from .errors import CapExceeded, InternalInconsistency, MacextError, SpecParse
from .gf import parse_field
from .linalg import FqMatrix

OK, NEGATIVE, ERROR = 0, 1, 2


class UsageError(MacextError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _plain(obj):
    """Recursively convert to JSON-native values; big ints and rationals become strings."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [_plain(v) for v in sorted(obj)]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int) and abs(obj) >= 2 ** 53:
        return str(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"))


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecParse(f"cannot read {path}: {exc}") from exc


# commands; each returns (payload, exit status)

def cmd_gauss(a):
    return {"value": str(linalg.gaussian(a.k, a.l, a.q))}, OK


def cmd_wood(a):
    if a.recheck:
        return _recheck_wood(a, _read_json(a.recheck))
    if None in (a.q, a.m, a.k):
        raise UsageError("wood needs --q, --m and --k (or --recheck FILE)")
    wc = extension.wood_counterexample(a.q, a.m, a.k, verify_extension=a.verify_extension,
                                       method=a.method, cap=a.cap_wood)
    doc = wc.to_json()
    if a.out:
        Path(a.out).write_text(dumps(doc) + "\n")
    return doc, OK


def _recheck_wood(a, doc):
    doc = doc.get("result", doc)
    checks = extension.recheck_wood(doc)
    ok = all(checks.values())
    return {"recheck": checks, "valid": ok}, OK if ok else NEGATIVE


def cmd_wmatrix(a):
    W = extension.build_w_matrix(a.q, a.m, a.k, a.l, seed=a.seed, cap=a.cap_enum)
    inj = extension.w_injectivity(W)
    out = {"w_matrix": W.to_json(), "injective": inj["injective"], "rank": inj["rank"],
           "columns": inj["columns"]}
    if a.kernel:
        out["kernel_basis"] = inj["kernel_basis"]
        if inj["kernel_basis"]:
            eta = extension.default_kernel_vector(W)
            pair = extension.kernel_to_codes(W, eta)
            out["kernel_vector"] = eta
            out["codes"] = {"length": pair.length, "delta_all_zero": bool(np.all(pair.deltas() == 0)),
                            "lam_plus": [x.tolist() for x in pair.lam_plus],
                            "lam_minus": [x.tolist() for x in pair.lam_minus]}
    return out, OK if inj["injective"] else NEGATIVE


def cmd_ring_info(a):
    R = rings.ring_build(a.spec)
    lab = R.label
    out = {"ring": R.spec, "order": R.order,
           "commutative": bool(np.array_equal(R.mul, R.mul.T)),
           "units": [lab(x) for x in sorted(R.units)],
           "radical": [lab(x) for x in R.radical],
           "socle_left": [lab(x) for x in R.socle_left]}
    if a.cap_ideal is None or R.order <= a.cap_ideal:
        ideals = R.left_ideals(a.cap_ideal)
        out["left_ideals"] = [[lab(x) for x in I] for I in ideals]
        out["left_principal"] = R.is_left_principal(a.cap_ideal)
    else:
        out["left_ideals"] = f"skipped: order {R.order} exceeds ideal cap {a.cap_ideal}"
    return out, OK


def cmd_ring_frobenius(a):
    R = rings.ring_build(a.spec)
    rep = characters.frobenius_check(R, cap=a.cap_ideal)
    return rep, OK if rep["frobenius"] else NEGATIVE


def module_summary(A, cap) -> dict:
    cyc, wit = modules.cyclic_socle(A)
    out = {"module": A.spec, "ring": A.ring.spec, "order": A.order,
           "socle": [A.label(x) for x in sorted(A.socle)],
           "socle_cyclic": cyc, "socle_generator": A.label(wit) if cyc else None,
           "socle_profile": [{"s": c["s"], "mu": c["mu"], "q": c["q"]} for c in modules.socle_profile(A)],
           "annihilator_classes": [[A.label(x) for x in b] for b in modules.annihilator_classes(A)]}
    if cap is not None and A.order > cap:
        out["pseudo_injective"] = f"skipped: order {A.order} exceeds cap {cap}"
        return out
    auts = modules.aut_group(A)
    orbits = modules.orbit_space(A, auts, check=False)
    pi = modules.is_pseudo_injective(A, cap)
    out.update({"automorphisms": len(auts), "pseudo_injective": pi,
                "socle_condition": modules.socle_condition(A, cap),
                "aut_orbits": [[A.label(x) for x in b] for b in orbits],
                "classes_equal_orbits": orbits == modules.annihilator_classes(A)})
    return out


def cmd_module_info(a):
    A = modules.module_make(a.spec)
    out = module_summary(A, a.cap_ideal)
    status = OK
    if a.pipeline:
        rep = extension.theorem_main_pipeline(A, verify_extension=True, method=a.method)
        out["pipeline"] = rep
        status = OK if rep["extension_property"] else NEGATIVE
    return out, status


def _load_code(path, cap):
    C = codes.load_code(_read_json(path))
    C.cap = cap
    return C


def cmd_code_enumerator(a):
    C = _load_code(a.code, a.cap_code)
    we = codes.weight_enumerator(C)
    return {"alphabet": C.alphabet.spec, "n": C.n, "size": str(len(C)),
            "coefficients": [str(x) for x in we.coefficients], "polynomial": str(we)}, OK


def cmd_code_macwilliams(a):
    C = _load_code(a.code, a.cap_code)
    dual = codes.dual_code(C)
    we, wd = codes.weight_enumerator(C), codes.weight_enumerator(dual)
    q = C.alphabet.backend[1]
    rhs = codes.macwilliams_transform(we.coefficients, C.n, q)
    holds = codes.macwilliams_identity_check(C)
    return {"code": str(we), "dual": str(wd), "size": str(len(C)),
            "dual_coefficients": [str(x) for x in wd.coefficients],
            "transform_numerators": [str(x) for x in rhs], "identity_holds": holds}, OK if holds else NEGATIVE


def _images(doc, A):
    if isinstance(doc, dict):
        doc = doc.get("images", doc.get("generators"))
    if not isinstance(doc, list):
        raise SpecParse("image file must be a list or carry an 'images' field")
    return [[A.parse_element(x) for x in g] for g in doc]


def cmd_code_extend(a):
    C = _load_code(a.code, a.cap_code)
    images = _images(_read_json(a.image), C.alphabet)
    res = codes.find_extension(C, images, a.weight, method=a.method, cap=a.cap_search, brute_cap=a.cap_brute)
    out = {"found": res.found, "certificate": res.certificate,
           "transform": res.transform.to_json() if res.found else None}
    return out, OK if res.found else NEGATIVE


def _matrix_doc(doc, F):
    if isinstance(doc, dict):
        doc = doc.get("matrix", doc.get("generator"))
    return FqMatrix(F, doc)


def cmd_bogart(a):
    F = parse_field(a.field)
    X = _matrix_doc(_read_json(a.genC), F)
    D = _matrix_doc(_read_json(a.genD), F)
    if a.map:
        M = _matrix_doc(_read_json(a.map), F)
        Y = M @ D
    else:
        Y = D
    lam, info = recover_monomial(X, Y, t_matrix(X.rows, F))
    return {**lam.to_json(), "r": info["r"], "T_det": str(info["T_det"]),
            "line_weights": info["line_weights"]}, OK


def cmd_corpus(a):
    out = {"rings": [], "modules": []}
    failures = 0
    if a.only in ("all", "rings"):
        for name, R in corpus_rings():
            cap = max(a.cap_ideal or 0, R.order) if name == "mat:3:2" else a.cap_ideal
            try:
                rep = characters.frobenius_check(R, cap=cap)
                out["rings"].append({"ring": name, "frobenius": rep["frobenius"],
                                     "criteria": rep["criteria"]})
            except MacextError as exc:
                failures += 1
                out["rings"].append({"ring": name, "error": type(exc).__name__, "message": str(exc)})
    if a.only in ("all", "modules"):
        for name, A in corpus_modules():
            try:
                s = module_summary(A, a.cap_ideal)
                row = {k: s[k] for k in ("module", "order", "socle_cyclic", "pseudo_injective")}
                row["socle_condition"] = s.get("socle_condition")
                row["classes_equal_orbits"] = s.get("classes_equal_orbits")
                if s.get("pseudo_injective") is True and not s["classes_equal_orbits"]:
                    failures += 1
                if a.pipeline and s.get("socle_condition") is True:
                    rep = extension.theorem_main_pipeline(A, verify_extension=True)
                    row["extension_property"] = rep["extension_property"]
                out["modules"].append(row)
            except MacextError as exc:
                failures += 1
                out["modules"].append({"module": name, "error": type(exc).__name__, "message": str(exc)})
    out["failures"] = failures
    return out, OK if failures == 0 else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="macext", description="Finite rings, module alphabets and the extension property.")
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    p.add_argument("--report", action="store_true",
                   help="wrap the payload in {command, config, result, status}")
    caps = p.add_argument_group("caps")
    caps.add_argument("--cap-ideal", type=int, default=rings.IDEAL_CAP,
                      help="largest ring/module order for exhaustive ideal and extension tests")
    caps.add_argument("--cap-enum", type=int, default=linalg.DEFAULT_CAP, help="echelon/GL enumeration cap")
    caps.add_argument("--cap-code", type=int, default=codes.CODE_CAP, help="codeword enumeration cap")
    caps.add_argument("--cap-search", type=int, default=codes.SEARCH_CAP, help="monomial search space cap")
    caps.add_argument("--cap-brute", type=int, default=codes.BRUTE_CAP,
                      help="largest search space for which --method auto runs the literal search")
    caps.add_argument("--cap-wood", type=int, default=extension.WOOD_CAP, help="Wood code length cap")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gauss", help="Gaussian binomial coefficient [k l]_q")
    g.add_argument("k", type=int)
    g.add_argument("l", type=int)
    g.add_argument("q", type=int)
    g.set_defaults(func=cmd_gauss)

    w = sub.add_parser("wood", help="isometric, non-equivalent code pair over M_{m x k}(F_q)")
    w.add_argument("--q", type=int)
    w.add_argument("--m", type=int)
    w.add_argument("--k", type=int)
    w.add_argument("--verify-extension", action="store_true", help="run the exhaustive extension search")
    w.add_argument("--method", choices=["auto", "brute", "pruned"], default="auto")
    w.add_argument("--out", help="also write the report to this file")
    w.add_argument("--recheck", metavar="FILE", help="revalidate a report written by --out")
    w.set_defaults(func=cmd_wood)

    wm = sub.add_parser("wmatrix", help="W matrix and its rational kernel")
    for name in ("q", "m", "k", "l"):
        wm.add_argument(f"--{name}", type=int, required=True)
    wm.add_argument("--kernel", action="store_true", help="include kernel basis and the induced code pair")
    wm.set_defaults(func=cmd_wmatrix)

    r = sub.add_parser("ring", help="finite ring structure")
    rs = r.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ri = rs.add_parser("info")
    ri.add_argument("spec")
    ri.set_defaults(func=cmd_ring_info)
    rf = rs.add_parser("frobenius")
    rf.add_argument("spec")
    rf.set_defaults(func=cmd_ring_frobenius)

    m = sub.add_parser("module", help="finite module structure")
    ms = m.add_subparsers(dest="action", required=True, parser_class=_Parser)
    mi = ms.add_parser("info")
    mi.add_argument("spec")
    mi.add_argument("--pipeline", action="store_true", help="decide the extension property for swc")
    mi.add_argument("--method", choices=["auto", "brute", "pruned"], default="auto")
    mi.set_defaults(func=cmd_module_info)

    c = sub.add_parser("code", help="linear codes given as JSON documents")
    cs = c.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ce = cs.add_parser("enumerator")
    ce.add_argument("code")
    ce.set_defaults(func=cmd_code_enumerator)
    cm = cs.add_parser("macwilliams-check")
    cm.add_argument("code")
    cm.set_defaults(func=cmd_code_macwilliams)
    cx = cs.add_parser("extend")
    cx.add_argument("--code", required=True)
    cx.add_argument("--image", required=True, help="images of the generators, one word per generator")
    cx.add_argument("--weight", choices=["hamming", "swc", "aw"], default="hamming")
    cx.add_argument("--method", choices=["auto", "brute", "pruned"], default="auto")
    cx.set_defaults(func=cmd_code_extend)

    b = sub.add_parser("bogart", help="monomial matrix of a Hamming isometry between field codes")
    bs = b.add_subparsers(dest="action", required=True, parser_class=_Parser)
    br = bs.add_parser("recover")
    br.add_argument("--field", required=True, help="gf:q")
    br.add_argument("--genC", required=True, help="generator X of C")
    br.add_argument("--genD", required=True, help="generator of D")
    br.add_argument("--map", help="k x k matrix M with f(row i of X) = row i of M*genD (default identity)")
    br.set_defaults(func=cmd_bogart)

    co = sub.add_parser("corpus", help="built-in rings and modules")
    cos = co.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cr = cos.add_parser("run")
    cr.add_argument("--only", choices=["all", "rings", "modules"], default="all")
    cr.add_argument("--pipeline", action="store_true", help="also run the extension-property pipeline")
    cr.set_defaults(func=cmd_corpus)
    return p


def cli_dispatch(argv) -> tuple[dict, int]:
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
        payload, status = args.func(args)
    except (MacextError, ValueError) as exc:
        kind = ("cap" if isinstance(exc, CapExceeded) else "usage" if isinstance(exc, UsageError)
                else "internal" if isinstance(exc, InternalInconsistency) else "validation")
        return {"error": type(exc).__name__, "kind": kind, "message": str(exc)}, ERROR
    if args.report:
        config = {k: v for k, v in sorted(vars(args).items()) if k.startswith("cap_") or k == "seed"}
        payload = {"command": argv, "config": config, "result": payload, "status": status}
    return payload, status


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(x in ("-h", "--help") for x in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    payload, status = cli_dispatch(argv)
    print(dumps(payload))
    return status


if __name__ == "__main__":
    sys.exit(main())
