"""Multiplicity functions, the W matrix, the Wood counterexample codes and
the cyclic-socle decision pipeline for module alphabets.

For the matrix module A = M_{m x k}(F_q) with information module
M = M_{m x l}(F_q), orbits of M under GL_m are represented by RRE matrices and
orbits of Hom(M, A) = M_{l x k}(F_q) under GL_k by CRE matrices. A code is
described, up to monomial equivalence, by how many of its coordinate
functionals fall in each CRE orbit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import qlinalg
from .characters import character_group, is_generating
from .codes import LinearCode, code_map, find_extension, preserves
from .errors import (EnumerationCapExceeded, InternalInconsistency, KNotGreaterThanM, NoMatrixWitness,
                     NotIsomorphism, NotInKernel, SocleConditionUnverified, ZeroFunction)
from .gf import field_of_order
from .linalg import (DEFAULT_CAP, FqMatrix, all_cre, all_matrix_array, all_rre, enumerate_cre,
                     enumerate_gl, index_of_arrays, matmul)
from .modules import (LeftModule, aut_group, cyclic_socle, hom_set, matrix_module, socle_condition,
                      socle_profile, submodule)

WOOD_CAP = 10 ** 5


def wood_length(q: int, k: int) -> int:
    return math.prod(1 + q ** i for i in range(1, k))


def matrix_weight(w, arr) -> int:
    if w == "hamming":
        return int(np.any(arr))
    return w(arr)


@dataclass
class WMatrix:
    q: int
    m: int
    k: int
    l: int
    rows: list  # nonzero m x l RREs
    cols: list  # nonzero l x k CREs
    entries: list

    @property
    def shape(self):
        return (len(self.rows), len(self.cols))

    def to_json(self) -> dict:
        return {"q": self.q, "m": self.m, "k": self.k, "l": self.l, "shape": list(self.shape),
                "rows": [r.tolist() for r in self.rows], "cols": [c.tolist() for c in self.cols],
                "entries": [[str(x) for x in row] for row in self.entries]}


def build_w_matrix(q: int, m: int, k: int, l: int, w="hamming", seed: int = 0,
                   cap: int | None = DEFAULT_CAP) -> WMatrix:
    """W[x, lam] = w(x lam) over nonzero orbit representatives.

    Every entry is re-evaluated on a second, randomly moved representative
    pair (P x, lam Q) to confirm it is well defined on orbits.
    """
    F = field_of_order(q)
    rows = [r for r in all_rre(m, l, F, cap) if not r.is_zero()]
    cols = [c for c in all_cre(l, k, F, cap) if not c.is_zero()]
    if cap is not None and len(rows) * len(cols) > cap:
        raise EnumerationCapExceeded(f"W matrix {len(rows)}x{len(cols)} exceeds cap {cap}")
    rng = np.random.default_rng(seed)
    gl_m = enumerate_gl(m, F, cap)
    gl_k = enumerate_gl(k, F, cap)
    entries = []
    for x in rows:
        row = []
        for lam in cols:
            val = matrix_weight(w, matmul(F, x.data, lam.data))
            P = gl_m[rng.integers(len(gl_m))].data
            Q = gl_k[rng.integers(len(gl_k))].data
            moved = matmul(F, matmul(F, P, x.data), matmul(F, lam.data, Q))
            if matrix_weight(w, moved) != val:
                raise InternalInconsistency("weight is not constant on orbit pairs")
            row.append(Fraction(val))
        entries.append(row)
    return WMatrix(q, m, k, l, rows, cols, entries)


def w_injectivity(W: WMatrix) -> dict:
    n_cols = len(W.cols)
    rank = qlinalg.rank(W.entries) if W.entries else 0
    basis = [] if rank == n_cols else qlinalg.nullspace(W.entries, n_cols)
    return {"injective": rank == n_cols, "rank": rank, "columns": n_cols, "kernel_basis": basis}


def default_kernel_vector(W: WMatrix):
    """First reduced kernel basis vector, cleared to coprime integers."""
    basis = w_injectivity(W)["kernel_basis"]
    if not basis:
        return None
    return qlinalg.primitive_integer(basis[0])


@dataclass
class CodePair:
    """Two parameterized codes sharing an information module, with f: x G+ -> x G-."""
    alphabet: LeftModule
    info_elements: np.ndarray       # all information words (matrices)
    plus_words: np.ndarray          # codeword of each information word
    minus_words: np.ndarray
    c_plus: LinearCode
    c_minus: LinearCode
    generator_images: np.ndarray
    lam_plus: list = dc_field(default_factory=list)
    lam_minus: list = dc_field(default_factory=list)

    @property
    def length(self):
        return self.plus_words.shape[1]

    def deltas(self) -> np.ndarray:
        A = self.alphabet
        return np.sum(self.plus_words != A.zero, axis=1) - np.sum(self.minus_words != A.zero, axis=1)

    def zero_columns(self):
        z = self.alphabet.zero
        return (np.nonzero(np.all(self.plus_words == z, axis=0))[0].tolist(),
                np.nonzero(np.all(self.minus_words == z, axis=0))[0].tolist())


def _matrix_codewords(F, A: LeftModule, info, functionals):
    """Row x -> (x lam_1, ..., x lam_N) as alphabet indices."""
    if not functionals:
        return np.zeros((len(info), 0), dtype=np.int64)
    lams = np.stack([f.data for f in functionals])  # (N, l, k)
    m, l = info.shape[1], info.shape[2]
    k = lams.shape[2]
    prod = np.zeros((len(info), len(functionals), m, k), dtype=np.int64)
    for t in range(l):
        prod = F.add_arr(prod, F.mul_arr(info[:, None, :, t, None], lams[None, :, t, None, :]))
    return index_of_arrays(F, prod)


def _pair_from_functionals(q, m, k, l, lam_plus, lam_minus) -> CodePair:
    F = field_of_order(q)
    A = matrix_module(q, m, k)
    M = matrix_module(q, m, l)
    info = all_matrix_array(F, m, l)
    plus = _matrix_codewords(F, A, info, lam_plus)
    minus = _matrix_codewords(F, A, info, lam_minus)
    gens = M.generators()
    c_plus = LinearCode(A, plus.shape[1], plus[gens])
    c_minus = LinearCode(A, minus.shape[1], minus[gens])
    c_plus._words = np.unique(plus, axis=0)
    c_minus._words = np.unique(minus, axis=0)
    return CodePair(A, info, plus, minus, c_plus, c_minus, minus[gens], list(lam_plus), list(lam_minus))


def kernel_to_codes(W: WMatrix, eta) -> CodePair:
    """Split eta into positive and negative parts and lay out that many copies
    of each orbit representative; pad the shorter side with zero functionals."""
    eta = [Fraction(x) for x in eta]
    if len(eta) != len(W.cols):
        raise NotInKernel("eta has the wrong length")
    if not any(eta):
        raise ZeroFunction("eta is zero")
    if any(v != 0 for v in qlinalg.mat_vec(W.entries, eta)):
        raise NotInKernel("W eta != 0")
    ints = qlinalg.primitive_integer(eta)
    F = field_of_order(W.q)
    zero = FqMatrix.zeros(F, W.l, W.k)
    lam_plus = [c for c, v in zip(W.cols, ints) if v > 0 for _ in range(v)]
    lam_minus = [c for c, v in zip(W.cols, ints) if v < 0 for _ in range(-v)]
    pad = len(lam_plus) - len(lam_minus)
    if pad > 0:
        lam_minus = [zero] * pad + lam_minus
    elif pad < 0:
        lam_plus = [zero] * (-pad) + lam_plus
    pair = _pair_from_functionals(W.q, W.m, W.k, W.l, lam_plus, lam_minus)
    if np.any(pair.deltas() != 0):
        raise InternalInconsistency("kernel vector produced codes of different weights")
    code_map(pair.c_plus, pair.generator_images)  # f must be an isomorphism
    return pair


def multiplicity_function(functionals, cols) -> list[int]:
    """Count functionals per nonzero CRE orbit (the zero orbit is dropped)."""
    from .linalg import cre
    index = {c.key(): i for i, c in enumerate(cols)}
    out = [0] * len(cols)
    for f in functionals:
        key = cre(f).key()
        if key in index:
            out[index[key]] += 1
    return out


@dataclass
class WoodCounterexample:
    q: int
    m: int
    k: int
    v_plus: list
    v_minus: list
    pair: CodePair
    report: dict

    def to_json(self) -> dict:
        return {"q": self.q, "m": self.m, "k": self.k,
                "v_plus": [v.tolist() for v in self.v_plus],
                "v_minus": [v.tolist() for v in self.v_minus],
                "report": self.report}


def wood_functionals(q: int, k: int, cap: int | None = WOOD_CAP):
    """(v_plus, v_minus): k x k CREs of even / odd rank r, each repeated q^C(r,2) times."""
    F = field_of_order(q)
    if cap is not None and wood_length(q, k) > cap:
        raise EnumerationCapExceeded(f"Wood length {wood_length(q, k)} exceeds cap {cap}")
    plus, minus = [], []
    for r in range(k + 1):
        reps = q ** math.comb(r, 2)
        for c in enumerate_cre(k, k, r, F):
            (plus if r % 2 == 0 else minus).extend([c] * reps)
    return plus, minus


def wood_counterexample(q: int, m: int, k: int, verify_extension: bool = False,
                        method: str = "auto", cap: int | None = WOOD_CAP) -> WoodCounterexample:
    if k <= m:
        raise KNotGreaterThanM(f"need k > m, got k={k}, m={m}")
    v_plus, v_minus = wood_functionals(q, k, cap)
    N = wood_length(q, k)
    if len(v_plus) != N or len(v_minus) != N:
        raise InternalInconsistency(f"lengths {len(v_plus)}, {len(v_minus)} differ from {N}")
    pair = _pair_from_functionals(q, m, k, k, v_plus, v_minus)
    deltas = pair.deltas()
    zp, zm = pair.zero_columns()
    A = pair.alphabet
    report = {
        "length": N,
        "L_plus": len(v_plus),
        "L_minus": len(v_minus),
        "information_words": int(len(pair.info_elements)),
        "delta_all_zero": bool(np.all(deltas == 0)),
        "zero_columns_plus": zp,
        "zero_columns_minus": zm,
        "zero_column_certificate": bool(zp) and not zm,
        "swc_preserved": preserves(A, pair.plus_words, pair.minus_words, "swc") is None,
        "aw_preserved": preserves(A, pair.plus_words, pair.minus_words, "aw") is None,
    }
    if not report["delta_all_zero"]:
        raise InternalInconsistency("Wood codes are not isometric")
    if verify_extension:
        res = find_extension(pair.c_plus, pair.generator_images, "hamming", method=method)
        report["extension_found"] = res.found
        report["extension_certificate"] = res.certificate
    return WoodCounterexample(q, m, k, v_plus, v_minus, pair, report)


def recheck_wood(doc: dict, method: str | None = None) -> dict:
    """Revalidate a serialized Wood report from its functionals alone.

    If the report carries an extension certificate (or ``method`` is given),
    the search is rerun on the codes rebuilt from the payload.
    """
    q, m, k = int(doc["q"]), int(doc["m"]), int(doc["k"])
    F = field_of_order(q)
    v_plus = [FqMatrix(F, v) for v in doc["v_plus"]]
    v_minus = [FqMatrix(F, v) for v in doc["v_minus"]]
    pair = _pair_from_functionals(q, m, k, k, v_plus, v_minus)
    zp, zm = pair.zero_columns()
    N = wood_length(q, k)
    checks = {
        "lengths": len(v_plus) == N == len(v_minus),
        "delta_all_zero": bool(np.all(pair.deltas() == 0)),
        "zero_column_certificate": bool(zp) and not zm,
    }
    try:
        code_map(pair.c_plus, pair.generator_images)
        checks["isomorphism"] = True
    except NotIsomorphism:
        checks["isomorphism"] = False
    cert = doc.get("report", {}).get("extension_certificate")
    if method is None and cert is not None:
        method = cert.get("method", "auto")
    if method is not None and checks["isomorphism"] and checks["delta_all_zero"]:
        res = find_extension(pair.c_plus, pair.generator_images, "hamming", method=method)
        checks["no_extension"] = not res.found
    return checks


# decision pipeline for general alphabets

def _generating_character(A: LeftModule):
    for chi in character_group(A):
        if is_generating(chi, A):
            return chi
    return None


def _component_functionals(H: LeftModule, simple_order: int, q: int):
    """Endomorphisms of a homogeneous semisimple H, one per kernel, grouped by
    the composition length r of the image; rank-r entries repeat q^C(r,2) times."""
    ends = hom_set(H, H)
    by_kernel = {}
    for f in ends:
        by_kernel.setdefault(f.kernel(), f)
    plus, minus = [], []
    for K in sorted(by_kernel, key=lambda s: (-len(s), sorted(s))):
        r = round(math.log(H.order // len(K), simple_order)) if len(K) < H.order else 0
        f = by_kernel[K]
        (plus if r % 2 == 0 else minus).extend([(r, f)] * q ** math.comb(r, 2))
    return plus, minus


def theorem_main_pipeline(A: LeftModule, verify_extension: bool = True, method: str = "auto") -> dict:
    """Decide the extension property for the symmetrized weight composition on A.

    Cyclic socle: report a generating character of A (A embeds in the
    character module). Otherwise build the Wood pair inside the homogeneous
    socle component with s > mu and certify that its swc-preserving
    isomorphism does not extend.
    """
    if not socle_condition(A):
        raise SocleConditionUnverified(f"{A.spec} fails the socle condition")
    cyclic, witness = cyclic_socle(A)
    profile = socle_profile(A)
    by_counts = all(c["s"] <= c["mu"] for c in profile)
    if by_counts != cyclic:
        raise NoMatrixWitness("multiplicity count and direct cyclic-socle search disagree")
    base = {"module": A.spec, "socle_condition": True, "socle_cyclic": cyclic,
            "socle_profile": [{"s": c["s"], "mu": c["mu"], "q": c["q"]} for c in profile]}
    if cyclic:
        chi = _generating_character(A)
        if chi is None:
            raise NoMatrixWitness("cyclic socle but no generating character")
        emb = {tuple(chi.values[A.act[r, a]] for r in range(A.ring.order)) for a in A.elements()}
        if len(emb) != A.order:
            raise InternalInconsistency("character embedding is not injective")
        base.update({"extension_property": True, "socle_generator": A.label(witness),
                     "generating_character": {"exponent": chi.exponent, "values": list(chi.values)}})
        return base

    comp = next(c for c in profile if c["s"] > c["mu"])
    q, mu, s = comp["q"], comp["mu"], comp["s"]
    H, incl = submodule(A, comp["members"])
    plus, minus = _component_functionals(H, comp["simple_order"], q)
    N = wood_length(q, s)
    if len(plus) != N or len(minus) != N:
        raise NoMatrixWitness(f"component functionals give lengths {len(plus)}, {len(minus)}, expected {N}")
    incl = np.array(incl, dtype=np.int64)
    plus_words = np.stack([incl[np.array(f.values)] for _, f in plus], axis=1)
    minus_words = np.stack([incl[np.array(f.values)] for _, f in minus], axis=1)
    gens = H.generators()
    c_plus = LinearCode(A, N, plus_words[gens])
    images = minus_words[gens]
    cmap = code_map(c_plus, images)
    G = aut_group(A)
    zero_plus = np.nonzero(np.all(plus_words == A.zero, axis=0))[0].tolist()
    zero_minus = np.nonzero(np.all(minus_words == A.zero, axis=0))[0].tolist()
    cert = {
        "length": N,
        "component": {"s": s, "mu": mu, "q": q},
        "codewords": int(len(cmap.domain_words)),
        "hamming_preserved": preserves(A, cmap.domain_words, cmap.image_words, "hamming") is None,
        "swc_preserved": preserves(A, cmap.domain_words, cmap.image_words, "swc", G) is None,
        "aw_preserved": preserves(A, cmap.domain_words, cmap.image_words, "aw") is None,
        "zero_columns_plus": zero_plus,
        "zero_columns_minus": zero_minus,
        "zero_column_certificate": bool(zero_plus) and not zero_minus,
        "ranks_plus": [r for r, _ in plus],
        "ranks_minus": [r for r, _ in minus],
        "generators_plus": [[A.label(int(a)) for a in g] for g in plus_words[gens]],
        "generator_images": [[A.label(int(a)) for a in g] for g in images],
    }
    if not (cert["swc_preserved"] and cert["zero_column_certificate"]):
        raise NoMatrixWitness("pulled-back pair failed validation")
    if verify_extension:
        res = find_extension(c_plus, images, "swc", G, method=method)
        cert["extension_found"] = res.found
        cert["extension_certificate"] = res.certificate
        if res.found:
            raise NoMatrixWitness("pulled-back pair extends")
    matrix_model = wood_counterexample(q, mu, s) if mu < s else None
    cert["matrix_model_length"] = matrix_model.report["length"] if matrix_model else None
    base.update({"extension_property": False, "witness": cert})
    return base
