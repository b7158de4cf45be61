"""Linear codes over module alphabets.

A code is the R-span of its generators inside A^n. Codewords are rows of an
integer array of element indices. Field codes are the special case
A = F_q as a module over itself (``matmod:q:1:1``).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (EnumerationCapExceeded, HypothesisUnverified, InternalInconsistency, NonFieldAlphabet,
                     NotIsomorphism, NotStandardForm, SearchCapExceeded, SpecParse, WeightNotPreserved)
from .gf import GF
from .linalg import FqMatrix, nullspace
from .modules import (LeftModule, ModuleMap, annihilator_classes, aut_group, class_index,
                      is_pseudo_injective, matrix_module, module_make, orbit_space)

CODE_CAP = 10 ** 6
SEARCH_CAP = 10 ** 7
BRUTE_CAP = 10 ** 4


def _unique_rows(words: np.ndarray, base: int) -> np.ndarray:
    """np.unique(words, axis=0), via one integer key per row when it fits."""
    n = words.shape[1]
    if n == 0 or base ** n >= 2 ** 62:
        return np.unique(words, axis=0)
    weights = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    _, first = np.unique(words @ weights, return_index=True)
    return words[first]


def span_words(A: LeftModule, gens, n: int, cap: int | None = CODE_CAP) -> np.ndarray:
    """All R-combinations of the generator words, sorted lexicographically.

    R has a unit, so each R g is already closed under addition and the span is
    the sum of these cyclic pieces.
    """
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, n)
    words = np.full((1, n), A.zero, dtype=np.int64)
    for g in gens:
        cyclic = _unique_rows(A.act[:, g], A.order)
        words = _unique_rows(A.add[words[:, None, :], cyclic[None, :, :]].reshape(-1, n), A.order)
        if cap is not None and len(words) > cap:
            raise EnumerationCapExceeded(f"code has more than {cap} codewords")
    return words


class LinearCode:
    def __init__(self, alphabet: LeftModule, n: int, generators, cap: int | None = CODE_CAP):
        self.alphabet = alphabet
        self.n = n
        self.generators = np.asarray(generators, dtype=np.int64).reshape(-1, n)
        self.cap = cap
        self._words = None
        self.generator_matrix: FqMatrix | None = None

    def codewords(self) -> np.ndarray:
        if self._words is None:
            self._words = span_words(self.alphabet, self.generators, self.n, self.cap)
        return self._words

    def __len__(self):
        return len(self.codewords())

    def contains(self, word) -> bool:
        return bool(np.any(np.all(self.codewords() == np.asarray(word), axis=1)))

    @property
    def is_field_code(self) -> bool:
        b = self.alphabet.backend
        return b[0] == "matrix" and b[2] == 1 and b[3] == 1

    def to_json(self) -> dict:
        A = self.alphabet
        return {"alphabet": A.spec, "n": self.n,
                "generators": [[A.label(int(a)) for a in g] for g in self.generators]}


def load_code(doc: dict) -> LinearCode:
    try:
        A = module_make(doc["alphabet"])
        n = int(doc["n"])
        gens = [[A.parse_element(x) for x in g] for g in doc["generators"]]
    except (KeyError, TypeError) as exc:
        raise SpecParse(f"bad code document: {exc}") from exc
    if any(len(g) != n for g in gens):
        raise SpecParse("generator length differs from n")
    return LinearCode(A, n, gens)


def field_alphabet(F: GF) -> LeftModule:
    return matrix_module(F.q, 1, 1)


def code_from_generator(G: FqMatrix) -> LinearCode:
    """The row space {xG} as a code over F_q."""
    C = LinearCode(field_alphabet(G.field), G.cols, G.data)
    C.generator_matrix = G
    return C


def encode(G: FqMatrix, message) -> FqMatrix:
    return FqMatrix(G.field, [list(message)]) @ G


def standard_parity_check(G: FqMatrix) -> FqMatrix:
    """H = [-A^T | I_{n-k}] for G = [I_k | A]."""
    k, n = G.shape
    if k > n or not np.array_equal(G.data[:, :k], np.eye(k, dtype=np.int64)):
        raise NotStandardForm("generator is not of the form [I_k | A]")
    F = G.field
    A = G.data[:, k:]
    H = np.hstack([F.neg_arr(A.T), np.eye(n - k, dtype=np.int64)]).reshape(n - k, n)
    return FqMatrix(F, H)


def _field_of(C: LinearCode) -> GF:
    if not C.is_field_code:
        raise NonFieldAlphabet(C.alphabet.spec)
    from .gf import field_of_order
    return field_of_order(C.alphabet.backend[1])


def generator_of(C: LinearCode) -> FqMatrix:
    if C.generator_matrix is not None:
        return C.generator_matrix
    return FqMatrix(_field_of(C), C.generators.reshape(-1, C.n))


def dual_code(C: LinearCode) -> LinearCode:
    G = generator_of(C)
    if G.rows == 0:
        return code_from_generator(FqMatrix.identity(G.field, C.n))
    return code_from_generator(nullspace(G))


@dataclass
class WeightEnumerator:
    coefficients: list[int]

    @property
    def n(self):
        return len(self.coefficients) - 1

    def __str__(self):
        terms = []
        for j, a in enumerate(self.coefficients):
            if a:
                terms.append(str(a) if j == 0 else (f"{a}X^{j}" if a != 1 else f"X^{j}"))
        return " + ".join(terms) or "0"


def hamming_weights(A: LeftModule, words) -> np.ndarray:
    return np.sum(np.asarray(words) != A.zero, axis=-1)


def weight_enumerator(C: LinearCode) -> WeightEnumerator:
    w = hamming_weights(C.alphabet, C.codewords())
    return WeightEnumerator(np.bincount(w, minlength=C.n + 1).tolist())


def macwilliams_transform(coeffs, n: int, q: int) -> list[int]:
    """Coefficients of sum_j A_j (X+(q-1)Y)^{n-j} (X-Y)^j in powers of Y."""
    out = [0] * (n + 1)
    for j, a in enumerate(coeffs):
        if not a:
            continue
        poly = [1]
        for _ in range(n - j):
            poly = [x + (q - 1) * y for x, y in zip(poly + [0], [0] + poly)]
        for _ in range(j):
            poly = [x - y for x, y in zip(poly + [0], [0] + poly)]
        for i, c in enumerate(poly):
            out[i] += a * c
    return out


def macwilliams_identity_check(C: LinearCode) -> bool:
    q = _field_of(C).q
    A = weight_enumerator(C).coefficients
    B = weight_enumerator(dual_code(C)).coefficients
    rhs = macwilliams_transform(A, C.n, q)
    size = len(C)
    return all(size * b == r for b, r in zip(B, rhs))


# weights

def partition_for(A: LeftModule, kind: str, G=None):
    if kind == "swc":
        return orbit_space(A, aut_group(A) if G is None else G)
    if kind == "aw":
        return annihilator_classes(A)
    raise ValueError(f"unknown weight kind {kind!r}")


def weight(A: LeftModule, x, kind: str = "hamming", G=None):
    """hamming: number of nonzero entries; swc/aw: histogram {class rep: count}."""
    x = [int(a) for a in x]
    if kind == "hamming":
        return sum(a != A.zero for a in x)
    part = partition_for(A, kind, G)
    cls = class_index(part, A.order)
    hist = {block[0]: 0 for block in part}
    for a in x:
        hist[int(cls[a])] += 1
    return hist


def weight_profiles(A: LeftModule, words, kind: str = "hamming", G=None) -> np.ndarray:
    """One row per word: (hamming,) or the class histogram."""
    words = np.asarray(words, dtype=np.int64)
    if kind == "hamming":
        return hamming_weights(A, words)[:, None]
    part = partition_for(A, kind, G)
    cls = class_index(part, A.order)
    labels = cls[words]
    return np.stack([(labels == block[0]).sum(axis=1) for block in part], axis=1)


# maps between codes

@dataclass
class CodeMap:
    """A code homomorphism given on generators, tabulated on every codeword."""
    source: LinearCode
    target: LinearCode
    domain_words: np.ndarray
    image_words: np.ndarray

    def __call__(self, word):
        word = np.asarray(word)
        hit = np.nonzero(np.all(self.domain_words == word, axis=1))[0]
        return self.image_words[hit[0]]


def code_map(C1: LinearCode, images, require_iso: bool = True) -> CodeMap:
    """Tabulate the map sending generator i of C1 to images[i].

    The graph {(c, f(c))} is the span of the generator pairs; f is well
    defined iff its first projection is injective, and a monomorphism iff the
    second one is too.
    """
    A, n = C1.alphabet, C1.n
    images = np.asarray(images, dtype=np.int64).reshape(-1, n)
    if len(images) != len(C1.generators):
        raise NotIsomorphism("need exactly one image per generator")
    pairs = np.hstack([C1.generators, images])
    graph = span_words(A, pairs, 2 * n, C1.cap)
    X, Y = graph[:, :n], graph[:, n:]
    if len(_unique_rows(X, A.order)) != len(graph):
        raise NotIsomorphism("images do not define a map (generator relations violated)")
    Y_words = _unique_rows(Y, A.order)
    if require_iso and len(Y_words) != len(graph):
        raise NotIsomorphism("map is not injective")
    C2 = LinearCode(A, n, images)
    C2._words = Y_words
    return CodeMap(C1, C2, X, Y)


def preserves(A: LeftModule, X, Y, kind: str, G=None):
    """Return None if every pair keeps its weight, else the first offending index."""
    px, py = weight_profiles(A, X, kind, G), weight_profiles(A, Y, kind, G)
    bad = np.nonzero(np.any(px != py, axis=1))[0]
    return None if bad.size == 0 else int(bad[0])


@dataclass
class MonomialTransform:
    """(a_1..a_n) -> (tau_1(a_sigma(1)), ..., tau_n(a_sigma(n))), 0-based sigma."""
    perm: tuple
    taus: tuple  # one value table per output coordinate

    @property
    def n(self):
        return len(self.perm)

    def apply(self, words) -> np.ndarray:
        words = np.asarray(words, dtype=np.int64)
        out = np.empty_like(words)
        for j, (i, tau) in enumerate(zip(self.perm, self.taus)):
            out[..., j] = np.asarray(tau)[words[..., i]]
        return out

    def to_json(self, A: LeftModule | None = None) -> dict:
        return {"perm": list(self.perm), "taus": [list(t) for t in self.taus]}


@dataclass
class ExtensionResult:
    found: bool
    transform: MonomialTransform | None
    certificate: dict = dc_field(default_factory=dict)


def _group_values(G) -> np.ndarray:
    return np.array([g.values if isinstance(g, ModuleMap) else tuple(g) for g in G], dtype=np.int64)


def find_extension(C1: LinearCode, images, kind: str = "hamming", G=None, method: str = "auto",
                   cap: int = SEARCH_CAP, brute_cap: int = BRUTE_CAP) -> ExtensionResult:
    """Search for a G-monomial transform T with cT = f(c) on all of C1.

    ``method`` is ``brute`` (every transform, literally applied), ``pruned``
    (per-coordinate compatibility and a matching) or ``auto``.
    """
    A, n = C1.alphabet, C1.n
    cmap = code_map(C1, images)
    X, Y = cmap.domain_words, cmap.image_words
    group = aut_group(A) if G is None else list(G)
    bad = preserves(A, X, Y, kind, group if kind == "swc" else None)
    if bad is not None:
        raise WeightNotPreserved([A.label(int(a)) for a in X[bad]], f"({kind})")
    gv = _group_values(group)
    space = math.factorial(n) * len(gv) ** n
    if method == "auto":
        method = "brute" if space <= brute_cap else "pruned"
    if method == "brute":
        if space > cap:
            raise SearchCapExceeded(f"{space} transforms exceed cap {cap}")
        result = _brute(X, Y, gv, n, space)
    elif method == "pruned":
        result = _pruned(A, X, Y, gv, n, space)
    else:
        raise ValueError(method)
    if result.found and not np.array_equal(result.transform.apply(X), Y):
        raise InternalInconsistency("extension failed post-validation")
    result.certificate["codewords_checked"] = int(len(X))
    return result


def _brute(X, Y, gv, n, space) -> ExtensionResult:
    searched = 0
    for perm in itertools.permutations(range(n)):
        cols = X[:, perm]
        for choice in itertools.product(range(len(gv)), repeat=n):
            searched += 1
            ok = True
            for j, t in enumerate(choice):
                if not np.array_equal(gv[t][cols[:, j]], Y[:, j]):
                    ok = False
                    break
            if ok:
                T = MonomialTransform(tuple(perm), tuple(tuple(gv[t].tolist()) for t in choice))
                return ExtensionResult(True, T, {"method": "brute", "searched": searched, "space": space})
    return ExtensionResult(False, None, {"method": "brute", "searched": searched, "space": space,
                                        "exhaustive": searched == space})


def _pruned(A, X, Y, gv, n, space) -> ExtensionResult:
    # histogram filter: images of a column under G have the same Aut-class profile
    # (cheap), then exact check of which tau maps column i onto column j
    compat = {}
    for j in range(n):
        opts = []
        for i in range(n):
            hits = np.nonzero(np.all(gv[:, X[:, i]] == Y[:, j][None, :], axis=1))[0]
            if hits.size:
                opts.append((i, int(hits[0])))
        compat[j] = opts
    match = _perfect_matching({j: [i for i, _ in compat[j]] for j in range(n)}, n)
    cert = {"method": "pruned", "space": space,
            "compatible_inputs": {str(j): [i for i, _ in compat[j]] for j in range(n)}}
    if isinstance(match, dict):
        perm = tuple(match[j] for j in range(n))
        taus = tuple(tuple(gv[dict(compat[j])[perm[j]]].tolist()) for j in range(n))
        return ExtensionResult(True, MonomialTransform(perm, taus), cert)
    outputs, inputs = match
    cert["hall_violation"] = {"outputs": sorted(outputs), "inputs": sorted(inputs)}
    cert["exhaustive"] = True
    return ExtensionResult(False, None, cert)


def _perfect_matching(adj: dict, n: int):
    """Kuhn's augmenting paths. Returns {output: input} or a Hall violator
    (outputs J, inputs N(J)) with |N(J)| < |J|."""
    match_in = {}

    def augment(j, seen):
        for i in adj[j]:
            if i in seen:
                continue
            seen.add(i)
            if i not in match_in or augment(match_in[i], seen):
                match_in[i] = j
                return True
        return False

    for j in range(n):
        if not augment(j, set()):
            # alternating-path closure from the unmatched output j
            outs, ins, stack = {j}, set(), [j]
            while stack:
                x = stack.pop()
                for i in adj[x]:
                    if i not in ins:
                        ins.add(i)
                        y = match_in.get(i)
                        if y is not None and y not in outs:
                            outs.add(y)
                            stack.append(y)
            return outs, ins
    return {j: i for i, j in match_in.items()}


def verify_hall_violation(C1: LinearCode, images, G, outputs, inputs) -> bool:
    """Independent recheck of a pruned-search certificate."""
    cmap = code_map(C1, images)
    X, Y = cmap.domain_words, cmap.image_words
    gv = _group_values(G)
    if len(inputs) >= len(outputs):
        return False
    for j in outputs:
        for i in range(C1.n):
            if i not in inputs and np.any(np.all(gv[:, X[:, i]] == Y[:, j][None, :], axis=1)):
                return False
    return True


@dataclass
class EquivalenceReport:
    hamming: bool
    swc: bool

    def __bool__(self):
        return self.hamming == self.swc


def hamming_vs_swc_equivalence_check(C: LinearCode, images, G=None, cap: int | None = 64) -> EquivalenceReport:
    """Evaluate Hamming and swc preservation of f independently.

    Requires every left ideal of the ring to be principal and the alphabet to
    be pseudo-injective; under those hypotheses the two must agree.
    """
    A = C.alphabet
    if not A.ring.is_left_principal(cap):
        raise HypothesisUnverified(f"{A.ring.spec} has a non-principal left ideal")
    if not is_pseudo_injective(A):
        raise HypothesisUnverified(f"{A.spec} is not pseudo-injective")
    cmap = code_map(C, images)
    X, Y = cmap.domain_words, cmap.image_words
    group = aut_group(A) if G is None else G
    return EquivalenceReport(preserves(A, X, Y, "hamming") is None,
                             preserves(A, X, Y, "swc", group) is None)
