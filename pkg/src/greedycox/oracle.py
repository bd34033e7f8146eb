"""Brute-force ground truth by Cayley-graph enumeration.

Nothing here imports the automaton or series modules.  Group elements
are integer matrices over the power basis of the field generator theta
(shape ``(degree, n, n)``), multiplied by polynomial convolution and
reduced with the monic minimal polynomial.  Descent sets come from BFS
lengths alone, never from root signs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .coxeter import (
    WEIGHT_SCHEMES,
    CoxeterSystem,
    Face,
    Nerve,
    Weighting,
    compute_nerve,
    conjugacy_classes,
    weighting,
)

DEFAULT_MAX_ELEMENTS = 10**5
_ENTRY_LIMIT = 2**50


class OracleError(RuntimeError):
    pass


class MatrixAlgebra:
    """Products of n x n matrices with entries in Z[theta]."""

    def __init__(self, system: CoxeterSystem):
        f = system.field
        self.degree = f.degree
        self.n = system.rank
        self.tail = np.array([-int(c) for c in f.min_poly[:-1]], dtype=np.int64)
        self.generators = tuple(self._reflection(system, k) for k in range(self.n))

    def _reflection(self, system: CoxeterSystem, k: int) -> np.ndarray:
        # s_k(alpha_j) = alpha_j + 2cos(pi/m_kj) alpha_k, so only row k moves
        M = np.zeros((self.degree, self.n, self.n), dtype=np.int64)
        M[0] = np.eye(self.n, dtype=np.int64)
        for j in range(self.n):
            M[:, k, j] = 0
            if j == k:
                M[0, k, k] = -1
                continue
            coeffs = system.two_cos[k, j].coeffs
            for i, c in enumerate(coeffs):
                if Fraction(c).denominator != 1:
                    raise OracleError("non-integral reflection entry")
                M[i, k, j] = int(c)
        return M

    def identity(self) -> np.ndarray:
        M = np.zeros((self.degree, self.n, self.n), dtype=np.int64)
        M[0] = np.eye(self.n, dtype=np.int64)
        return M

    def _check_product(self, X: np.ndarray, Y: np.ndarray) -> None:
        # bound |entries| of the unreduced product and every reduction step in
        # Python integers, since int64 overflow would wrap silently
        bound = int(np.abs(X).max()) * int(np.abs(Y).max()) * self.n * self.degree
        grow = 1 + int(np.abs(self.tail).max(initial=0))
        if bound * grow ** max(self.degree - 1, 0) > _ENTRY_LIMIT:
            raise OracleError("matrix entries exceed the exact int64 range")

    def mul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        self._check_product(X, Y)
        d = self.degree
        if d == 1:
            return (X[0] @ Y[0])[None]
        full = np.zeros((2 * d - 1, self.n, self.n), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                full[i + j] += X[i] @ Y[j]
        for k in range(2 * d - 2, d - 1, -1):
            # theta^k = sum_i tail[i] theta^(k-d+i)
            top = full[k]
            for i in range(d):
                full[k - d + i] += self.tail[i] * top
        return np.ascontiguousarray(full[:d])

    def word(self, letters: Iterable[int]) -> np.ndarray:
        M = self.identity()
        for k in letters:
            M = self.mul(M, self.generators[k])
        return M

    @staticmethod
    def key(M: np.ndarray) -> bytes:
        return M.tobytes()


@dataclass
class BallEntry:
    matrix: np.ndarray
    length: int
    parent: bytes | None
    generator: int | None
    descent: set = field(default_factory=set)


@dataclass
class CayleyBall:
    """Elements of word length <= radius keyed by their exact matrix bytes.

    ``kind`` is ``"standard"`` (generators S) or ``"greedy_A"`` (generators
    w_sigma over the proper nerve); ``generators`` names them.
    """

    system: CoxeterSystem
    kind: str
    radius: int
    generators: tuple
    gen_matrices: tuple
    elements: dict
    algebra: MatrixAlgebra = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, key: bytes) -> bool:
        return key in self.elements

    def length(self, key: bytes) -> int:
        return self.elements[key].length

    def counts(self) -> list[int]:
        c = Counter(e.length for e in self.elements.values())
        return [c.get(k, 0) for k in range(self.radius + 1)]

    def word_of(self, key: bytes) -> tuple:
        """Geodesic word from the BFS tree, leftmost generator first."""
        out = []
        while self.elements[key].parent is not None:
            e = self.elements[key]
            out.append(self.generators[e.generator])
            key = e.parent
        return tuple(out)


def longest_matrices(nerve: Nerve, alg: MatrixAlgebra) -> dict:
    idx = nerve.system.index
    return {f: alg.word(idx[g] for g in nerve.word(f)) for f in nerve.proper_faces}


def enumerate_ball(system: CoxeterSystem, gens: str = "standard", L: int = 4, *,
                   nerve: Nerve | None = None, max_elements: int = DEFAULT_MAX_ELEMENTS) -> CayleyBall:
    """All elements of length <= L over S or over A = {w_sigma}.

    New elements are found by left multiplication ``g * w``, so the BFS
    parent of an element is its suffix after removing one generator on the left.
    Every product ``g * w`` that lands one level deeper records ``g`` as a
    left descent of the product; since every element below the radius is
    expanded, this yields the full descent set of every ball element.
    """
    if L < 0:
        raise ValueError("radius must be non-negative")
    alg = MatrixAlgebra(system)
    if gens == "standard":
        names = tuple(system.generators)
        mats = alg.generators
    elif gens == "greedy_A":
        nerve = nerve or compute_nerve(system)
        lm = longest_matrices(nerve, alg)
        names = tuple(nerve.proper_faces)
        mats = tuple(lm[f] for f in names)
    else:
        raise ValueError(f"unknown generating set {gens!r}")
    e = alg.identity()
    elements = {alg.key(e): BallEntry(e, 0, None, None)}
    frontier = [alg.key(e)]
    for depth in range(1, L + 1):
        nxt = []
        for key in frontier:
            M = elements[key].matrix
            for g, G in enumerate(mats):
                P = alg.mul(G, M)
                k = alg.key(P)
                entry = elements.get(k)
                if entry is None:
                    entry = elements[k] = BallEntry(P, depth, key, g)
                    nxt.append(k)
                    if len(elements) > max_elements:
                        raise OracleError(f"ball exceeds {max_elements} elements at radius {depth}")
                if entry.length == depth:
                    entry.descent.add(g)
        frontier = nxt
    return CayleyBall(system, gens, L, names, mats, elements, alg)


def oracle_descent(ball: CayleyBall, key: bytes) -> frozenset:
    """{s : |s w| < |w|}, decided from BFS lengths only."""
    if ball.kind != "standard":
        raise ValueError("descents need the standard generating set")
    entry = ball.elements.get(key)
    if entry is None:
        raise OracleError("element outside the ball")
    return frozenset(ball.generators[g] for g in entry.descent)


def oracle_greedy_form(ball: CayleyBall, nerve: Nerve, key: bytes,
                       longest: dict | None = None) -> tuple[Face, ...]:
    """Letters sigma_n ... sigma_1 found by peeling w = w_sigma v with sigma = Desc(w)."""
    longest = longest or longest_matrices(nerve, ball.algebra)
    word = []
    while ball.length(key) > 0:
        sigma = oracle_descent(ball, key)
        if sigma not in longest:
            raise OracleError("descent set is not spherical")
        key = ball.algebra.key(ball.algebra.mul(longest[sigma], ball.elements[key].matrix))
        if key not in ball.elements:
            raise OracleError("peeled element left the ball")
        word.append(sigma)
    return tuple(word)


def class_monomial(ball: CayleyBall, key: bytes, classes=None) -> tuple[int, ...]:
    """Multiset of conjugacy classes along a BFS geodesic."""
    cc = classes or conjugacy_classes(ball.system)
    e = [0] * len(cc.classes)
    for g in ball.word_of(key):
        e[cc.class_of(g)] += 1
    return tuple(e)


def growth_counts(ball: CayleyBall, weighting=None) -> dict | list[int]:
    """Histogram by BFS length, or by ``weighting(key)`` when a callable is given."""
    if weighting is None:
        return ball.counts()
    return dict(Counter(weighting(k) for k in ball.elements))


# -- cross validation -----------------------------------------------------------------

def _word_monomial(w: Weighting, word) -> tuple[int, ...]:
    total = [0] * len(w.variables)
    for a in word:
        for i, e in enumerate(w(a)):
            total[i] += e
    return tuple(total)


@dataclass
class CrossValidation:
    radius: int
    elements: int
    words: int
    bijective: bool
    greedy_forms_agree: bool
    growth_agree: dict
    additive: bool
    series_support_ok: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.bijective and self.greedy_forms_agree and self.additive
                and self.series_support_ok and all(self.growth_agree.values()))


def _rep_coefficients(rep, nerve: Nerve, radius: int) -> dict:
    """Nonzero coefficients A Q_{s_n}...Q_{s_1} B over words of S-weight <= radius."""
    out = {}
    layer = {(): ({i: b for i, b in enumerate(rep.B) if b}, 0)}
    while layer:
        nxt = {}
        for word, (vec, wt) in layer.items():
            c = sum((rep.A[i] * v for i, v in vec.items()), Fraction(0))
            if not word:
                c += rep.constant
            if c:
                out[word] = c
            for a in rep.alphabet:
                w2 = wt + nerve.length(a)
                if w2 > radius:
                    continue
                y: dict = {}
                for (i, j), q in rep.Q[a].items():
                    if j in vec:
                        y[i] = y.get(i, 0) + q * vec[j]
                y = {i: v for i, v in y.items() if v}
                if y:
                    nxt[(a,) + word] = (y, w2)
        layer = nxt
    return out


def accepted_words(automaton, radius: int) -> list[tuple]:
    """Accepted words (written order) whose longest-element lengths sum to <= radius."""
    nerve = automaton.nerve
    out = []
    layer = [((), automaton.start, 0)]
    while layer:
        nxt = []
        for word, state, wt in layer:
            out.append(word)
            for a in automaton.alphabet:
                t = automaton.step(state, a)
                w2 = wt + nerve.length(a)
                if t is not None and w2 <= radius:
                    nxt.append(((a,) + word, t, w2))
        layer = nxt
    return out


def cross_validate(system: CoxeterSystem, automaton, rep, L: int, *,
                   max_elements: int = DEFAULT_MAX_ELEMENTS) -> CrossValidation:
    """Compare automaton and series against the oracle on the S-ball of radius L.

    Accepted words are restricted to those whose image has S-length <= L
    (by length additivity, the sum of their letters' longest lengths).
    """
    nerve: Nerve = automaton.nerve
    ball = enumerate_ball(system, "standard", L, max_elements=max_elements)
    alg = ball.algebra
    longest = longest_matrices(nerve, alg)
    failures: list = []

    words = accepted_words(automaton, L)
    images = {}
    for w in words:
        M = alg.identity()
        for a in w:
            M = alg.mul(M, longest[a])
        images[w] = alg.key(M)
    image_set = set(images.values())
    bijective = len(image_set) == len(words) and image_set == set(ball.elements)
    if not bijective:
        failures.append(f"bijectivity: {len(words)} words, {len(image_set)} images, {len(ball)} elements")

    forms = {k: oracle_greedy_form(ball, nerve, k, longest) for k in ball.elements}
    additive = True
    greedy_ok = True
    for w, k in images.items():
        if k not in ball.elements:
            additive = False
            failures.append(f"image of {[nerve.label(a) for a in w]} outside the ball")
            continue
        if ball.length(k) != sum(nerve.length(a) for a in w):
            additive = False
            failures.append(f"length additivity fails at {[nerve.label(a) for a in w]}")
        if forms[k] != w:
            greedy_ok = False
            failures.append(f"greedy form mismatch at {[nerve.label(a) for a in w]}")

    coeffs = _rep_coefficients(rep, nerve, L)
    support_ok = set(coeffs) == set(words) and all(c == 1 for c in coeffs.values())
    if not support_ok:
        failures.append("series support differs from the accepted words")

    classes = conjugacy_classes(system)
    growth = {}
    for scheme in WEIGHT_SCHEMES:
        wt = weighting(nerve, scheme, classes=classes)
        series_side: Counter = Counter()
        for w, c in coeffs.items():
            series_side[_word_monomial(wt, w)] += c
        if scheme == "single":
            oracle_side = Counter({(n,): c for n, c in enumerate(ball.counts()) if c})
        elif scheme == "standard_multi":
            oracle_side = Counter(class_monomial(ball, k, classes) for k in ball.elements)
        else:
            oracle_side = Counter(_word_monomial(wt, forms[k]) for k in ball.elements)
        growth[scheme] = +series_side == +oracle_side
        if not growth[scheme]:
            failures.append(f"growth mismatch under {scheme} weighting")
    return CrossValidation(L, len(ball), len(words), bijective, greedy_ok, growth, additive,
                           support_ok, failures)


def a_length_agreement(system: CoxeterSystem, nerve: Nerve, radius: int) -> list[tuple]:
    """Elements whose A-length differs from their greedy word length.

    Returns (standard geodesic, A-length, greedy length) triples; empty for
    right-angled systems.
    """
    ball = enumerate_ball(system, "standard", radius)
    aball = enumerate_ball(system, "greedy_A", radius, nerve=nerve)
    longest = longest_matrices(nerve, ball.algebra)
    out = []
    for k, e in ball.elements.items():
        greedy = len(oracle_greedy_form(ball, nerve, k, longest))
        a_len = aball.length(k) if k in aball.elements else None
        if a_len != greedy:
            out.append((ball.word_of(k), a_len, greedy))
    return out
