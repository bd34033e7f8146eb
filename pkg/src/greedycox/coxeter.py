"""Coxeter systems: ingestion, nerve, longest elements, conjugacy classes.

Group definition format (UTF-8, line oriented)::

    # affine B2
    generators: s1 s2 s3
    m: s1 s2 4
    m: s2 s3 4
    m: s1 s3 2

Pairs that are not listed get label ``inf``; ``0`` is accepted as a
spelling of ``inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exact import CycReal, FieldSpec, embed_two_cos, make_field

INF = math.inf

Face = frozenset


class DefinitionError(ValueError):
    """Malformed or inconsistent group definition."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def format_label(m) -> str:
    return "inf" if m == INF else str(m)


@dataclass(frozen=True, eq=False)
class CoxeterSystem:
    """A Coxeter system (W, S) given by its labels m(s, s')."""

    generators: tuple[str, ...]
    labels: tuple[tuple, ...]  # labels[i][j] = m(s_i, s_j), INF for infinity
    field: FieldSpec

    @classmethod
    def from_labels(cls, generators: Sequence[str], pairs: dict | None = None) -> CoxeterSystem:
        """Build from ``{(a, b): m}``; missing pairs default to infinity."""
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise DefinitionError("duplicate generator names")
        index = {g: i for i, g in enumerate(gens)}
        n = len(gens)
        table = [[INF] * n for _ in range(n)]
        for i in range(n):
            table[i][i] = 1
        for (a, b), m in (pairs or {}).items():
            if a not in index or b not in index:
                raise DefinitionError(f"unknown generator in pair ({a}, {b})")
            i, j = index[a], index[b]
            m = _normalise_label(m)
            if i == j:
                if m != 1:
                    raise DefinitionError(f"m({a},{a}) must be 1")
                continue
            if m != INF and m < 2:
                raise DefinitionError(f"m({a},{b}) must be >= 2")
            for x, y in ((i, j), (j, i)):
                if table[x][y] != INF and table[x][y] != m:
                    raise DefinitionError(f"conflicting labels for ({a}, {b})")
                table[x][y] = m
        finite = {table[i][j] for i in range(n) for j in range(n) if i != j and table[i][j] != INF}
        return cls(gens, tuple(tuple(r) for r in table), make_field(sorted(finite)))

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def index(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.generators)}

    def m(self, a: str, b: str):
        return self.labels[self.index[a]][self.index[b]]

    @cached_property
    def two_cos(self) -> np.ndarray:
        """Matrix of 2cos(pi/m(s, s')); twice the cosine part of the Gram form."""
        n = self.rank
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = embed_two_cos(self.labels[i][j], self.field)
        return out

    @cached_property
    def reflection_scalars(self) -> tuple[tuple, ...]:
        """two_cos entries, with rational values unwrapped to plain numbers for speed."""
        return tuple(
            tuple(x.coeffs[0] if not any(x.coeffs[1:]) else x for x in row)
            for row in self.two_cos
        )

    @cached_property
    def gram(self) -> np.ndarray:
        """B(alpha_s, alpha_s') = -cos(pi/m(s, s')); unit diagonal."""
        n = self.rank
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = self.field(1) if i == j else -self.two_cos[i, j] / 2
        return out

    @property
    def is_right_angled(self) -> bool:
        return all(self.labels[i][j] in (2, INF)
                   for i in range(self.rank) for j in range(self.rank) if i != j)

    def face(self, names: Iterable[str]) -> Face:
        f = frozenset(names)
        unknown = f - set(self.generators)
        if unknown:
            raise KeyError(f"unknown generators {sorted(unknown)}")
        return f

    def face_key(self, face: Face) -> tuple:
        """Graded-lexicographic sort key by generator order."""
        idx = sorted(self.index[g] for g in face)
        return (len(idx), idx)

    def face_label(self, face: Face) -> str:
        if not face:
            return "{}"
        return "{" + ",".join(sorted(face, key=self.index.__getitem__)) + "}"

    @cached_property
    def reflections(self) -> tuple[np.ndarray, ...]:
        """Simple reflections acting on coordinates in the simple-root basis.

        s(beta) = beta - 2 B(beta, alpha_s) alpha_s, so only row s differs
        from the identity; row s holds 2cos(pi/m(s, .)) with -1 on the diagonal.
        """
        n = self.rank
        one, zero = self.field(1), self.field(0)
        mats = []
        for s in range(n):
            M = np.empty((n, n), dtype=object)
            for i in range(n):
                for j in range(n):
                    M[i, j] = one if i == j else zero
            for j in range(n):
                M[s, j] = -one if j == s else self.two_cos[s, j]
            mats.append(M)
        return tuple(mats)

    def identity_matrix(self) -> np.ndarray:
        n = self.rank
        M = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                M[i, j] = self.field(1 if i == j else 0)
        return M

    def word_matrix(self, word: Iterable[str]) -> np.ndarray:
        M = self.identity_matrix()
        for g in word:
            M = M @ self.reflections[self.index[g]]
        return M

    def __repr__(self):
        return f"CoxeterSystem({' '.join(self.generators)}; N={self.field.N})"


def _normalise_label(m):
    if isinstance(m, str):
        m = m.strip().lower()
        if m in ("inf", "infinity", "oo", "0"):
            return INF
        try:
            m = int(m)
        except ValueError:
            raise DefinitionError(f"bad label {m!r}") from None
    if m == 0:
        return INF
    if m == INF:
        return INF
    if not isinstance(m, int):
        raise DefinitionError(f"bad label {m!r}")
    return m


def parse_definition(text: str) -> CoxeterSystem:
    generators: list[str] | None = None
    pairs: dict = {}
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise DefinitionError(f"expected 'key: value', got {raw.strip()!r}", lineno)
        key = key.strip().lower()
        fields = rest.split()
        if key == "generators":
            if generators is not None:
                raise DefinitionError("generators declared twice", lineno)
            if not fields:
                raise DefinitionError("no generators given", lineno)
            if len(set(fields)) != len(fields):
                raise DefinitionError("duplicate generator names", lineno)
            generators = fields
        elif key == "m":
            if generators is None:
                raise DefinitionError("'m:' before 'generators:'", lineno)
            if len(fields) != 3:
                raise DefinitionError("expected 'm: <a> <b> <k>'", lineno)
            a, b, k = fields
            for g in (a, b):
                if g not in generators:
                    raise DefinitionError(f"unknown generator {g!r}", lineno)
            try:
                label = _normalise_label(k)
            except DefinitionError as exc:
                raise DefinitionError(str(exc), lineno) from None
            if a == b:
                if label != 1:
                    raise DefinitionError(f"m({a},{a}) must be 1", lineno)
                continue
            if label != INF and label < 2:
                raise DefinitionError(f"m({a},{b}) must be >= 2", lineno)
            pair = frozenset((a, b))
            if pair in seen and seen[pair] != label:
                raise DefinitionError(f"non-symmetric or conflicting label for ({a}, {b})", lineno)
            seen[pair] = label
            pairs[(a, b)] = label
        else:
            raise DefinitionError(f"unknown key {key!r}", lineno)
    if generators is None:
        raise DefinitionError("missing 'generators:' line")
    return CoxeterSystem.from_labels(generators, pairs)


def write_definition(system: CoxeterSystem) -> str:
    lines = ["generators: " + " ".join(system.generators)]
    for i, j in combinations(range(system.rank), 2):
        m = system.labels[i][j]
        if m != INF:
            lines.append(f"m: {system.generators[i]} {system.generators[j]} {m}")
    return "\n".join(lines) + "\n"


# -- spherical subsets -------------------------------------------------------

def is_spherical(system: CoxeterSystem, sigma: Iterable[str]) -> bool:
    """Finite parabolic test: Gram block positive definite (Sylvester)."""
    idx = sorted(system.index[g] for g in sigma)
    if not idx:
        return True
    if any(system.labels[i][j] == INF for i in idx for j in idx):
        return False
    # leading principal minors are all positive iff every pivot of
    # unpivoted elimination is positive
    a = [[system.gram[i, j] for j in idx] for i in idx]
    n = len(idx)
    for k in range(n):
        if a[k][k].sign() <= 0:
            return False
        inv = a[k][k].inverse()
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f.is_zero():
                continue
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return True


def _is_positive_root(vec) -> bool:
    for x in vec:
        s = x.sign()
        if s:
            return s > 0
    raise ValueError("zero vector is not a root")


def longest_element(system: CoxeterSystem, sigma: Iterable[str]) -> tuple[tuple[str, ...], int]:
    """Reduced word and length of the longest element of W_sigma (greedy ascent)."""
    sigma = sorted(system.face(sigma), key=system.index.__getitem__)
    if not sigma:
        raise ValueError("longest element of the empty face is the identity; not a letter")
    if not is_spherical(system, sigma):
        raise ValueError(f"{system.face_label(frozenset(sigma))} is not spherical")
    M = system.identity_matrix()
    word: list[str] = []
    cap = 10_000
    while True:
        for g in sigma:
            j = system.index[g]
            # |w s| > |w|  iff  w(alpha_s) > 0
            if _is_positive_root(M[:, j]):
                M = M @ system.reflections[j]
                word.append(g)
                break
        else:
            return tuple(word), len(word)
        if len(word) > cap:
            raise RuntimeError("greedy ascent did not terminate")


# -- nerve ---------------------------------------------------------------------

@dataclass(frozen=True)
class FaceRecord:
    face: Face
    longest_length: int
    reduced_word: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class Nerve:
    """Spherical subsets of S, graded-lexicographically ordered, empty face first."""

    system: CoxeterSystem
    faces: tuple[Face, ...]
    records: dict = field(repr=False)

    @property
    def proper_faces(self) -> tuple[Face, ...]:
        return self.faces[1:]

    @cached_property
    def position(self) -> dict[Face, int]:
        return {f: i for i, f in enumerate(self.faces)}

    def __contains__(self, face) -> bool:
        return frozenset(face) in self.position

    def __len__(self) -> int:
        return len(self.faces)

    def length(self, face: Face) -> int:
        return 0 if not face else self.records[face].longest_length

    def word(self, face: Face) -> tuple[str, ...]:
        return () if not face else self.records[face].reduced_word

    def label(self, face: Face) -> str:
        return self.system.face_label(face)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def count_by_size(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            out[len(f)] = out.get(len(f), 0) + 1
        return out


def compute_nerve(system: CoxeterSystem) -> Nerve:
    gens = system.generators
    faces = {frozenset()}
    layer = [frozenset()]
    while layer:
        nxt = set()
        for f in layer:
            top = max((system.index[g] for g in f), default=-1)
            for j in range(top + 1, system.rank):
                cand = f | {gens[j]}
                # faces of spherical sets are spherical: check facets first
                if all(cand - {g} in faces for g in cand) and is_spherical(system, cand):
                    nxt.add(cand)
        faces |= nxt
        layer = sorted(nxt, key=system.face_key)
    ordered = tuple(sorted(faces, key=system.face_key))
    records = {}
    for f in ordered[1:]:
        word, length = longest_element(system, f)
        records[f] = FaceRecord(f, length, word)
    return Nerve(system, ordered, records)


# -- conjugacy classes of generators ----------------------------------------------

@dataclass(frozen=True)
class ConjClasses:
    classes: tuple[tuple[str, ...], ...]
    index: dict

    def class_of(self, s: str) -> int:
        return self.index[s]


def conjugacy_classes(system: CoxeterSystem, coarsening: Sequence[Sequence[str]] | None = None) -> ConjClasses:
    """Components of the odd-label graph; optionally merged by a coarser partition.

    A user coarsening must be a partition of S whose blocks are unions of the
    odd-graph components.
    """
    gens = system.generators
    parent = {g: g for g in gens}

    def find(g):
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    for i, j in combinations(range(system.rank), 2):
        m = system.labels[i][j]
        if m != INF and m % 2 == 1:
            parent[find(gens[i])] = find(gens[j])
    comps: dict[str, list[str]] = {}
    for g in gens:
        comps.setdefault(find(g), []).append(g)
    blocks = list(comps.values())
    if coarsening is not None:
        user = [list(b) for b in coarsening]
        flat = [g for b in user for g in b]
        if sorted(flat) != sorted(gens):
            raise ValueError("coarsening must partition the generators")
        where = {g: k for k, b in enumerate(user) for g in b}
        for b in blocks:
            if len({where[g] for g in b}) != 1:
                raise ValueError("coarsening splits a conjugacy class")
        blocks = user
    blocks = sorted((sorted(b, key=system.index.__getitem__) for b in blocks),
                    key=lambda b: system.index[b[0]])
    classes = tuple(tuple(b) for b in blocks)
    return ConjClasses(classes, {g: k for k, b in enumerate(classes) for g in b})


# -- weightings ----------------------------------------------------------------------

WEIGHT_SCHEMES = ("single", "greedy", "standard_multi", "per_letter", "dimension")


@dataclass(frozen=True)
class Weighting:
    """Monomial substitution face -> exponent vector over ``variables``."""

    scheme: str
    variables: tuple[str, ...]
    monomials: dict

    def __call__(self, face: Face) -> tuple[int, ...]:
        return self.monomials[face]


def _face_variable(system: CoxeterSystem, face: Face) -> str:
    return "t_" + "_".join(sorted(face, key=system.index.__getitem__))


def weighting(nerve: Nerve, scheme: str, *, classes: ConjClasses | None = None,
              names: Sequence[str] | None = None) -> Weighting:
    """Substitution for one of the schemes in :data:`WEIGHT_SCHEMES`.

    ``dimension`` sends every face of dimension d to the d-th variable of
    ``names`` (default ``x, y, z, ...``).
    """
    system = nerve.system
    faces = nerve.proper_faces
    if scheme == "single":
        return Weighting(scheme, ("t",), {f: (nerve.length(f),) for f in faces})
    if scheme == "greedy":
        return Weighting(scheme, ("t",), {f: (1,) for f in faces})
    if scheme == "standard_multi":
        cc = classes or conjugacy_classes(system)
        variables = tuple("t_" + c[0] for c in cc.classes)
        mons = {}
        for f in faces:
            e = [0] * len(variables)
            for g in nerve.word(f):
                e[cc.class_of(g)] += 1
            mons[f] = tuple(e)
        return Weighting(scheme, variables, mons)
    if scheme == "per_letter":
        variables = tuple(_face_variable(system, f) for f in faces)
        return Weighting(scheme, variables,
                         {f: tuple(int(k == i) for k in range(len(faces))) for i, f in enumerate(faces)})
    if scheme == "dimension":
        top = max(len(f) for f in faces)
        default = ["x", "y", "z", "u", "v", "w"]
        variables = tuple(names) if names else tuple(default[:top]) if top <= 6 else tuple(
            f"x{d}" for d in range(top))
        if len(variables) < top:
            raise ValueError(f"need {top} variable names for the dimension weighting")
        return Weighting(scheme, variables,
                         {f: tuple(int(k == len(f) - 1) for k in range(len(variables))) for f in faces})
    raise ValueError(f"unknown weighting scheme {scheme!r}")


def weight_monomial(nerve: Nerve, sigma: Iterable[str], scheme: str, **kwargs) -> tuple[int, ...]:
    face = frozenset(sigma)
    if not face or face not in nerve:
        raise ValueError("weights are defined on the proper nerve only")
    return weighting(nerve, scheme, **kwargs)(face)
