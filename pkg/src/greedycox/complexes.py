"""Finite simplicial complexes that carry the empty simplex.

Faces are frozensets of vertex names.  Every complex, including every
subcomplex produced here, contains the empty face, so the "empty complex"
is ``{∅}`` with reduced Euler characteristic -1.  Subcomplexes keep the
vertex order of their parent, which makes equality a plain set test.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

Face = frozenset
EMPTY: Face = frozenset()


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    order: tuple[str, ...]
    faces: frozenset

    def __post_init__(self):
        if EMPTY not in self.faces:
            raise ComplexError("a complex must contain the empty face")
        for f in self.faces:
            for v in f:
                if f - {v} not in self.faces:
                    raise ComplexError(f"not downward closed at {sorted(f)}")

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        present = {v for f in self.faces for v in f}
        return tuple(v for v in self.order if v in present)

    @cached_property
    def _rank(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.order)}

    def face_key(self, f: Face) -> tuple:
        return (len(f), sorted(self._rank[v] for v in f))

    @cached_property
    def sorted_faces(self) -> tuple[Face, ...]:
        """Graded-lex by vertex order with the empty face first."""
        return tuple(sorted(self.faces, key=self.face_key))

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def __contains__(self, f) -> bool:
        return frozenset(f) in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def restrict(self, faces: Iterable[Face]) -> SimplicialComplex:
        return SimplicialComplex(self.order, frozenset(faces) | {EMPTY})

    def label(self, f: Face) -> str:
        return "{" + ",".join(sorted(f, key=self._rank.__getitem__)) + "}"

    def count_by_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            out[len(f) - 1] = out.get(len(f) - 1, 0) + 1
        return dict(sorted(out.items()))

    def __and__(self, other: SimplicialComplex) -> SimplicialComplex:
        return SimplicialComplex(self.order, self.faces & other.faces)

    def __or__(self, other: SimplicialComplex) -> SimplicialComplex:
        return SimplicialComplex(self.order, self.faces | other.faces)


def from_facets(vertices: Sequence[str], facets: Iterable[Iterable[str]]) -> SimplicialComplex:
    known = set(vertices)
    faces = {EMPTY} | {frozenset([v]) for v in vertices}
    for facet in facets:
        facet = frozenset(facet)
        if not facet <= known:
            raise ComplexError(f"facet uses unknown vertices {sorted(facet - known)}")
        for k in range(len(facet) + 1):
            faces.update(frozenset(c) for c in combinations(sorted(facet), k))
    return SimplicialComplex(tuple(vertices), frozenset(faces))


def flag_completion(vertices: Sequence[str], edges: Iterable[tuple[str, str]]) -> SimplicialComplex:
    """Clique complex of a graph."""
    adj = {v: set() for v in vertices}
    for a, b in edges:
        if a not in adj or b not in adj:
            raise ComplexError(f"edge {a}-{b} uses an unknown vertex")
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    rank = {v: i for i, v in enumerate(vertices)}
    faces = {EMPTY}
    layer = [EMPTY]
    while layer:
        nxt = []
        for f in layer:
            top = max((rank[v] for v in f), default=-1)
            for v in vertices:
                if rank[v] > top and all(v in adj[u] for u in f):
                    nxt.append(f | {v})
        faces.update(nxt)
        layer = nxt
    return SimplicialComplex(tuple(vertices), frozenset(faces))


def parse_complex(text: str) -> SimplicialComplex:
    """One facet per line, vertices separated by whitespace; '#' starts a comment."""
    order: list[str] = []
    facets = []
    for line in text.splitlines():
        names = line.split("#", 1)[0].split()
        if not names:
            continue
        for v in names:
            if v not in order:
                order.append(v)
        facets.append(names)
    if not order:
        raise ComplexError("complex file lists no vertices")
    return from_facets(order, facets)


def write_complex(K: SimplicialComplex) -> str:
    maximal = [f for f in K.sorted_faces if f and not any(f < g for g in K.faces)]
    lines = [" ".join(sorted(f, key=K._rank.__getitem__)) for f in maximal]
    seen = list(dict.fromkeys(v for line in lines for v in line.split()))
    if tuple(seen) != K.vertices:
        # singleton lines pin the vertex order, which fixes the face order of J
        lines = list(K.vertices) + lines
    return "".join(line + "\n" for line in lines)


def nerve_complex(nerve) -> SimplicialComplex:
    """View a Coxeter nerve as a simplicial complex on the generators."""
    return SimplicialComplex(tuple(nerve.system.generators), frozenset(nerve.faces))


def _require_face(K: SimplicialComplex, sigma) -> Face:
    sigma = frozenset(sigma)
    if sigma not in K.faces:
        raise ComplexError(f"{sorted(sigma)} is not a face")
    return sigma


def edges(K: SimplicialComplex) -> list[Face]:
    return [f for f in K.sorted_faces if len(f) == 2]


def is_flag(K: SimplicialComplex) -> bool:
    """Every clique of the 1-skeleton spans a face."""
    adj = {v: set() for v in K.vertices}
    for e in edges(K):
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    for f in K.faces:
        for v in K.vertices:
            if v not in f and all(v in adj[u] for u in f) and (f | {v}) not in K.faces:
                return False
    return True


def star(K: SimplicialComplex, sigma) -> SimplicialComplex:
    sigma = _require_face(K, sigma)
    return K.restrict(t for t in K.faces if (t | sigma) in K.faces)


def link(K: SimplicialComplex, sigma) -> SimplicialComplex:
    sigma = _require_face(K, sigma)
    return K.restrict(t for t in K.faces if not t & sigma and (t | sigma) in K.faces)


def star_vertices(K: SimplicialComplex, sigma) -> frozenset:
    return frozenset(v for f in star(K, sigma).faces for v in f)


def E_complement(K: SimplicialComplex, sigma) -> SimplicialComplex:
    """Full subcomplex on the vertices outside St(sigma)."""
    away = star_vertices(K, sigma)
    return K.restrict(t for t in K.faces if not t & away)


def B_neighborhood(K: SimplicialComplex, sigma) -> SimplicialComplex:
    """Union of the closed stars of the vertices of sigma."""
    sigma = _require_face(K, sigma)
    faces = {EMPTY}
    for v in sigma:
        faces |= star(K, {v}).faces
    return K.restrict(faces)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join of complexes on disjoint vertex sets, in K's vertex order."""
    return SimplicialComplex(K.order, frozenset(a | b for a in K.faces for b in L.faces))


def simplex(K: SimplicialComplex, sigma) -> SimplicialComplex:
    sigma = frozenset(sigma)
    return K.restrict(frozenset(c) for k in range(len(sigma) + 1) for c in combinations(sigma, k))


def reduced_euler(K: SimplicialComplex) -> int:
    return sum(-1 if len(f) % 2 == 0 else 1 for f in K.faces)


def is_eulerian_sphere(K: SimplicialComplex) -> tuple[bool, int]:
    k = K.dim
    if reduced_euler(K) != (-1) ** k:
        return False, k
    for f in K.faces:
        if f and reduced_euler(link(K, f)) != (-1) ** (k - len(f)):
            return False, k
    return True, k


def anti_incidence(K: SimplicialComplex) -> np.ndarray:
    """J[sigma, tau] = (-1)^dim sigma when tau misses St(sigma), else 0."""
    faces = K.sorted_faces
    n = len(faces)
    J = np.zeros((n, n), dtype=np.int64)
    for i, s in enumerate(faces):
        away = star_vertices(K, s)
        sign = -1 if len(s) % 2 == 0 else 1
        for j, t in enumerate(faces):
            if not t & away:
                J[i, j] = sign
    return J


@dataclass(frozen=True)
class JReport:
    flag: bool
    eulerian: bool
    sphere_dim: int
    reduced_euler: int
    column_sums: tuple[int, ...]
    columns_ok: bool | None
    involution: bool | None

    @property
    def ok(self) -> bool:
        return self.columns_ok is not False and self.involution is not False


def verify_j_properties(K: SimplicialComplex) -> JReport:
    """Column sums equal the reduced Euler characteristic (flag case); J^2 = I if also Eulerian."""
    J = anti_incidence(K)
    chi = reduced_euler(K)
    flag = is_flag(K)
    eul, k = is_eulerian_sphere(K)
    sums = tuple(int(x) for x in J.sum(axis=0))
    columns_ok = all(s == chi for s in sums) if flag else None
    involution = bool((J @ J == np.eye(len(J), dtype=np.int64)).all()) if flag and eul else None
    return JReport(flag, eul, k, chi, sums, columns_ok, involution)


@dataclass(frozen=True)
class LemmaValues:
    chi_B_sigma: int
    chi_E_sigma: int
    chi_E_cap_St_tau: int
    chi_E_cap_B_tau: int


def lemma_oracles(K: SimplicialComplex, sigma, tau) -> LemmaValues:
    sigma = _require_face(K, sigma)
    tau = _require_face(K, tau)
    if not sigma or not tau:
        raise ComplexError("sigma and tau must be nonempty")
    E = E_complement(K, sigma)
    return LemmaValues(
        reduced_euler(B_neighborhood(K, sigma)),
        reduced_euler(E),
        reduced_euler(E & star(K, tau)),
        reduced_euler(E & B_neighborhood(K, tau)),
    )


def j_to_json(K: SimplicialComplex) -> dict:
    return {"faces": [K.label(f) for f in K.sorted_faces],
            "J": anti_incidence(K).tolist()}
