"""Linear representations of noncommutative series and their specializations.

A representation ``(A, Q, B)`` encodes ``chi = A (I - Q)^{-1} B`` where each
entry of ``Q`` is a formal sum of letters.  We store ``Q`` as one sparse
rational matrix per letter, ``Q = sum_sigma sigma * Q_sigma``.  The vector
recurrence ``X_{k+1} = Q X_k`` prepends a letter, so the coefficient of the
written word ``sigma_n ... sigma_1`` is ``A Q_{sigma_n} ... Q_{sigma_1} B``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Callable, Hashable, Mapping, Sequence

import sympy

from .automaton import GreedyAutomaton, right_angled_automaton, word_label
from .complexes import anti_incidence, is_eulerian_sphere, nerve_complex, reduced_euler
from .coxeter import Nerve, Weighting
from .ratfunc import RationalFunction, clear_denominators, int_ring, rat_ring, total_degree

Letter = Hashable
Word = tuple
SparseMatrix = dict  # (row, col) -> Fraction
SparseVector = dict  # index -> Fraction


class SeriesError(RuntimeError):
    pass


class ReciprocalUndefined(ValueError):
    """The chosen route cannot produce the reciprocal series."""


def _matvec(M: SparseMatrix, x: SparseVector) -> SparseVector:
    out: SparseVector = {}
    for (i, j), c in M.items():
        v = x.get(j)
        if v:
            out[i] = out.get(i, 0) + c * v
    return {i: v for i, v in out.items() if v}


@dataclass(frozen=True, eq=False)
class LinearRepresentation:
    """``constant + A (I - sum_sigma sigma Q_sigma)^{-1} B`` over a finite alphabet."""

    alphabet: tuple
    A: tuple[Fraction, ...]
    Q: Mapping[Letter, SparseMatrix]
    B: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)
    nerve: Nerve | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.A)

    def entry(self, i: int, j: int) -> dict:
        """Formal sum in position (i, j) as letter -> coefficient."""
        return {a: self.Q[a][(i, j)] for a in self.alphabet if self.Q[a].get((i, j))}

    def dense(self, letter: Letter) -> list[list[Fraction]]:
        M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for (i, j), c in self.Q[letter].items():
            M[i][j] = c
        return M

    def conjugate(self, P: sympy.Matrix) -> LinearRepresentation:
        """Change of basis ``X -> P X``: A P^{-1}, P Q_sigma P^{-1}, P B."""
        Pinv = P.inv()
        A = sympy.Matrix([list(self.A)]) * Pinv
        B = P * sympy.Matrix(list(self.B))
        Q = {a: _sparse(P * sympy.Matrix(self.dense(a)) * Pinv) for a in self.alphabet}
        return replace(self, A=tuple(_frac(x) for x in A), Q=Q, B=tuple(_frac(x) for x in B))

    def permute(self, perm: Sequence[int]) -> LinearRepresentation:
        """Relabel state i as perm[i]."""
        n = self.dim
        P = sympy.zeros(n, n)
        for i, j in enumerate(perm):
            P[j, i] = 1
        return self.conjugate(P)


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _sparse(M: sympy.Matrix) -> SparseMatrix:
    return {(i, j): _frac(M[i, j]) for i in range(M.rows) for j in range(M.cols) if M[i, j] != 0}


def from_automaton(automaton: GreedyAutomaton) -> LinearRepresentation:
    """A = all ones, B = start indicator, Q[target][source] = letter."""
    n = len(automaton)
    Q = {a: {} for a in automaton.alphabet}
    for (src, a), tgt in automaton.transitions.items():
        Q[a][(tgt, src)] = Fraction(1)
    B = tuple(Fraction(int(i == automaton.start)) for i in range(n))
    return LinearRepresentation(automaton.alphabet, (Fraction(1),) * n, Q, B, Fraction(0), automaton.nerve)


# -- noncommutative expansion ------------------------------------------------------------

@dataclass(frozen=True)
class Expansion:
    """Truncated series: written word -> nonzero rational coefficient."""

    order: int
    coefficients: dict

    def __getitem__(self, word) -> Fraction:
        return self.coefficients.get(tuple(word), Fraction(0))

    def by_length(self) -> dict[int, dict]:
        out: dict[int, dict] = {k: {} for k in range(self.order + 1)}
        for w, c in self.coefficients.items():
            out[len(w)][w] = c
        return out

    def scaled(self, c) -> Expansion:
        c = Fraction(c)
        return Expansion(self.order, {w: c * v for w, v in self.coefficients.items() if c * v})

    def first_difference(self, other: Expansion):
        """Shortest word (then first in sort order) where the coefficients disagree."""
        words = set(self.coefficients) | set(other.coefficients)
        bad = [w for w in words if self[w] != other[w]]
        if not bad:
            return None
        return min(bad, key=lambda w: (len(w), repr(w)))

    def __eq__(self, other):
        return isinstance(other, Expansion) and self.order == other.order \
            and self.coefficients == other.coefficients


def expand(rep: LinearRepresentation, L: int) -> Expansion:
    if L < 0:
        raise ValueError("order must be non-negative")
    B = {i: b for i, b in enumerate(rep.B) if b}
    coeffs: dict = {}
    layer = {(): B}
    for k in range(L + 1):
        for word, vec in layer.items():
            c = sum((rep.A[i] * v for i, v in vec.items()), Fraction(0))
            if k == 0:
                c += rep.constant
            if c:
                coeffs[word] = c
        if k == L:
            break
        nxt = {}
        for word, vec in layer.items():
            for a in rep.alphabet:
                y = _matvec(rep.Q[a], vec)
                if y:
                    nxt[(a,) + word] = y
        layer = nxt
    return Expansion(L, coeffs)


def format_expansion(exp: Expansion, namer: Callable[[Word], str]) -> str:
    """Terms grouped by word length, ``+``-joined, ones suppressed."""
    parts = []
    for k, terms in exp.by_length().items():
        for w in sorted(terms, key=namer):
            c = terms[w]
            name = namer(w) if w else ""
            if not name:
                body = str(c)
            elif c == 1:
                body = name
            elif c == -1:
                body = "-" + name
            else:
                body = f"{c}*{name}"
            parts.append(body)
    return " + ".join(parts).replace("+ -", "- ") or "0"


# -- commutative specialization --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CommutativeRepresentation:
    """Representation whose entries are polynomials with rational coefficients."""

    variables: tuple[str, ...]
    A: tuple[Fraction, ...]
    Q: tuple[tuple, ...]
    B: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    @property
    def ring(self):
        return rat_ring(self.variables)

    @property
    def dim(self) -> int:
        return len(self.A)


def specialize(rep: LinearRepresentation, weighting: Weighting | Mapping,
               variables: Sequence[str] | None = None) -> CommutativeRepresentation:
    """Substitute each letter by a monomial; ``weighting`` maps letter -> exponent vector."""
    if isinstance(weighting, Weighting):
        variables = weighting.variables
        mons = {a: weighting(a) for a in rep.alphabet}
    else:
        if variables is None:
            raise ValueError("variables are required with a plain mapping")
        mons = {a: tuple(weighting[a]) for a in rep.alphabet}
    variables = tuple(variables)
    R = rat_ring(variables)
    for a, m in mons.items():
        if len(m) != len(variables) or any(e < 0 for e in m):
            raise ValueError(f"bad exponent vector {m} for letter {a!r}")
        if not any(m):
            raise ValueError(f"weight of letter {a!r} is constant")
    n = rep.dim
    Q = [[R(0)] * n for _ in range(n)]
    for a in rep.alphabet:
        mono = R.from_dict({mons[a]: 1})
        for (i, j), c in rep.Q[a].items():
            Q[i][j] += mono * R.domain.convert(sympy.Rational(c.numerator, c.denominator))
    return CommutativeRepresentation(variables, rep.A, tuple(tuple(r) for r in Q), rep.B, rep.constant)


def _truncate(p, order: int):
    return p.ring.from_dict({m: c for m, c in p.items() if sum(m) <= order}) if p else p


def expand_commutative(crep: CommutativeRepresentation, order: int) -> dict:
    """Taylor coefficients of total degree <= order by iterating X_{k+1} = Q X_k."""
    R = crep.ring
    conv = lambda c: R.domain.convert(sympy.Rational(c.numerator, c.denominator))  # noqa: E731
    X = [R(conv(b)) for b in crep.B]
    total = R(conv(crep.constant))
    for _ in range(order + 1):
        total += sum((X[i] * conv(a) for i, a in enumerate(crep.A) if a), R(0))
        X = [_truncate(sum((crep.Q[i][j] * X[j] for j in range(crep.dim) if crep.Q[i][j] and X[j]), R(0)),
                       order) for i in range(crep.dim)]
        if not any(X):
            break
    total = _truncate(total, order)
    return {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in total.items() if c}


def _bareiss_solve(M: list[list], n: int):
    """Fraction-free elimination on the n x (n+1) system [I - Q | B].

    Pivots are chosen by least total degree, then row index.  Returns
    ``(D, y)`` with ``D`` the last pivot and ``y_i = D x_i`` polynomial.
    """
    prev = None
    for k in range(n):
        cands = [i for i in range(k, n) if M[i][k]]
        if not cands:
            raise SeriesError("I - Q is singular; the representation is not quasi-regular")
        p = min(cands, key=lambda i: (total_degree(M[i][k]), i))
        M[k], M[p] = M[p], M[k]
        pivot = M[k][k]
        for i in range(k + 1, n):
            a_ik = M[i][k]
            for j in range(k + 1, n + 1):
                v = pivot * M[i][j]
                if a_ik and M[k][j]:
                    v -= a_ik * M[k][j]
                M[i][j] = v if prev is None else v.exquo(prev)
            M[i][k] = pivot.ring(0)
        prev = pivot
    D = M[n - 1][n - 1]
    y = [None] * n
    for i in reversed(range(n)):
        s = D * M[i][n]
        for j in range(i + 1, n):
            if M[i][j]:
                s -= M[i][j] * y[j]
        y[i] = s.exquo(M[i][i])
    return D, y


def default_check_order(crep: CommutativeRepresentation) -> int:
    """2n for up to three variables, else min(2n, 6) to bound the monomial count."""
    return 2 * crep.dim if len(crep.variables) <= 3 else min(2 * crep.dim, 6)


def closed_form(crep: CommutativeRepresentation, *, check_order: int | None = None) -> RationalFunction:
    """Solve (I - Q) X = B exactly and return the canonical rational function A X.

    The Taylor expansion of the result is compared against
    :func:`expand_commutative` through ``check_order``; pass 0 to skip.
    """
    n = crep.dim
    Rq = crep.ring
    Rz = int_ring(crep.variables)
    if n == 0:
        return RationalFunction.from_fraction(crep.variables, crep.constant)
    rows = []
    for i in range(n):
        row = [(Rq(1) if i == j else Rq(0)) - crep.Q[i][j] for j in range(n)]
        row.append(Rq(Rq.domain.convert(sympy.Rational(crep.B[i].numerator, crep.B[i].denominator))))
        scale = reduce(lcm, (int(c.denominator) for p in row for c in p.itercoeffs()), 1)
        rows.append([clear_denominators(p * scale, Rz)[0] for p in row])
    D, y = _bareiss_solve(rows, n)
    a_scale = reduce(lcm, (a.denominator for a in crep.A), 1)
    num = Rz(0)
    for a, yi in zip(crep.A, y):
        if a:
            num += yi * int(a * a_scale)
    den = D * a_scale
    c = crep.constant
    if c:
        num = num * c.denominator + den * c.numerator
        den = den * c.denominator
    f = RationalFunction(crep.variables, num, den)
    order = default_check_order(crep) if check_order is None else check_order
    if order > 0:
        got = f.taylor(order)
        want = expand_commutative(crep, order)
        if got != want:
            raise SeriesError("closed form disagrees with the series expansion")
    return f


# -- reciprocals ------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AntiReciprocalData:
    """Ingredients of chi* = -(1/chibar) A (I - D0 J^{-1})^{-1} B.

    ``D`` lists the diagonal as (sign, letter) with letter None for the empty
    face; ``D0`` is the same with its first entry zeroed.
    """

    faces: tuple
    J: tuple[tuple[int, ...], ...]
    J_inverse: tuple[tuple[Fraction, ...], ...]
    D: tuple
    D0: tuple
    reduced_euler: int
    eulerian: bool
    sphere_dim: int
    engine: LinearRepresentation


def _inverse(J) -> sympy.Matrix:
    M = sympy.Matrix(J)
    if M.det() == 0:
        raise ReciprocalUndefined("anti-incidence matrix J is singular")
    return M.inv()


def build_anti_reciprocal(nerve: Nerve, rep: LinearRepresentation | None = None) -> AntiReciprocalData:
    """J-route reciprocal for a right-angled system.

    ``rep`` defaults to the right-angled automaton representation; when given
    it must have states indexed by nerve faces and satisfy Q = D0 J.
    """
    if not nerve.system.is_right_angled:
        raise ValueError("the J-route needs a right-angled system")
    rep = rep or from_automaton(right_angled_automaton(nerve))
    K = nerve_complex(nerve)
    faces = nerve.faces
    J = anti_incidence(K)
    n = len(faces)
    Jinv = _inverse(J.tolist())
    signs = [1] + [(-1) ** (len(f) - 1) for f in faces[1:]]
    D = tuple((signs[i], faces[i] or None) for i in range(n))
    D0 = ((0, None),) + D[1:]
    for a in nerve.proper_faces:
        i = nerve.position[a]
        expected = {(i, j): Fraction(signs[i] * int(J[i, j])) for j in range(n) if J[i, j]}
        if rep.Q[a] != expected:
            raise SeriesError("representation does not factor as Q = D0 J")
    chi = reduced_euler(K)
    eul, k = is_eulerian_sphere(K)
    if eul and Jinv != sympy.Matrix(J.tolist()):
        raise SeriesError("J is not an involution on an Eulerian nerve")
    Q = {}
    for a in nerve.proper_faces:
        i = nerve.position[a]
        Q[a] = {(i, j): signs[i] * _frac(Jinv[i, j]) for j in range(n) if Jinv[i, j] != 0}
    A = tuple(-a / chi for a in rep.A)
    engine = LinearRepresentation(rep.alphabet, A, Q, rep.B, Fraction(0), nerve)
    return AntiReciprocalData(
        faces, tuple(tuple(int(x) for x in r) for r in J.tolist()),
        tuple(tuple(_frac(Jinv[i, j]) for j in range(n)) for i in range(n)),
        D, D0, chi, eul, k, engine,
    )


def reciprocal_representation(rep: LinearRepresentation) -> LinearRepresentation:
    """Reciprocal chi* for any representation via a low-rank splitting of Q.

    Factor Q_sigma = U_sigma V_sigma at full rank, stack into Q = U diag(letters) V
    and put M = V U.  Inverting every letter and applying the Woodbury identity
    gives chi* = AB - A U (I - M^{-1} diag(letters))^{-1} M^{-1} V B, which is a
    power series whenever M is invertible.
    """
    n = rep.dim
    U_cols, V_rows, owner = [], [], []
    for a in rep.alphabet:
        Qa = sympy.Matrix(rep.dense(a))
        if Qa.is_zero_matrix:
            continue
        R, pivots = Qa.rref()
        for r, p in enumerate(pivots):
            U_cols.append(Qa[:, p])
            V_rows.append(R[r, :])
            owner.append(a)
    r = len(owner)
    if r == 0:
        raise ReciprocalUndefined("Q is zero; the series is a constant")
    U = sympy.Matrix.hstack(*U_cols)
    V = sympy.Matrix.vstack(*V_rows)
    M = V * U
    if M.det() == 0:
        raise ReciprocalUndefined("V U is singular for this representation")
    Minv = M.inv()
    A = sympy.Matrix([list(rep.A)])
    B = sympy.Matrix(list(rep.B))
    A2 = -(A * U)
    B2 = Minv * (V * B)
    Q2 = {a: {} for a in rep.alphabet}
    for i in range(r):
        for j in range(r):
            if Minv[i, j] != 0:
                Q2[owner[j]][(i, j)] = _frac(Minv[i, j])
    const = rep.constant + _frac((A * B)[0, 0])
    return LinearRepresentation(rep.alphabet, tuple(_frac(x) for x in A2), Q2,
                                tuple(_frac(x) for x in B2), const, rep.nerve)


@dataclass(frozen=True)
class ReciprocityReport:
    right_angled: bool
    eulerian: bool
    sphere_dim: int
    reduced_euler: int
    j_invertible: bool
    expected_sign: int | None
    passed: bool | None
    first_divergence: tuple | None
    chi: Expansion | None
    chi_star: Expansion | None
    message: str


def check_reciprocity(nerve: Nerve, rep: LinearRepresentation | None, L: int) -> ReciprocityReport:
    """Compare chi* with (-1)^(k+1) chi through word length L."""
    K = nerve_complex(nerve)
    chi_bar = reduced_euler(K)
    eul, k = is_eulerian_sphere(K)
    if not nerve.system.is_right_angled:
        return ReciprocityReport(False, eul, k, chi_bar, False, None, None, None, None, None,
                                 "non-right-angled: theorem inapplicable")
    rep = rep or from_automaton(right_angled_automaton(nerve))
    try:
        data = build_anti_reciprocal(nerve, rep)
    except ReciprocalUndefined as exc:
        return ReciprocityReport(True, eul, k, chi_bar, False, None, None, None, None, None,
                                 f"reciprocal undefined by the J-route: {exc}")
    chi = expand(rep, L)
    star = expand(data.engine, L)
    if not eul:
        return ReciprocityReport(True, False, k, chi_bar, True, None, None, None, chi, star,
                                 "inapplicable: nerve not Eulerian")
    sign = (-1) ** (k + 1)
    target = chi.scaled(sign)
    diff = star.first_difference(target)
    mark = "+" if sign > 0 else "-"
    msg = (f"Eulerian k={k}; chi* = {mark}chi verified to order {L}" if diff is None
           else f"Eulerian k={k}; chi* differs from {mark}chi at {word_label(nerve, diff)}")
    return ReciprocityReport(True, True, k, chi_bar, True, sign, diff is None, diff, chi, star, msg)


# -- complete growth series -----------------------------------------------------------

@dataclass(frozen=True)
class CompleteExpansion:
    """Coefficient of t^n as a formal sum of group elements named by greedy words."""

    order: int
    coefficients: dict  # n -> {name: Fraction}

    def counts(self) -> list[int]:
        return [int(sum(self.coefficients.get(n, {}).values())) for n in range(self.order + 1)]


def expand_complete(rep: LinearRepresentation, L: int,
                    element_namer: Callable[[Word], str] | None = None) -> CompleteExpansion:
    if rep.nerve is None:
        raise ValueError("representation carries no nerve; letter lengths are unknown")
    nerve = rep.nerve
    namer = element_namer or (lambda w: word_label(nerve, w))
    exp = expand(rep, L)
    out: dict = {n: {} for n in range(L + 1)}
    for w, c in exp.coefficients.items():
        n = sum(nerve.length(a) for a in w)
        if n <= L:
            name = namer(w)
            out[n][name] = out[n].get(name, Fraction(0)) + c
    return CompleteExpansion(L, out)
