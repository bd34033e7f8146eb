"""Elementary roots, Tits-cone regions and the greedy normal-form automaton.

Words over the proper nerve are tuples written left to right in the
order of the group product: ``(sigma_n, ..., sigma_1)`` stands for
``w_{sigma_n} ... w_{sigma_1}``.  The automaton reads letters in
application order, i.e. ``sigma_1`` first, so a word is consumed from
its right end.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Sequence

import numpy as np

from .coxeter import CoxeterSystem, Face, Nerve, compute_nerve

DEFAULT_MAX_STATES = 10**6


class AutomatonError(RuntimeError):
    """Internal inconsistency or exceeded resource cap."""


@dataclass(frozen=True, eq=False)
class Element:
    """Group element as a word in S plus its inverse matrix on root coordinates.

    Descent and separation tests only need ``w^{-1} beta``, so the inverse
    is the matrix kept up to date; the forward matrix is built on demand.
    """

    system: CoxeterSystem
    word: tuple[str, ...]
    inverse_matrix: np.ndarray

    @cached_property
    def matrix(self) -> np.ndarray:
        return self.system.word_matrix(self.word)

    @property
    def length_bound(self) -> int:
        return len(self.word)

    def left_multiply(self, word: Sequence[str]) -> Element:
        """Element ``u * self`` for u spelled by ``word``; inverse gains u^{-1} on the right."""
        inv = self.inverse_matrix
        for g in reversed(tuple(word)):
            inv = _right_reflect(self.system, inv, self.system.index[g])
        return Element(self.system, tuple(word) + self.word, inv)

    def __mul__(self, other: Element) -> Element:
        return other.left_multiply(self.word)

    @property
    def key(self) -> tuple:
        return tuple(x.key for x in self.inverse_matrix.flat)

    def __eq__(self, other):
        return isinstance(other, Element) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def _right_reflect(system: CoxeterSystem, M: np.ndarray, s: int) -> np.ndarray:
    """M * s: column j gains 2cos(pi/m_sj) times column s, column s flips sign."""
    scal = system.reflection_scalars[s]
    out = M.copy()
    col = M[:, s]
    for j in range(system.rank):
        if j == s:
            out[:, s] = -col
        elif scal[j] != 0:
            out[:, j] = M[:, j] + col * scal[j]
    return out


def identity(system: CoxeterSystem) -> Element:
    return Element(system, (), system.identity_matrix())


def simple_reflection(system: CoxeterSystem, s: str) -> Element:
    return identity(system).left_multiply((s,))


def element_from_word(system: CoxeterSystem, word) -> Element:
    return identity(system).left_multiply(tuple(word))


def _is_negative(vec) -> bool:
    for x in vec:
        s = x.sign()
        if s:
            return s < 0
    raise AutomatonError("zero vector where a root was expected")


def bilinear(system: CoxeterSystem, beta, s: int):
    """B(beta, alpha_s) for beta in simple-root coordinates."""
    g = system.gram
    acc = system.field(0)
    for j, b in enumerate(beta):
        if not b.is_zero():
            acc = acc + b * g[j, s]
    return acc


# -- elementary roots ------------------------------------------------------------

class RootAction(Enum):
    NON_MINIMAL = "non-minimal"
    NEGATIVE_OF_SIMPLE = "negative-of-simple"


@dataclass(frozen=True, eq=False)
class ElementaryRoots:
    """Positive roots whose hyperplanes are minimal, with the S-action on them.

    ``action[(s, i)]`` is either the index of ``s . roots[i]`` when that root
    is again elementary, or a :class:`RootAction` marker.
    """

    system: CoxeterSystem
    roots: tuple[tuple, ...]
    action: dict

    def __len__(self) -> int:
        return len(self.roots)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Roots as columns."""
        return np.array(self.roots, dtype=object).T


def enumerate_elementary_roots(system: CoxeterSystem) -> ElementaryRoots:
    n = system.rank
    one, zero = system.field(1), system.field(0)
    roots = [tuple(one if i == j else zero for i in range(n)) for j in range(n)]
    where = {tuple(x.key for x in r): k for k, r in enumerate(roots)}
    action: dict = {}
    queue = deque(range(n))
    while queue:
        i = queue.popleft()
        beta = roots[i]
        for s in range(n):
            if i == s:
                action[(s, i)] = RootAction.NEGATIVE_OF_SIMPLE
                continue
            c = bilinear(system, beta, s)
            if (c - 1).sign() >= 0:
                raise AutomatonError(f"B(beta, alpha_{system.generators[s]}) >= 1 for an elementary root")
            if (c + 1).sign() <= 0:
                action[(s, i)] = RootAction.NON_MINIMAL
                continue
            image = list(beta)
            image[s] = image[s] - 2 * c
            image = tuple(image)
            key = tuple(x.key for x in image)
            if key not in where:
                where[key] = len(roots)
                roots.append(image)
                queue.append(where[key])
            action[(s, i)] = where[key]
    return ElementaryRoots(system, tuple(roots), action)


# -- descent sets and regions ------------------------------------------------------

def descent_set(system: CoxeterSystem, w: Element) -> Face:
    """Left descent set: s with w^{-1} alpha_s negative."""
    inv = w.inverse_matrix
    return frozenset(g for j, g in enumerate(system.generators) if _is_negative(inv[:, j]))


@dataclass(frozen=True)
class RegionSignature:
    """Bitset of elementary-root indices whose hyperplanes separate a region from C."""

    bits: int

    @property
    def indices(self) -> list[int]:
        return [i for i in range(self.bits.bit_length()) if self.bits >> i & 1]

    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.indices) + "}"

    def __len__(self) -> int:
        return bin(self.bits).count("1")


def region_signature(system: CoxeterSystem, roots: ElementaryRoots, w: Element) -> RegionSignature:
    n = system.rank
    images = w.inverse_matrix @ roots.matrix[:, n:] if len(roots) > n else None
    bits = 0
    for i in range(len(roots)):
        # the first n roots are the simple ones, whose images are columns of w^{-1}
        col = w.inverse_matrix[:, i] if i < n else images[:, i - n]
        if _is_negative(col):
            bits |= 1 << i
    return RegionSignature(bits)


# -- the automaton ------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class State:
    signature: RegionSignature
    witness: Element
    descent: Face


@dataclass(frozen=True, eq=False)
class GreedyAutomaton:
    """Deterministic automaton for the greedy normal form; every state accepts.

    ``transitions[(state, letter)]`` is the target state; a missing key is
    the implicit fail state.
    """

    nerve: Nerve
    states: tuple[State, ...]
    transitions: dict
    start: int = 0
    roots: ElementaryRoots | None = field(default=None, repr=False)

    @property
    def system(self) -> CoxeterSystem:
        return self.nerve.system

    @property
    def alphabet(self) -> tuple[Face, ...]:
        return self.nerve.proper_faces

    def __len__(self) -> int:
        return len(self.states)

    def step(self, state: int, letter: Face) -> int | None:
        return self.transitions.get((state, letter))

    def run(self, word) -> int | None:
        """State reached after reading ``word`` (written order), or None."""
        state = self.start
        for letter in reversed(tuple(word)):
            state = self.step(state, frozenset(letter))
            if state is None:
                return None
        return state

    def accepts(self, word) -> bool:
        return self.run(word) is not None

    @cached_property
    def edges(self) -> list[tuple[int, Face, int]]:
        order = self.nerve.position
        return sorted(((s, a, t) for (s, a), t in self.transitions.items()),
                      key=lambda e: (e[0], order[e[1]], e[2]))


def build_greedy_automaton(system: CoxeterSystem, *, max_states: int = DEFAULT_MAX_STATES,
                           check: bool = True, nerve: Nerve | None = None) -> GreedyAutomaton:
    """Breadth-first construction over regions cut out by minimal hyperplanes.

    With ``check`` set, every arrival at a known region through a different
    witness recomputes the outgoing transitions from that witness and
    insists they agree with the stored ones.
    """
    nerve = nerve or compute_nerve(system)
    roots = enumerate_elementary_roots(system)
    letters = nerve.proper_faces
    def successors(w: Element) -> dict:
        out = {}
        for f in letters:
            u = w.left_multiply(nerve.word(f))
            if descent_set(system, u) == f:
                out[f] = (region_signature(system, roots, u), u)
        return out

    e = identity(system)
    start_sig = region_signature(system, roots, e)
    states = [State(start_sig, e, frozenset())]
    by_sig = {start_sig: 0}
    succ_sigs: dict[int, dict] = {}
    transitions: dict = {}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        succ = successors(states[k].witness)
        succ_sigs[k] = {f: sig for f, (sig, _) in succ.items()}
        for f, (sig, u) in succ.items():
            target = by_sig.get(sig)
            if target is None:
                if len(states) >= max_states:
                    raise AutomatonError(f"state count exceeded cap {max_states}")
                target = len(states)
                by_sig[sig] = target
                states.append(State(sig, u, descent_set(system, u)))
                queue.append(target)
            elif check and states[target].witness != u:
                alt = {g: s for g, (s, _) in successors(u).items()}
                ref = succ_sigs.get(target)
                if ref is None:
                    ref = {g: s for g, (s, _) in successors(states[target].witness).items()}
                if alt != ref:
                    raise AutomatonError("transitions depend on the choice of region witness")
            transitions[(k, f)] = target
    if check:
        for (k, f), t in transitions.items():
            if states[t].descent != f:
                raise AutomatonError("state entered by a letter other than its descent class")
    return GreedyAutomaton(nerve, tuple(states), transitions, 0, roots)


def _in_star(nerve: Nerve, sigma: Face, v: str) -> bool:
    """v is a vertex of St(sigma): it lies in sigma or spans a face with it."""
    return v in sigma or (sigma | {v}) in nerve


def right_angled_automaton(nerve: Nerve) -> GreedyAutomaton:
    """States are nerve faces; tau -sigma-> sigma iff St(sigma) misses tau."""
    system = nerve.system
    if not system.is_right_angled:
        raise ValueError("right_angled_automaton needs all labels in {2, inf}")
    faces = nerve.faces
    index = {f: i for i, f in enumerate(faces)}
    transitions = {}
    for tau in faces:
        for sigma in nerve.proper_faces:
            if not any(_in_star(nerve, sigma, v) for v in tau):
                transitions[(index[tau], sigma)] = index[sigma]
    states = tuple(
        State(RegionSignature(sum(1 << system.index[s] for s in f)),
              element_from_word(system, nerve.word(f)), f)
        for f in faces
    )
    return GreedyAutomaton(nerve, states, transitions, index[frozenset()], None)


def language_words(automaton: GreedyAutomaton, max_length: int) -> list[tuple[Face, ...]]:
    """Accepted words of length <= max_length in written order.

    Sorted by length, then lexicographically in written order with letters
    compared by nerve position.
    """
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    out: list[tuple[Face, ...]] = [()]
    layer = [((), automaton.start)]
    pos = automaton.nerve.position
    for _ in range(max_length):
        nxt = []
        for word, state in layer:
            for letter in automaton.alphabet:
                t = automaton.step(state, letter)
                if t is not None:
                    nxt.append(((letter,) + word, t))
        nxt.sort(key=lambda p: [pos[a] for a in p[0]])
        out.extend(w for w, _ in nxt)
        layer = nxt
    return out


def word_label(nerve: Nerve, word) -> str:
    return " ".join(nerve.label(f) for f in word) if word else "e"


def state_label(automaton: GreedyAutomaton, k: int) -> str:
    if k == automaton.start:
        return "C"
    if automaton.roots is None:
        return "R" + automaton.nerve.label(automaton.states[k].descent)
    return "R" + "".join(str(i + 1) for i in automaton.states[k].signature.indices) \
        if len(automaton.roots) < 10 else "R" + automaton.states[k].signature.label()


def export_dot(automaton: GreedyAutomaton) -> str:
    """Graphviz text; letters are read in application order (rightmost letter first)."""
    lines = ["digraph greedy {", "  rankdir=LR;",
             '  // words sigma_n ... sigma_1 are read sigma_1 first']
    for k in range(len(automaton)):
        shape = "doublecircle" if k == automaton.start else "circle"
        lines.append(f'  q{k} [label="{state_label(automaton, k)}", shape={shape}];')
    for s, a, t in automaton.edges:
        lines.append(f'  q{s} -> q{t} [label="{automaton.nerve.label(a)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(automaton: GreedyAutomaton) -> dict:
    nerve = automaton.nerve
    return {
        "reading_order": "application order: sigma_1 of sigma_n...sigma_1 is read first",
        "alphabet": [nerve.label(f) for f in automaton.alphabet],
        "start": automaton.start,
        "elementary_roots": None if automaton.roots is None else len(automaton.roots),
        "states": [
            {"index": k, "signature": st.signature.indices,
             "descent": nerve.label(st.descent), "label": state_label(automaton, k)}
            for k, st in enumerate(automaton.states)
        ],
        "transitions": [[s, nerve.label(a), t] for s, a, t in automaton.edges],
    }


def dump_json(automaton: GreedyAutomaton) -> str:
    return json.dumps(to_json(automaton), indent=2)
