from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greedycox.corpus import GROUPS, load_group
from greedycox.coxeter import (
    INF,
    CoxeterSystem,
    DefinitionError,
    compute_nerve,
    conjugacy_classes,
    is_spherical,
    longest_element,
    parse_definition,
    weight_monomial,
    weighting,
    write_definition,
)
from greedycox.oracle import OracleError, enumerate_ball


def _fs(*names):
    return frozenset(names)


def _subsystem(system: CoxeterSystem, sigma) -> CoxeterSystem:
    gens = sorted(sigma, key=system.index.__getitem__)
    pairs = {(a, b): system.m(a, b) for a, b in combinations(gens, 2)}
    return CoxeterSystem.from_labels(gens, pairs)


def _brute_force_order(system: CoxeterSystem, radius: int = 40, cap: int = 5000):
    """Size of W by Cayley BFS, or None when the ball keeps growing."""
    try:
        ball = enumerate_ball(system, "standard", radius, max_elements=cap)
    except OracleError:
        return None
    return len(ball) if ball.counts()[-1] == 0 else None


# -- parsing ---------------------------------------------------------------------------

def test_parse_b2tilde():
    system = load_group("b2tilde")
    assert system.generators == ("s1", "s2", "s3")
    assert system.m("s1", "s2") == 4 and system.m("s2", "s3") == 4 and system.m("s1", "s3") == 2
    assert not system.is_right_angled


def test_parse_pentagon_is_right_angled():
    system = load_group("pentagon")
    assert system.rank == 5
    assert system.is_right_angled
    assert system.m("s1", "s3") == INF


def test_parse_single_generator():
    system = parse_definition("generators: s\n")
    assert system.rank == 1
    assert [f for f in compute_nerve(system).faces] == [frozenset(), _fs("s")]


def test_parse_accepts_zero_and_inf_spellings():
    a = parse_definition("generators: x y z\nm: x y 0\nm: y z inf\n")
    assert a.m("x", "y") == INF and a.m("y", "z") == INF and a.m("x", "z") == INF


@pytest.mark.parametrize("text,line", [
    ("generators: a b\nm: a c 3\n", 2),
    ("generators: a b\nm: a b 1\n", 2),
    ("generators: a b\nm: a b 3\nm: b a 4\n", 3),
    ("generators: a b\n\n# comment\nm: a b x\n", 4),
    ("generators: a b\nm: a b\n", 2),
    ("m: a b 3\ngenerators: a b\n", 1),
    ("generators: a a\n", 1),
    ("generators: a b\nlabel a b 3\n", 2),
    ("generators: a b\nm: a a 2\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(DefinitionError) as info:
        parse_definition(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_missing_generators_line():
    with pytest.raises(DefinitionError):
        parse_definition("# nothing here\n")


@pytest.mark.parametrize("name", GROUPS)
def test_definition_round_trip(name):
    system = load_group(name)
    again = parse_definition(write_definition(system))
    assert again.generators == system.generators
    assert again.labels == system.labels


def test_gram_is_symmetric_with_unit_diagonal():
    system = load_group("b2tilde")
    G = system.gram
    for i in range(3):
        assert G[i, i] == 1
        for j in range(3):
            assert G[i, j] == G[j, i]
    assert G[0, 2] == 0
    assert G[0, 1] * G[0, 1] == Fraction(1, 2) and G[0, 1].sign() == -1
    assert load_group("dinf").gram[0, 1] == -1


# -- spherical subsets and the nerve ------------------------------------------------------

def test_spherical_examples_b2tilde():
    system = load_group("b2tilde")
    assert is_spherical(system, {"s1", "s2"})
    assert not is_spherical(system, {"s1", "s2", "s3"})
    assert is_spherical(system, set())


def test_nerve_b2tilde():
    nerve = compute_nerve(load_group("b2tilde"))
    assert list(nerve.faces) == [frozenset(), _fs("s1"), _fs("s2"), _fs("s3"),
                                 _fs("s1", "s2"), _fs("s1", "s3"), _fs("s2", "s3")]


def test_nerve_pentagon():
    nerve = compute_nerve(load_group("pentagon"))
    assert len(nerve) == 11
    assert nerve.count_by_size() == {0: 1, 1: 5, 2: 5}
    assert nerve.dimension == 1


def test_nerve_dinf():
    nerve = compute_nerve(load_group("dinf"))
    assert list(nerve.faces) == [frozenset(), _fs("x"), _fs("y")]


@pytest.mark.parametrize("name", GROUPS)
def test_nerve_is_downward_closed_and_contains_vertices(name):
    system = load_group(name)
    nerve = compute_nerve(system)
    faces = set(nerve.faces)
    for f in faces:
        for g in f:
            assert f - {g} in faces
    for g in system.generators:
        assert _fs(g) in faces


@pytest.mark.parametrize("name", [g for g in GROUPS if load_group(g).rank <= 5])
def test_spherical_agrees_with_brute_force_finiteness(name):
    system = load_group(name)
    for r in range(1, system.rank + 1):
        for sigma in combinations(system.generators, r):
            finite = _brute_force_order(_subsystem(system, sigma)) is not None
            assert is_spherical(system, sigma) == finite, sigma


labels = st.sampled_from([2, 3, 4, 5, 6, INF])


@settings(max_examples=60, deadline=None)
@given(labels, labels, labels)
def test_rank_three_sphericity_matches_triangle_criterion(p, q, r):
    system = CoxeterSystem.from_labels(["a", "b", "c"], {("a", "b"): p, ("b", "c"): q, ("a", "c"): r})
    inv = sum(0 if m == INF else Fraction(1, m) for m in (p, q, r))
    assert is_spherical(system, "abc") == (INF not in (p, q, r) and inv > 1)


# -- longest elements --------------------------------------------------------------------

def test_longest_element_examples():
    system = load_group("b2tilde")
    assert longest_element(system, {"s1"}) == (("s1",), 1)
    word, length = longest_element(system, {"s2", "s3"})
    assert length == 4 and len(word) == 4
    assert system.word_matrix(word).tolist() == system.word_matrix(["s2", "s3", "s2", "s3"]).tolist()
    assert longest_element(system, {"s1", "s3"})[1] == 2
    with pytest.raises(ValueError):
        longest_element(system, {"s1", "s2", "s3"})


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_dihedral_longest_length_is_label(m):
    system = CoxeterSystem.from_labels(["s", "t"], {("s", "t"): m})
    word, length = longest_element(system, {"s", "t"})
    assert length == m
    M = system.word_matrix(word)
    assert (M @ M).tolist() == system.identity_matrix().tolist()


FINITE_SAMPLES = {
    "A3": (["a", "b", "c"], {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 2}),
    "B3": (["a", "b", "c"], {("a", "b"): 3, ("b", "c"): 4, ("a", "c"): 2}),
    "H3": (["a", "b", "c"], {("a", "b"): 5, ("b", "c"): 3, ("a", "c"): 2}),
    "A1xA1xA1": (["a", "b", "c"], {("a", "b"): 2, ("b", "c"): 2, ("a", "c"): 2}),
    "G2": (["a", "b"], {("a", "b"): 6}),
}


@pytest.mark.parametrize("key", sorted(FINITE_SAMPLES))
def test_longest_length_equals_brute_force_maximum(key):
    system = CoxeterSystem.from_labels(*FINITE_SAMPLES[key])
    ball = enumerate_ball(system, "standard", 40, max_elements=5000)
    counts = ball.counts()
    top = max(k for k, c in enumerate(counts) if c)
    assert counts[top] == 1
    assert longest_element(system, system.generators)[1] == top


def _reduced_words(system: CoxeterSystem, target_len: int):
    """All reduced words of length target_len, by depth-first ascent."""
    out = []

    def walk(word, M):
        if len(word) == target_len:
            out.append((tuple(word), M))
            return
        for g in system.generators:
            j = system.index[g]
            col = M[:, j]
            first = next(x.sign() for x in col if x.sign())
            if first > 0:
                walk(word + [g], M @ system.reflections[j])

    walk([], system.identity_matrix())
    return out


@pytest.mark.parametrize("key", ["A3", "B3", "G2", "A1xA1xA1"])
def test_class_multiset_independent_of_reduced_word(key):
    system = CoxeterSystem.from_labels(*FINITE_SAMPLES[key])
    nerve = compute_nerve(system)
    cc = conjugacy_classes(system)
    for face in nerve.proper_faces:
        sub = _subsystem(system, face)
        length = nerve.length(face)
        words = _reduced_words(sub, length)
        assert len(words) >= 1
        multisets = set()
        for w, _ in words:
            e = [0] * len(cc.classes)
            for g in w:
                e[cc.class_of(g)] += 1
            multisets.add(tuple(e))
        assert multisets == {weight_monomial(nerve, face, "standard_multi")}


# -- conjugacy classes and weights -----------------------------------------------------

def test_conjugacy_classes_examples():
    assert conjugacy_classes(load_group("a2")).classes == (("s1", "s2"),)
    assert conjugacy_classes(load_group("b2tilde")).classes == (("s1",), ("s2",), ("s3",))
    assert conjugacy_classes(load_group("pentagon")).classes == tuple((f"s{i}",) for i in range(1, 6))
    assert conjugacy_classes(CoxeterSystem.from_labels(*FINITE_SAMPLES["B3"])).classes == (("a", "b"), ("c",))


def test_conjugacy_coarsening():
    system = load_group("b2tilde")
    cc = conjugacy_classes(system, [["s1", "s3"], ["s2"]])
    assert cc.classes == (("s1", "s3"), ("s2",))
    with pytest.raises(ValueError):
        conjugacy_classes(load_group("a2"), [["s1"], ["s2"]])
    with pytest.raises(ValueError):
        conjugacy_classes(system, [["s1"], ["s2"]])


def test_weight_monomial_examples():
    nerve = compute_nerve(load_group("b2tilde"))
    assert weight_monomial(nerve, {"s2", "s3"}, "single") == (4,)
    assert weight_monomial(nerve, {"s2", "s3"}, "greedy") == (1,)
    assert weight_monomial(nerve, {"s1"}, "standard_multi") == (1, 0, 0)
    assert weight_monomial(nerve, {"s2", "s3"}, "standard_multi") == (0, 2, 2)
    pent = compute_nerve(load_group("pentagon"))
    for f in pent.proper_faces:
        assert weight_monomial(pent, f, "greedy") == (1,)
    with pytest.raises(ValueError):
        weight_monomial(nerve, set(), "single")


def test_weighting_variables():
    nerve = compute_nerve(load_group("pentagon"))
    assert weighting(nerve, "dimension").variables == ("x", "y")
    assert weighting(nerve, "dimension", names=["p", "q"]).variables == ("p", "q")
    per = weighting(nerve, "per_letter")
    assert per.variables[0] == "t_s1" and per.variables[5] == "t_s1_s2"
    assert len(set(per.monomials.values())) == 10
    with pytest.raises(ValueError):
        weighting(nerve, "bogus")
    with pytest.raises(ValueError):
        weighting(nerve, "dimension", names=["x"])


def test_face_labels():
    system = load_group("b2tilde")
    assert system.face_label(_fs("s3", "s1")) == "{s1,s3}"
    assert system.face_label(frozenset()) == "{}"
    assert system.m("s1", "s1") == 1
