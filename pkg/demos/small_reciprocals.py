"""Anti-reciprocals for D-infinity and Z2*Z2*Z2.

D-infinity has a two-point nerve (a 0-sphere). Three points are not a sphere,
so for Z2*Z2*Z2 the anti-reciprocal exists but is not a signed copy of the
series. Run with ``python3 demos/small_reciprocals.py``.
"""

from __future__ import annotations

from greedycox import build_anti_reciprocal, build_greedy_automaton, compute_nerve, expand, from_automaton
from greedycox.automaton import word_label
from greedycox.corpus import load_group


def show(name: str, L: int = 3) -> None:
    nerve = compute_nerve(load_group(name))
    rep = from_automaton(build_greedy_automaton(nerve.system, nerve=nerve))
    star = expand(build_anti_reciprocal(nerve, rep).engine, L)
    chi = expand(rep, L)
    print(f"{name}: chi* through length {L}")
    for word, c in sorted(star.coefficients.items(), key=lambda kv: (len(kv[0]), word_label(nerve, kv[0]))):
        print(f"  {word_label(nerve, word):>8}  chi*={str(c):>5}  chi={chi.coefficients.get(word, 0)}")


show("dinf")
show("z2z2z2", 2)
