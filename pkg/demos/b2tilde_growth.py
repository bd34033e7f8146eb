"""Greedy normal forms and growth for the affine group B~2.

Run with ``python3 demos/b2tilde_growth.py``.
"""

from __future__ import annotations

from greedycox import build_greedy_automaton, closed_form, compute_nerve, expand, from_automaton, specialize, weighting
from greedycox.automaton import enumerate_elementary_roots, word_label
from greedycox.corpus import load_group
from greedycox.oracle import enumerate_ball, growth_counts
from greedycox.ratfunc import format_series

system = load_group("b2tilde")
nerve = compute_nerve(system)
print(system)

# Elementary roots drive the state space: each state is a set of them.
roots = enumerate_elementary_roots(system)
automaton = build_greedy_automaton(system, nerve=nerve)
print(f"{len(roots)} elementary roots, {len(automaton)} states, {len(automaton.edges)} edges")

# A few greedy words, read right to left.
rep = from_automaton(automaton)
exp = expand(rep, 2)
for word in list(exp.by_length()[2])[:6]:
    print("  ", word_label(nerve, word))

# Two specializations of the same representation.
for scheme in ("single", "greedy"):
    crep = specialize(rep, weighting(nerve, scheme))
    f = closed_form(crep)
    print(f"{scheme:>7}: {f}")
    print("         " + format_series(f.taylor(6), f.variables))

# The ordinary growth series counts group elements by length; a brute-force ball agrees.
print("ball   :", growth_counts(enumerate_ball(system, "standard", 6)))
