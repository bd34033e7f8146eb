"""Reciprocity for the right-angled pentagon group.

The nerve is a 5-cycle, an Eulerian 1-sphere, so the greedy series and its
anti-reciprocal agree up to sign. Run with ``python3 demos/pentagon_reciprocity.py``.
"""

from __future__ import annotations

import numpy as np

from greedycox import build_greedy_automaton, check_reciprocity, closed_form, compute_nerve, from_automaton, specialize
from greedycox import reciprocal_ratfn, weighting
from greedycox.complexes import anti_incidence, nerve_complex, verify_j_properties
from greedycox.corpus import load_group

system = load_group("pentagon")
nerve = compute_nerve(system)
K = nerve_complex(nerve)

J = anti_incidence(K)
print("J is", J.shape, "with entries in", sorted(set(np.unique(J))))
report = verify_j_properties(K)
print("J^2 = I:", report.involution)

rep = from_automaton(build_greedy_automaton(system, nerve=nerve))
result = check_reciprocity(nerve, rep, 6)
print(result.message)

# Under the dimension weighting the identity also holds for the rational function.
f = closed_form(specialize(rep, weighting(nerve, "dimension")))
print("chi      =", f)
print("chi(1/x) =", reciprocal_ratfn(f))
