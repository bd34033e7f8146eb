"""Canonical closed forms frozen as JSON.

Regenerate after an intentional change of canonical form with
``python3 tests/test_golden.py --regen`` and review the diff.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

from greedycox.coxeter import weighting
from greedycox.ratfunc import RationalFunction
from greedycox.series import closed_form, specialize

from conftest import corpus_bundle

GOLDEN = Path(__file__).with_name("golden")

CASES = [
    ("a2", "single"), ("a2", "greedy"),
    ("dihedral-m4", "single"), ("dihedral-m4", "greedy"),
    ("dinf", "single"), ("z2z2z2", "single"), ("z2z2z2", "greedy"),
    ("b2tilde", "single"), ("b2tilde", "greedy"), ("b2tilde", "standard_multi"), ("b2tilde", "dimension"),
    ("pentagon", "single"), ("pentagon", "greedy"), ("pentagon", "dimension"), ("pentagon", "per_letter"),
    ("octahedron", "single"), ("octahedron", "greedy"), ("octahedron", "dimension"),
    ("two-squares", "single"), ("two-squares", "greedy"), ("two-squares", "dimension"),
]


def _compute(name: str, scheme: str) -> RationalFunction:
    _, nerve, _, rep = corpus_bundle(name)
    return closed_form(specialize(rep, weighting(nerve, scheme)))


def _path(name: str, scheme: str) -> Path:
    return GOLDEN / f"{name}.{scheme}.json"


def _dump(f: RationalFunction) -> str:
    return json.dumps({"text": str(f), **f.to_json()}, indent=1) + "\n"


@pytest.mark.parametrize("name,scheme", CASES)
def test_closed_form_matches_golden_file(name, scheme):
    stored = _path(name, scheme).read_text()
    f = _compute(name, scheme)
    assert _dump(f) == stored
    assert RationalFunction.from_json(json.loads(stored)) == f


if __name__ == "__main__" and "--regen" in sys.argv:
    GOLDEN.mkdir(exist_ok=True)
    for case in CASES:
        _path(*case).write_text(_dump(_compute(*case)))
        print("wrote", _path(*case).name)
