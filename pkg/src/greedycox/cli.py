"""Command-line entry point: ``python -m greedycox <verb> FILE [options]``.

FILE is a path or the name of a bundled corpus entry.  Exit codes: 0 when
every requested check passes, 1 when a check fails, 2 for unreadable or
invalid input, 3 when a state or ball cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction

from . import __version__
from .automaton import (
    DEFAULT_MAX_STATES,
    AutomatonError,
    build_greedy_automaton,
    enumerate_elementary_roots,
    export_dot,
    to_json,
    word_label,
)
from .complexes import (
    ComplexError,
    SimplicialComplex,
    is_eulerian_sphere,
    is_flag,
    j_to_json,
    lemma_oracles,
    nerve_complex,
    parse_complex,
    reduced_euler,
    verify_j_properties,
)
from .corpus import resolve_text
from .coxeter import CoxeterSystem, DefinitionError, compute_nerve, parse_definition, weighting
from .oracle import DEFAULT_MAX_ELEMENTS, OracleError, cross_validate
from .ratfunc import format_series, graded_lex, reciprocal_ratfn
from .series import (
    check_reciprocity,
    closed_form,
    expand,
    expand_commutative,
    format_expansion,
    from_automaton,
    specialize,
)

SCHEMA = "greedycox.report/1"


class Report:
    """Ordered report: echoed inputs, outputs, named checks, timing."""

    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.outputs: dict = {}
        self.checks: dict[str, bool] = {}
        self.lines: list[str] = []
        self._start = time.perf_counter()

    def say(self, line: str) -> None:
        self.lines.append(line)

    def check(self, name: str, ok: bool) -> bool:
        self.checks[name] = bool(ok)
        return ok

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def document(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": self.checks,
            "ok": self.ok,
            "timing_s": round(time.perf_counter() - self._start, 6),
        }


def _load_group(source: str) -> CoxeterSystem:
    return parse_definition(resolve_text(source, ".cox"))


def _load_complex(source: str) -> SimplicialComplex:
    """Complex file, or the nerve of a group file (``.cox``)."""
    text = resolve_text(source, ".cplx") if not source.endswith(".cox") else None
    if text is None:
        return nerve_complex(compute_nerve(_load_group(source)))
    return parse_complex(text)


# -- verbs -----------------------------------------------------------------------------

def cmd_nerve(args, rep: Report) -> None:
    nerve = compute_nerve(_load_group(args.file))
    sizes = nerve.count_by_size()
    parts = [f"{sizes.get(1, 0)} vertices"]
    names = {2: "edges", 3: "triangles"}
    for k in sorted(sizes):
        if k >= 2:
            parts.append(f"{sizes[k]} {names.get(k, f'{k - 1}-simplices')}")
    rep.say(f"{len(nerve)} faces ({', '.join(parts)})")
    rows = []
    for f in nerve.faces:
        rows.append({"face": nerve.label(f), "longest_length": nerve.length(f),
                     "longest_word": list(nerve.word(f))})
        rep.say(f"  {nerve.label(f):<16} |w| = {nerve.length(f):<3} {' '.join(nerve.word(f)) or 'e'}")
    rep.outputs = {"faces": len(nerve), "by_size": {str(k): v for k, v in sorted(sizes.items())},
                   "records": rows}


def cmd_minroots(args, rep: Report) -> None:
    system = _load_group(args.file)
    roots = enumerate_elementary_roots(system)
    rep.say(f"{len(roots)} elementary roots")
    if system.field.degree > 1:
        rep.say(f"coordinates in simple roots, with θ = 2cos(pi/{system.field.N})")
    listed = []
    for i, beta in enumerate(roots.roots):
        coords = [str(c) for c in beta]
        listed.append(coords)
        rep.say(f"  {i + 1:>3}: ({', '.join(coords)})")
    rep.outputs = {"count": len(roots), "roots": listed}


def cmd_automaton(args, rep: Report) -> None:
    system = _load_group(args.file)
    a = build_greedy_automaton(system, max_states=args.max_states)
    rep.say(f"{len(a)} states, {len(a.transitions)} transitions "
            f"({len(a.roots)} elementary roots, alphabet of {len(a.alphabet)} letters)")
    rep.say("words sigma_n ... sigma_1 are read from the right")
    if args.dot:
        dot = export_dot(a)
        if args.dot == "-":
            rep.say(dot.rstrip("\n"))
        else:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(dot)
            rep.say(f"DOT written to {args.dot}")
    rep.outputs = to_json(a)


_MULTI = re.compile(r"^multi\((.+)\)$")


def resolve_weighting(nerve, source: str):
    """CLI weighting names: greedy, single|standard, multi, multi(x,y,...), per-letter, dimension."""
    m = _MULTI.match(source.replace(" ", ""))
    if m:
        return weighting(nerve, "dimension", names=m.group(1).split(","))
    table = {"greedy": "greedy", "single": "single", "standard": "single",
             "multi": "standard_multi", "per-letter": "per_letter", "dimension": "dimension"}
    if source not in table:
        raise ValueError(f"unknown weighting {source!r}")
    return weighting(nerve, table[source])


def cmd_growth(args, rep: Report) -> None:
    system = _load_group(args.file)
    a = build_greedy_automaton(system, max_states=args.max_states)
    lin = from_automaton(a)
    w = resolve_weighting(a.nerve, args.weights)
    crep = specialize(lin, w)
    series = expand_commutative(crep, args.order)
    rep.say(f"weights {args.weights} in {', '.join(w.variables)}")
    rep.say(f"series to order {args.order}: {format_series(series, w.variables)}")
    rep.outputs = {"variables": list(w.variables),
                   "series": [[str(c), list(m)] for m, c in
                              sorted(series.items(), key=lambda t: graded_lex(t[0]))]}
    if args.closed_form:
        f = closed_form(crep)
        rep.say(f"closed form: {f}")
        rep.say(f"numerator {len(f.num)} terms degree {f.degree[0]}; "
                f"denominator {len(f.den)} terms degree {f.degree[1]}")
        rep.outputs["closed_form"] = f.to_json()
        rep.outputs["closed_form_text"] = str(f)
        rep.check("taylor_matches_expansion", f.taylor(args.order) == series)


def cmd_reciprocity(args, rep: Report) -> None:
    system = _load_group(args.file)
    a = build_greedy_automaton(system, max_states=args.max_states)
    lin = from_automaton(a)
    nerve = a.nerve
    greedy = closed_form(specialize(lin, weighting(nerve, "greedy")))
    standard = closed_form(specialize(lin, weighting(nerve, "single")))
    inv_g, inv_s = reciprocal_ratfn(greedy), reciprocal_ratfn(standard)
    gsign = "+" if inv_g == greedy else "-" if inv_g == -greedy else None
    ssign = "+" if inv_s == standard else "-" if inv_s == -standard else None
    rep.outputs["greedy_t_to_1_over_t"] = gsign or "fails"
    rep.outputs["standard_t_to_1_over_t"] = ssign or "fails"
    if not system.is_right_angled:
        rep.say("non-right-angled: theorem inapplicable; "
                + ("greedy series fails t->1/t check" if gsign is None
                   else f"greedy series satisfies gamma(1/t) = {gsign}gamma(t)"))
        rep.say("standard series " + ("fails t->1/t check" if ssign is None
                                      else f"satisfies gamma(1/t) = {ssign}gamma(t)"))
        rep.outputs["theorem"] = "inapplicable: non-right-angled"
        return
    report = check_reciprocity(nerve, lin, args.order)
    rep.say(report.message)
    rep.outputs.update({
        "theorem": "applicable" if report.eulerian else "inapplicable: nerve not Eulerian",
        "reduced_euler": report.reduced_euler,
        "sphere_dim": report.sphere_dim,
        "j_invertible": report.j_invertible,
    })
    if report.chi_star is not None:
        namer = lambda w: word_label(nerve, w)  # noqa: E731
        head = expand(lin, min(args.order, 2))
        star = report.chi_star
        short = type(star)(min(args.order, 2), {w: c for w, c in star.coefficients.items() if len(w) <= 2})
        rep.say(f"chi  = {format_expansion(head, namer)} + ...")
        rep.say(f"chi* = {format_expansion(short, namer)} + ...")
        rep.outputs["chi_star_head"] = {namer(w): str(c) for w, c in short.coefficients.items()}
    if report.passed is not None:
        rep.check("reciprocity", report.passed)
        expected = report.expected_sign
        rep.check("rational_function_reciprocity",
                  (inv_g == greedy) if expected > 0 else (inv_g == -greedy))


def cmd_complex(args, rep: Report) -> None:
    K = _load_complex(args.file)
    counts = K.count_by_dim()
    rep.say(f"{len(K)} faces, dimension {K.dim}, reduced Euler characteristic {reduced_euler(K)}")
    rep.outputs = {"faces": len(K), "by_dimension": {str(k): v for k, v in counts.items()},
                   "reduced_euler": reduced_euler(K)}
    checks = args.check or ["flag", "eulerian", "j"]
    if "flag" in checks:
        flag = is_flag(K)
        rep.say(f"flag: {flag}")
        rep.outputs["flag"] = flag
        rep.check("flag", flag)
    if "eulerian" in checks:
        eul, k = is_eulerian_sphere(K)
        rep.say(f"Eulerian sphere: {eul} (k = {k})")
        rep.outputs["eulerian"] = eul
        rep.outputs["sphere_dim"] = k
        rep.check("eulerian", eul)
    if "j" in checks:
        r = verify_j_properties(K)
        rep.outputs["J"] = j_to_json(K)
        rep.outputs["column_sums"] = list(r.column_sums)
        rep.say(f"J column sums {sorted(set(r.column_sums))}; expected {r.reduced_euler} for flag complexes")
        if r.involution is not None:
            rep.say(f"J^2 = I: {r.involution}")
        rep.check("j_properties", r.ok)
    if "lemmas" in checks:
        bad = 0
        eul, _ = is_eulerian_sphere(K)
        faces = [f for f in K.sorted_faces if f]
        for s in faces:
            for t in faces:
                v = lemma_oracles(K, s, t)
                ok = v.chi_B_sigma == 0
                if eul:
                    ok &= v.chi_E_sigma == 0
                    ok &= v.chi_E_cap_St_tau == (-1 if s <= t else 0)
                    ok &= v.chi_E_cap_B_tau == ((-1) ** len(s) if s == t else 0)
                bad += not ok
        rep.say(f"lemma values checked on {len(faces) ** 2} face pairs; {bad} failures")
        rep.check("lemmas", bad == 0)


def cmd_selftest(args, rep: Report) -> None:
    system = _load_group(args.file)
    a = build_greedy_automaton(system, max_states=args.max_states)
    lin = from_automaton(a)
    cv = cross_validate(system, a, lin, args.depth, max_elements=args.max_ball)
    rep.say(f"oracle ball radius {cv.radius}: {cv.elements} elements, {cv.words} accepted words")
    for name, ok in [("bijective", cv.bijective), ("greedy_forms", cv.greedy_forms_agree),
                     ("length_additivity", cv.additive), ("series_support", cv.series_support_ok)]:
        rep.check(name, ok)
        rep.say(f"  {name:<18} {'pass' if ok else 'FAIL'}")
    for scheme, ok in cv.growth_agree.items():
        rep.check(f"growth_{scheme}", ok)
        rep.say(f"  growth[{scheme}]{' ' * max(1, 10 - len(scheme))}{'pass' if ok else 'FAIL'}")
    for scheme in ("greedy", "single"):
        try:
            closed_form(specialize(lin, weighting(a.nerve, scheme)))
            ok = True
        except Exception:  # the closed form asserts its own Taylor agreement
            ok = False
        rep.check(f"closed_form_{scheme}", ok)
        rep.say(f"  closed form[{scheme}]{' ' * max(1, 6 - len(scheme))}{'pass' if ok else 'FAIL'}")
    rep.outputs = {"radius": cv.radius, "elements": cv.elements, "words": cv.words,
                   "failures": cv.failures}


# -- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print the structured report as JSON")
    common.add_argument("--max-states", type=int, default=argparse.SUPPRESS,
                        help=f"automaton state cap (default {DEFAULT_MAX_STATES})")
    common.add_argument("--max-ball", type=int, default=argparse.SUPPRESS,
                        help=f"oracle element cap (default {DEFAULT_MAX_ELEMENTS})")

    p = argparse.ArgumentParser(prog="greedycox", parents=[common],
                                description="Greedy normal forms and growth series of Coxeter groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="definition file or bundled corpus name")
        sp.set_defaults(func=func)
        return sp

    verb("nerve", cmd_nerve, "spherical subsets and longest elements")
    verb("minroots", cmd_minroots, "elementary roots")
    sp = verb("automaton", cmd_automaton, "greedy normal-form automaton")
    sp.add_argument("--dot", metavar="PATH", help="write Graphviz output ('-' for stdout)")
    sp = verb("growth", cmd_growth, "growth series under a weighting")
    sp.add_argument("--weights", default="greedy",
                    help="greedy | single (= standard) | multi | multi(x,y,...) | per-letter | dimension")
    sp.add_argument("--order", type=int, default=6)
    sp.add_argument("--closed-form", action="store_true")
    sp = verb("reciprocity", cmd_reciprocity, "reciprocity checks")
    sp.add_argument("--order", type=int, default=6)
    sp = verb("complex", cmd_complex, "simplicial complex checks (complex file or group nerve)")
    sp.add_argument("--check", action="append", choices=["flag", "eulerian", "j", "lemmas"])
    sp = verb("selftest", cmd_selftest, "cross-validation against the brute-force oracle")
    sp.add_argument("--depth", type=int, default=6, help="oracle radius in S-length")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.json = getattr(args, "json", False)
    args.max_states = getattr(args, "max_states", DEFAULT_MAX_STATES)
    args.max_ball = getattr(args, "max_ball", DEFAULT_MAX_ELEMENTS)
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json")}
    rep = Report(args.verb, inputs)
    try:
        args.func(args, rep)
    except (DefinitionError, ComplexError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AutomatonError, OracleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(rep.document(), indent=2, default=_json_default))
    else:
        print("\n".join(rep.lines))
        for name, ok in rep.checks.items():
            print(f"[{'PASS' if ok else 'FAIL'}] {name}")
    return 0 if rep.ok else 1


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"not serialisable: {type(x).__name__}")


if __name__ == "__main__":
    sys.exit(main())
