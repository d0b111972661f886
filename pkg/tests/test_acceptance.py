"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (or ``python
tests/test_acceptance.py``); the lines are also collected in the pytest
terminal summary.
"""

import itertools
import time

import pytest
from conftest import ACCEPTANCE_LINES
from oracles import brute_isomorphic

from coprobber.game import Configuration, Side, cop_number, is_dismantlable, optimal_playout, solve
from coprobber.graph import cycle_graph, diameter, emit_graph6, from_edges, parse_graph6, petersen_graph
from coprobber.harness import corpus_path, emit_report, report_from_json, theorem_spec, verify_theorem
from coprobber.pattern import is_family_free, make_pattern
from coprobber.strategies import HouseTwoCop, OptimalRobber, check_transcript, run_match

CORPUS7_SIZE = 996  # connected graphs on at most 7 vertices (1+1+2+6+21+112+853)


def criterion(no, ok, detail):
    line = f"AC{no:<2} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def reverify(report):
    """Every violation and extremal witness reproduces through cop_number in isolation."""
    for g6, c, bound in report.violations:
        if cop_number(parse_graph6(g6)) != c or c <= bound:
            return False
    return all(cop_number(parse_graph6(w)) == report.bound for w in report.extremal_witnesses)


def test_ac1_oracle_equivalence(corpus7, session_cache):
    start = time.perf_counter()
    mismatches, errors = [], []
    for g in corpus7:
        try:
            c = cop_number(g)
            session_cache.store(g, c)
            if (c == 1) != is_dismantlable(g):
                mismatches.append(emit_graph6(g))
        except Exception as e:  # the criterion counts exceptions
            errors.append((emit_graph6(g), repr(e)))
    took = time.perf_counter() - start
    ok = len(corpus7) == CORPUS7_SIZE and not mismatches and not errors and took < 60
    criterion(1, ok, f"{len(corpus7)} graphs, {len(mismatches)} mismatches, {len(errors)} exceptions, "
                     f"{took:.1f}s (< 60s)")


def test_ac2_path_free_bound(corpus8, session_cache):
    start = time.perf_counter()
    parts, ok = [], True
    for k in (4, 5, 6):
        r = verify_theorem(theorem_spec("T1", k=k), corpus8, cache=session_cache)
        ok &= r.verified and r.graphs_seen == len(corpus8) and reverify(r)
        parts.append(f"k={k}: {r.graphs_matching} P{k}-free, {len(r.violations)} violations")
    took = time.perf_counter() - start
    ok &= took < 600
    criterion(2, ok, "; ".join(parts) + f"; {took:.1f}s (< 600s)")


def test_ac3_h_free_bound(corpus7, session_cache):
    parts, ok = [], True
    for l in (1, 2):
        r = verify_theorem(theorem_spec("T2", l=l), corpus7, cache=session_cache)
        ok &= r.verified and reverify(r)
        parts.append(f"l={l}: {r.graphs_matching} matching, {len(r.violations)} violations")
    claw_paw = [make_pattern("claw"), make_pattern("paw")]
    h_l1 = theorem_spec("T2", l=1)
    same = all(h_l1.matches(g) == is_family_free(g, claw_paw) for g in corpus7)
    ok &= same
    criterion(3, ok, "; ".join(parts) + f"; l=1 family equals claw/paw-free: {same}")


def test_ac4_p5_claw_and_p5_c4(corpus8, session_cache):
    t3 = verify_theorem(theorem_spec("T3", k=5), corpus8, cache=session_cache)
    c1 = verify_theorem(theorem_spec("C1", k=5, l=4), corpus8, cache=session_cache)
    ok = t3.verified and c1.verified and t3.bound == c1.bound == 2 and reverify(t3) and reverify(c1)
    criterion(4, ok, f"{{P5,claw}}-free: {t3.graphs_matching} graphs, {len(t3.violations)} violations; "
                     f"{{P5,C4}}-free: {c1.graphs_matching} graphs, {len(c1.violations)} violations")


def test_ac5_linear_forest_bounds(corpus8, session_cache):
    runs = [
        ("(P2+P3)-free <= 3", theorem_spec("T4", forest=[2, 3]), 3),
        ("(P1+P4)-free <= 3", theorem_spec("PR1", k=4), 3),
        ("(P2+P4)-free <= 4", theorem_spec("PR2", k=4), 4),
    ]
    parts, ok = [], True
    for label, spec, bound in runs:
        r = verify_theorem(spec, corpus8, cache=session_cache)
        ok &= r.verified and spec.bound == bound and reverify(r)
        parts.append(f"{label}: {r.graphs_matching} graphs, {len(r.violations)} violations")
    criterion(5, ok, "; ".join(parts))


def test_ac6_2p2_house_bound(corpus8, session_cache):
    r = verify_theorem(theorem_spec("T5"), corpus8, cache=session_cache)
    c5 = cycle_graph(5)
    c5_lines = [w for w in r.extremal_witnesses if brute_isomorphic(parse_graph6(w), c5)]
    ok = r.verified and len(c5_lines) == 1 and cop_number(parse_graph6(c5_lines[0])) == 2 and reverify(r)
    criterion(6, ok, f"{r.graphs_matching} graphs, {len(r.violations)} violations; C5 extremal as "
                     f"{c5_lines} with cop number 2")


def _house_playouts(corpus7):
    family = [make_pattern("linear_forest", [2, 2]), make_pattern("co_p5")]
    hosts = [g for g in corpus7 if diameter(g) <= 2 and is_family_free(g, family)]
    failures = []
    for g in hosts:
        s = HouseTwoCop()
        _, mem = s.init(g)
        try:
            r = run_match(g, s, OptimalRobber(solve(g, 2)))
        except Exception as e:
            failures.append((emit_graph6(g), repr(e)))
            continue
        if not (r.captured and mem.extra["case_moves_only"] and check_transcript(g, r.transcript) == r.round):
            failures.append((emit_graph6(g), r.outcome))
    return hosts, failures


def test_ac7_strategy_playouts(corpus7, session_cache):
    start = time.perf_counter()
    hosts, house_fail = _house_playouts(corpus7)
    pr1 = verify_theorem(theorem_spec("PR1", k=4), corpus7, cache=session_cache, with_strategy=True)
    parts = [f"house: {len(hosts) - len(house_fail)}/{len(hosts)} captured by case-analysis moves",
             f"guard_vertex(4): {pr1.strategy_runs - len(pr1.strategy_divergences)}/{pr1.strategy_runs} captured"]
    divergences = {}
    for sid, kw in [("T1", {"k": 4}), ("T1", {"k": 5}), ("T1", {"k": 6}), ("T2", {"l": 1}), ("T2", {"l": 2}),
                    ("T3", {"k": 5}), ("T3", {"k": 6})]:
        spec = theorem_spec(sid, **kw)
        r = verify_theorem(spec, corpus7, cache=session_cache, with_strategy=True)
        assert r.strategy_runs == r.graphs_matching  # every bound-respecting host was played
        divergences[spec.strategy().name] = (len(r.strategy_divergences), r.strategy_runs)
    parts.append("divergences " + ", ".join(f"{name} {d}/{n}" for name, (d, n) in divergences.items()))
    ok = not house_fail and not pr1.strategy_divergences and pr1.strategy_runs == pr1.graphs_matching
    criterion(7, ok, "; ".join(parts) + f"; {time.perf_counter() - start:.1f}s")


def test_ac8_solver_anchors(corpus6):
    anchors = {"C4": cop_number(cycle_graph(4)), "C5": cop_number(cycle_graph(5)),
               "Petersen": cop_number(petersen_graph())}
    ok = anchors == {"C4": 2, "C5": 2, "Petersen": 3}
    checked = bad = 0
    for g in corpus6:
        for k in (1, 2, 3):
            t = solve(g, k)
            for cops, r in itertools.product(t.multisets, range(g.n)):
                c = Configuration(cops, r, Side.ROBBER)
                s = t.steps(c)
                if s is None:
                    continue
                checked += 1
                bad += optimal_playout(t, c) != s
    ok &= bad == 0
    criterion(8, ok, f"{anchors}; {checked} winning openings played out (n <= 6, k <= 3), {bad} off-table")


def test_ac9_format_conformance():
    lines = []
    for n in range(1, 8):
        with open(corpus_path(n)) as fh:
            lines += [line.rstrip("\n") for line in fh if line.strip()]
    mismatched = sum(emit_graph6(parse_graph6(line)) != line for line in lines)
    vectors = (parse_graph6("A_") == from_edges(2, [(0, 1)]) and parse_graph6("A?") == from_edges(2, [])
               and emit_graph6(from_edges(2, [(0, 1)])) == "A_" and emit_graph6(from_edges(2, [])) == "A?")
    ok = len(lines) == CORPUS7_SIZE and mismatched == 0 and vectors
    criterion(9, ok, f"{len(lines)} corpus lines, {mismatched} round-trip mismatches; hand vectors ok: {vectors}")


def test_ac10_conjecture_probes(corpus8, session_cache):
    parts, ok = [], True
    for sid in ("CONJ1", "CONJ2"):
        r = verify_theorem(theorem_spec(sid), corpus8, cache=session_cache)
        csv_text, json_text = emit_report(r, "csv"), emit_report(r, "json")
        ok &= r.graphs_seen == len(corpus8) and report_from_json(json_text) == r and reverify(r)
        ok &= csv_text.startswith("spec,params,graphs_seen,matching,violations,divergences,wall_ms\n")
        witnesses = [v[0] for v in r.violations]
        if witnesses:
            print(f"{sid} COUNTEREXAMPLES: {witnesses}")
        parts.append(f"{sid}: {r.graphs_matching} graphs, {len(r.violations)} violations {witnesses}")
    criterion(10, ok, "; ".join(parts))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
