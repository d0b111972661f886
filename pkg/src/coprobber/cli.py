"""Command-line front end: copnum, check, verify, gen and play."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import TextIO

from .errors import BudgetError, CopRobberError, NotConnectedError
from .game import Configuration, Side, cop_number, solve
from .graph import Graph, bits, emit_graph6, is_connected, parse_graph6
from .harness import (
    SPEC_IDS,
    CopNumberCache,
    StreamError,
    emit_report,
    gen_random_connected,
    read_graph6_file,
    read_graph6_stream,
    theorem_spec,
    verify_theorem,
)
from .pattern import contains_induced, parse_pattern
from .strategies import HalfMove, OptimalCops, check_transcript, make_strategy

EXIT_OK, EXIT_FOUND, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 20240607

# which parameters each spec takes
_SPEC_PARAMS = {
    "T1": {"k"}, "T2": {"l"}, "T3": {"k"}, "C1": {"k", "l"}, "T4": {"forest"},
    "T5": set(), "L1": set(), "PR1": {"k"}, "PR2": {"k"}, "CONJ1": set(), "CONJ2": set(),
}


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coprobber", description="Exact cops-and-robber tools.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("copnum", help="exact cop number")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph6")
    src.add_argument("--input", help="graph6 file, '-' for stdin")
    c.add_argument("--max-k", type=int)
    c.add_argument("--dump-table", metavar="FILE", help="write the solved table at k = cop number")

    c = sub.add_parser("check", help="test for an induced pattern")
    c.add_argument("--pattern", required=True)
    c.add_argument("--graph6", required=True)

    c = sub.add_parser("verify", help="check a cop-number bound over a corpus")
    c.add_argument("--spec", required=True, type=str.upper, choices=SPEC_IDS)
    c.add_argument("--k", type=int)
    c.add_argument("--l", type=int)
    c.add_argument("--forest", help="path orders joined by '+' or ',', e.g. 2+3")
    c.add_argument("--input", required=True, help="graph6 file, '-' for stdin")
    c.add_argument("--with-strategy", action="store_true")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--cache")
    c.add_argument("--jobs", type=int, default=1)

    c = sub.add_parser("gen", help="random connected graphs as graph6")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p", type=float, required=True)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--count", type=int, required=True)

    c = sub.add_parser("play", help="play the robber against the cops")
    c.add_argument("--graph6", required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--cops", default="optimal", help="'optimal' or a strategy such as path_push:4")
    return p


def _graph(text: str) -> Graph:
    try:
        return parse_graph6(text)
    except CopRobberError as e:
        raise UsageError(f"bad graph6 {text!r}: {e}") from e


def _open_input(path: str):
    if path == "-":
        return read_graph6_stream(sys.stdin)
    try:
        open(path).close()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e
    return read_graph6_file(path)


# -- subcommands --------------------------------------------------------------------

def _copnum(a, out: TextIO) -> int:
    if a.max_k is not None and a.max_k < 1:
        raise UsageError("--max-k must be at least 1")
    if a.dump_table and a.graph6 is None:
        raise UsageError("--dump-table needs a single --graph6 graph")
    if a.graph6 is not None:
        g = _graph(a.graph6)
        if not is_connected(g):
            raise UsageError("the graph is not connected")
        try:
            c = cop_number(g, max_k=a.max_k)
        except BudgetError as e:
            print(f"undetermined: {e}", file=sys.stderr)
            return EXIT_FOUND
        print(c, file=out)
        if a.dump_table:
            with open(a.dump_table, "w") as fh:
                for line in solve(g, c).dump_lines():
                    fh.write(line + "\n")
        return EXIT_OK
    status = EXIT_OK
    for _, g in _open_input(a.input):
        key = emit_graph6(g)
        if not is_connected(g):
            print(f"{key}\tdisconnected", file=out)
            continue
        try:
            print(f"{key}\t{cop_number(g, max_k=a.max_k)}", file=out)
        except BudgetError:
            print(f"{key}\t>{a.max_k}", file=out)
            status = EXIT_FOUND
    return status


def _check(a, out: TextIO) -> int:
    try:
        pattern = parse_pattern(a.pattern)
    except ValueError as e:
        raise UsageError(str(e)) from e
    g = _graph(a.graph6)
    found, witness = contains_induced(g, pattern)
    if found:
        print(f"contains {pattern.name} on {' '.join(map(str, witness))}", file=out)
    else:
        print(f"{pattern.name}-free", file=out)
    return EXIT_OK


def _verify(a, out: TextIO) -> int:
    given = {name for name in ("k", "l", "forest") if getattr(a, name) is not None}
    wanted = _SPEC_PARAMS[a.spec]
    if given - wanted:
        raise UsageError(f"{a.spec} does not take --{', --'.join(sorted(given - wanted))}")
    if wanted - given:
        raise UsageError(f"{a.spec} needs --{', --'.join(sorted(wanted - given))}")
    if a.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    forest = None
    if a.forest is not None:
        try:
            forest = [int(x) for x in a.forest.replace(",", "+").split("+")]
        except ValueError as e:
            raise UsageError(f"bad --forest {a.forest!r}") from e
    try:
        spec = theorem_spec(a.spec, k=a.k, l=a.l, forest=forest)
    except ValueError as e:
        raise UsageError(str(e)) from e
    if a.with_strategy and spec.strategy is None:
        raise UsageError(f"{a.spec} has no linked strategy")
    graphs = _open_input(a.input)
    cache = CopNumberCache(a.cache) if a.cache else None
    report = verify_theorem(spec, graphs, cache=cache, with_strategy=a.with_strategy, jobs=a.jobs)
    out.write(emit_report(report, a.format))
    if a.format == "json":
        out.write("\n")
    for g6, c, bound in report.violations:
        print(f"VIOLATION {spec.label}: {g6} has cop number {c} > {bound}", file=sys.stderr)
    for g6, why in report.strategy_divergences:
        print(f"divergence {spec.label}: {g6}: {why}", file=sys.stderr)
    return EXIT_FOUND if report.violations else EXIT_OK


def _gen(a, out: TextIO) -> int:
    if not 1 <= a.n <= 62:
        raise UsageError("--n must be in 1..62")
    if not 0 <= a.p <= 1:
        raise UsageError("--p must lie in [0, 1]")
    if a.count < 0:
        raise UsageError("--count must be non-negative")
    try:
        for g in gen_random_connected(a.n, a.p, a.seed, a.count):
            print(emit_graph6(g), file=out)
    except CopRobberError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def _play(a, out: TextIO, inp: TextIO) -> int:
    g = _graph(a.graph6)
    if not is_connected(g):
        raise UsageError("the graph is not connected")
    if a.k < 1:
        raise UsageError("--k must be at least 1")
    if a.cops == "optimal":
        strategy = None
    else:
        try:
            strategy = make_strategy(a.cops)
        except ValueError as e:
            raise UsageError(str(e)) from e
        if strategy.required_cops(g) != a.k:
            raise UsageError(f"{strategy.name} uses {strategy.required_cops(g)} cops, not {a.k}")
    if strategy is None:
        strategy = OptimalCops(solve(g, a.k))
    transcript = run_play(g, a.k, strategy, inp, out)
    check_transcript(g, transcript)
    return EXIT_OK


def run_play(g: Graph, k: int, strategy, inp: TextIO, out: TextIO) -> list[HalfMove]:
    """Interactive match with the human as robber; returns the transcript.

    Each round prints the positions and the legal robber moves and reads a
    vertex number; illegal input re-prompts, ``q`` or end of input quits.
    """
    cops, mem = strategy.init(g)
    cops = tuple(cops)
    transcript = [HalfMove(0, Side.COP, cops, None)]

    def ask(prompt: str, legal: list[int]) -> int | None:
        while True:
            print(prompt, file=out)
            out.flush()
            line = inp.readline()
            if not line or line.strip().lower() in ("q", "quit"):
                return None
            try:
                v = int(line)
            except ValueError:
                v = None
            if v in legal:
                return v
            print(f"illegal choice {line.strip()!r}; pick one of {legal}", file=out)

    def finish(msg: str) -> list[HalfMove]:
        print(msg, file=out)
        print("transcript:", file=out)
        for h in transcript:
            print(h.line(), file=out)
        return transcript

    print(f"{g.n} vertices, edges {g.edges()}; {k} cop(s) using {strategy.name}", file=out)
    print(f"cops start on {list(cops)}", file=out)
    r = ask(f"place the robber, vertices {list(range(g.n))}:", list(range(g.n)))
    if r is None:
        return finish("quit")
    transcript.append(HalfMove(0, Side.ROBBER, cops, r))
    if r in cops:
        return finish("captured in round 0")
    rnd = 0
    while True:
        rnd += 1
        cops, mem = strategy.step(mem, Configuration(tuple(sorted(cops)), r, Side.COP))
        cops = tuple(cops)
        transcript.append(HalfMove(rnd, Side.COP, cops, r))
        print(f"round {rnd}: cops move to {list(cops)}, robber on {r}", file=out)
        if r in cops:
            return finish(f"captured in round {rnd}")
        legal = list(bits(g.closed(r)))
        nr = ask(f"robber moves from {r}, options {legal}:", legal)
        if nr is None:
            return finish("quit")
        r = nr
        transcript.append(HalfMove(rnd, Side.ROBBER, cops, r))
        if r in cops:
            return finish(f"captured in round {rnd} (robber walked onto a cop)")


def dispatch(argv=None, out: TextIO | None = None, inp: TextIO | None = None) -> int:
    out = out or sys.stdout
    inp = inp or sys.stdin
    try:
        a = _parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        if a.command == "copnum":
            return _copnum(a, out)
        if a.command == "check":
            return _check(a, out)
        if a.command == "verify":
            return _verify(a, out)
        if a.command == "gen":
            return _gen(a, out)
        return _play(a, out, inp)
    except (UsageError, StreamError, NotConnectedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
