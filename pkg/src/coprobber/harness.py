"""Corpora, bound specifications and exhaustive verification."""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .errors import CannotSatisfyError, CopRobberError, Graph6Error
from .game import cop_number, solve
from .graph import Graph, diameter, emit_graph6, is_connected, parse_graph6
from .pattern import Pattern, is_family_free, make_pattern
from .strategies import (
    ClawCycle,
    CycleTrap,
    GuardRecurse,
    HouseTwoCop,
    OptimalRobber,
    PathPush,
    Strategy,
    run_match,
)

log = logging.getLogger(__name__)


# -- graph streams ------------------------------------------------------------

class StreamError(Graph6Error):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def read_graph6_stream(source: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Lazily parse graph6 lines, yielding ``(1-based line number, graph)``."""
    for lineno, line in enumerate(source, 1):
        if not line.strip():
            continue
        try:
            yield lineno, parse_graph6(line)
        except CopRobberError as e:
            raise StreamError(lineno, str(e)) from e


def read_graph6_file(path: str | Path) -> Iterator[tuple[int, Graph]]:
    with open(path) as fh:
        yield from read_graph6_stream(fh)


def corpus_path(n: int) -> Path:
    """Packaged file of all connected graphs on ``n`` vertices (n <= 8)."""
    return Path(str(resources.files("coprobber") / "data" / f"con{n}.g6"))


def load_corpus(max_n: int, min_n: int = 1) -> list[Graph]:
    if max_n > 8:
        raise ValueError("the packaged corpus stops at 8 vertices")
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(g for _, g in read_graph6_file(corpus_path(n)))
    return out


def gen_random_connected(n: int, p: float, seed: int, count: int,
                         max_attempts: int = 1000) -> Iterator[Graph]:
    """Erdos-Renyi samples kept only when connected.

    Uses ``random.Random(seed)``: one draw per vertex pair, pairs in graph6
    order (column by column over the upper triangle), edge when the draw is
    below ``p``.
    """
    if not 1 <= n <= 62:
        raise ValueError("n must be in 1..62")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for _ in range(count):
        for _attempt in range(max_attempts):
            rows = [0] * n
            for i, j in pairs:
                if rng.random() < p:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            g = Graph(n, tuple(rows))
            if is_connected(g):
                yield g
                break
        else:
            raise CannotSatisfyError(f"no connected sample in {max_attempts} attempts (n={n}, p={p})")


def enumerate_small_graphs(n: int, connected_only: bool = True) -> list[Graph]:
    """All graphs on ``n <= 5`` vertices up to isomorphism, by brute force.

    Every edge mask is reduced to the least code over all vertex
    permutations; one graph per code, sorted by code.
    """
    if not 1 <= n <= 5:
        raise ValueError("the built-in enumerator covers 1..5 vertices")
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    where = {p: b for b, p in enumerate(pairs)}
    perm_maps = []
    for perm in itertools.permutations(range(n)):
        perm_maps.append([where[tuple(sorted((perm[i], perm[j])))] for i, j in pairs])
    seen: dict[int, Graph] = {}
    for mask in range(1 << len(pairs)):
        code = min(sum(1 << pm[b] for b in range(len(pairs)) if mask >> b & 1) for pm in perm_maps)
        if code in seen:
            continue
        rows = [0] * n
        for b, (i, j) in enumerate(pairs):
            if code >> b & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        seen[code] = Graph(n, tuple(rows))
    graphs = [seen[c] for c in sorted(seen)]
    return [g for g in graphs if is_connected(g)] if connected_only else graphs


# -- bound specifications ----------------------------------------------------------

@dataclass(frozen=True)
class TheoremSpec:
    id: str
    params: dict
    family: tuple[Pattern, ...]
    bound: int
    diameter: int | None = None
    strategy: Callable[[], Strategy] | None = None
    note: str = ""

    @property
    def label(self) -> str:
        if not self.params:
            return self.id
        return f"{self.id}({','.join(str(v) for v in self.params.values())})"

    def matches(self, g: Graph) -> bool:
        if self.diameter is not None and diameter(g) != self.diameter:
            return False
        return is_family_free(g, self.family)


SPEC_IDS = ("T1", "T2", "T3", "C1", "T4", "T5", "L1", "PR1", "PR2", "CONJ1", "CONJ2")

_H_READING = "H1(l)/H2(l): two vertices on the first vertex of a path of l+1 vertices"


def theorem_spec(spec_id: str, k: int | None = None, l: int | None = None,
                 forest: Iterable[int] | None = None) -> TheoremSpec:
    """Build the named specification; parameters are validated here."""
    sid = spec_id.upper()

    def need(name, value, lo):
        if value is None:
            raise ValueError(f"{sid} needs --{name}")
        if value < lo:
            raise ValueError(f"{sid} needs {name} >= {lo}")
        return value

    path = lambda m: make_pattern("path", [m])  # noqa: E731
    if sid == "T1":
        k = need("k", k, 3)
        return TheoremSpec(sid, {"k": k}, (path(k),), k - 2, strategy=lambda: PathPush(k))
    if sid == "T2":
        l = need("l", l, 1)
        fam = (make_pattern("h1", [l]), make_pattern("h2", [l]))
        return TheoremSpec(sid, {"l": l}, fam, l + 1, strategy=lambda: CycleTrap(l), note=_H_READING)
    if sid == "T3":
        k = need("k", k, 5)
        return TheoremSpec(sid, {"k": k}, (path(k), make_pattern("claw")), k - 3,
                           strategy=lambda: ClawCycle(k))
    if sid == "C1":
        k = need("k", k, 5)
        l = need("l", l, 3)
        if l > k:
            raise ValueError("C1 needs 3 <= l <= k")
        return TheoremSpec(sid, {"k": k, "l": l}, (path(k), make_pattern("cycle", [l])), k - 3)
    if sid == "T4":
        if forest is None:
            raise ValueError("T4 needs --forest")
        sizes = list(forest)
        if len(sizes) < 2 or min(sizes) < 1 or max(sizes) < 3:
            raise ValueError("T4 needs at least two path orders >= 1, one of them >= 3")
        return TheoremSpec(sid, {"forest": "+".join(map(str, sizes))},
                           (make_pattern("linear_forest", sizes),), sum(sizes) - 2)
    if sid == "T5":
        fam = (make_pattern("linear_forest", [2, 2]), make_pattern("co_p5"))
        return TheoremSpec(sid, {}, fam, 2, strategy=HouseTwoCop, note="upper bound only")
    if sid == "L1":
        return TheoremSpec(sid, {}, (make_pattern("linear_forest", [2, 2]),), 2, diameter=3)
    if sid == "PR1":
        k = need("k", k, 3)
        return TheoremSpec(sid, {"k": k}, (make_pattern("linear_forest", [1, k]),), k - 1,
                           strategy=lambda: GuardRecurse("vertex", k))
    if sid == "PR2":
        k = need("k", k, 3)
        return TheoremSpec(sid, {"k": k}, (make_pattern("linear_forest", [2, k]),), k,
                           strategy=lambda: GuardRecurse("edge", k))
    if sid == "CONJ1":
        return TheoremSpec(sid, {}, (path(5),), 2, note="conjecture probe")
    if sid == "CONJ2":
        return TheoremSpec(sid, {}, (make_pattern("linear_forest", [2, 2]),), 2, note="conjecture probe")
    raise ValueError(f"unknown spec {spec_id!r}; choose from {', '.join(SPEC_IDS)}")


def _spec_kwargs(spec: TheoremSpec) -> dict:
    p = dict(spec.params)
    if "forest" in p:
        p["forest"] = [int(x) for x in p["forest"].split("+")]
    return p


# -- cache ---------------------------------------------------------------------------

class CopNumberCache:
    """graph6 -> cop number, optionally backed by an append-only file.

    File lines are ``graph6<TAB>copnumber``.  With ``audit_rate > 0`` a
    seeded random fraction of hits is recomputed; a mismatch is logged and
    the fresh value is served.
    """

    def __init__(self, path: str | Path | None = None, audit_rate: float = 0.0, seed: int = 0):
        self.path = Path(path) if path is not None else None
        self.audit_rate = audit_rate
        self._rng = random.Random(seed)
        self._values: dict[str, int] = {}
        self.hits = 0
        self.audits = 0
        self.mismatches: list[tuple[str, int, int]] = []
        if self.path is not None and self.path.exists():
            self._replay()

    def _replay(self) -> None:
        with open(self.path) as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                parts = line.rstrip("\n").split("\t")
                try:
                    key, value = parts
                    parse_graph6(key)
                    c = int(value)
                    if c < 1:
                        raise ValueError(value)
                except (ValueError, CopRobberError):
                    log.warning("cache %s line %d is corrupt; skipped", self.path, lineno)
                    continue
                self._values[key] = c

    def __len__(self):
        return len(self._values)

    def lookup(self, g: Graph) -> int | None:
        key = emit_graph6(g)
        c = self._values.get(key)
        if c is None:
            return None
        self.hits += 1
        if self.audit_rate and self._rng.random() < self.audit_rate:
            self.audits += 1
            fresh = cop_number(g)
            if fresh != c:
                log.error("cache entry %s says %d, recomputed %d", key, c, fresh)
                self.mismatches.append((key, c, fresh))
                self._values[key] = fresh
                return fresh
        return c

    def store(self, g: Graph, c: int) -> None:
        key = emit_graph6(g)
        if self._values.get(key) == c:
            return
        self._values[key] = c
        if self.path is not None:
            with open(self.path, "a") as fh:
                fh.write(f"{key}\t{c}\n")

    def cop_number(self, g: Graph) -> int:
        c = self.lookup(g)
        if c is None:
            c = cop_number(g)
            self.store(g, c)
        return c


# -- reports ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    spec: str
    params: dict
    graphs_seen: int = 0
    graphs_disconnected: int = 0
    graphs_matching: int = 0
    violations: list[tuple[str, int, int]] = field(default_factory=list)
    strategy_runs: int = 0
    strategy_divergences: list[tuple[str, str]] = field(default_factory=list)
    extremal_witnesses: list[str] = field(default_factory=list)
    bound: int = 0
    note: str = ""
    wall_time: float = 0.0

    @property
    def verified(self) -> bool:
        return not self.violations

    def canonical(self) -> VerificationReport:
        self.violations = sorted(tuple(v) for v in self.violations)
        self.strategy_divergences = sorted(tuple(d) for d in self.strategy_divergences)
        self.extremal_witnesses = sorted(self.extremal_witnesses)
        return self

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verified"] = self.verified
        return d

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        d = dict(d)
        d.pop("verified", None)
        d["violations"] = [tuple(v) for v in d["violations"]]
        d["strategy_divergences"] = [tuple(v) for v in d["strategy_divergences"]]
        return cls(**d)


CSV_COLUMNS = ["spec", "params", "graphs_seen", "matching", "violations", "divergences", "wall_ms"]


def emit_report(r: VerificationReport, fmt: str = "csv") -> str:
    """Serialise a report.

    CSV: the summary header, then (for a report that saw graphs) its summary
    row, then if there are violations a blank line, a ``graph6,cop_number,bound``
    header and one row per violation.  JSON mirrors every field.
    """
    if fmt == "json":
        return json.dumps(r.to_dict(), sort_keys=True, indent=2)
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    if r.graphs_seen:
        params = ";".join(f"{k}={v}" for k, v in r.params.items())
        w.writerow([r.spec, params, r.graphs_seen, r.graphs_matching, len(r.violations),
                    len(r.strategy_divergences), round(r.wall_time * 1000)])
    if r.violations:
        w.writerow([])
        w.writerow(["graph6", "cop_number", "bound"])
        for row in r.violations:
            w.writerow(row)
    return buf.getvalue()


def report_from_json(text: str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(text))


# -- verification --------------------------------------------------------------------------

def _strategy_check(spec: TheoremSpec, g: Graph) -> str | None:
    """Play the linked strategy against the optimal robber; a reason string on divergence."""
    strat = spec.strategy()
    try:
        k = strat.required_cops(g)
        table = solve(g, k)
        result = run_match(g, strat, OptimalRobber(table))
    except AssertionError as e:
        return f"invariant: {e}"
    except (CopRobberError, ValueError) as e:
        return f"{type(e).__name__}: {e}"
    if not result.captured:
        return f"not captured within {len(result.transcript) // 2} rounds"
    return None


def _evaluate(g: Graph, spec: TheoremSpec, known: int | None, with_strategy: bool):
    if not spec.matches(g):
        return False, None, None
    c = known if known is not None else cop_number(g)
    divergence = None
    if with_strategy and spec.strategy is not None and c <= spec.bound:
        divergence = _strategy_check(spec, g)
    return True, c, divergence


def _worker(args):
    g6, spec_id, kwargs, known, with_strategy = args
    spec = theorem_spec(spec_id, **kwargs)
    return _evaluate(parse_graph6(g6), spec, known, with_strategy)


def _graphs(stream) -> Iterator[Graph]:
    for item in stream:
        yield item[1] if isinstance(item, tuple) else item


def verify_theorem(spec: TheoremSpec, graphs: Iterable, cache: CopNumberCache | None = None,
                   with_strategy: bool = False, jobs: int = 1) -> VerificationReport:
    """Check ``cop_number <= bound`` on every connected graph meeting the precondition.

    ``graphs`` may yield graphs or ``(line, graph)`` pairs.  Disconnected
    inputs are counted in ``graphs_disconnected`` and skipped.
    """
    start = time.perf_counter()
    report = VerificationReport(spec.id, dict(spec.params), bound=spec.bound, note=spec.note)
    cache = cache if cache is not None else CopNumberCache()

    def fold(g: Graph, outcome) -> None:
        matched, c, divergence = outcome
        if not matched:
            return
        report.graphs_matching += 1
        cache.store(g, c)
        key = emit_graph6(g)
        if c > spec.bound:
            report.violations.append((key, c, spec.bound))
        elif c == spec.bound:
            report.extremal_witnesses.append(key)
        if with_strategy and spec.strategy is not None and c <= spec.bound:
            report.strategy_runs += 1
            if divergence is not None:
                report.strategy_divergences.append((key, divergence))

    work = []
    for g in _graphs(graphs):
        report.graphs_seen += 1
        if not is_connected(g):
            report.graphs_disconnected += 1
            continue
        if jobs <= 1:
            fold(g, _evaluate(g, spec, cache.lookup(g), with_strategy))
        else:
            work.append(g)
    if work:
        kwargs = _spec_kwargs(spec)
        args = [(emit_graph6(g), spec.id, kwargs, cache.lookup(g), with_strategy) for g in work]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for g, outcome in zip(work, pool.map(_worker, args, chunksize=64)):
                fold(g, outcome)
    report.wall_time = time.perf_counter() - start
    if report.violations:
        log.warning("%s: %d violation(s) found", spec.label, len(report.violations))
    return report.canonical()
