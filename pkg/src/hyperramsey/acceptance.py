"""End-to-end acceptance checks with per-check time limits.

Each check returns a ``CheckResult`` whose status is pass, fail or budget;
budget means a search ran out of nodes, which is reported separately from a
wrong answer.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable

from .bounds import (
    FAMILIES,
    PATH,
    PROVEN_GOOD,
    TREE,
    InconsistentBounds,
    all_records,
    best_interval,
    goodness_target,
    loh_upper,
    n_good_status,
)
from .coloring import chi_w_complete, min_color_class, t_complete, weak_chromatic_number
from .hypergraph import Hypergraph, binom, canonical_form, colex_edges, complete_hypergraph
from .search import SearchConfig, default_budget, ramsey_number
from .tables import TABLE_COLS, TABLE_ROWS, diff_cells, eval_symbolic_row, golden_text, render_table
from .trees import (
    TREE_METHODS,
    check_degree_embedding,
    degree_bound,
    enumerate_trees,
    is_tree,
    is_tree_order,
    loose_cycle_c4,
    loose_path,
)
from .witness import burr_witness, cubic_residue_witness, verify_witness

PASS = "pass"
FAIL = "fail"
BUDGET = "budget"


@dataclass
class CheckResult:
    number: int
    title: str
    status: str = PASS
    seconds: float = 0.0
    limit: float = 0.0
    details: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.status = FAIL
        self.details.append(msg)

    def line(self) -> str:
        return f"[{self.status.upper()}] criterion {self.number}: {self.title} ({self.seconds:.2f}s, limit {self.limit:.0f}s)"


@dataclass(frozen=True)
class SuiteOptions:
    golden_dir: Path | None = None
    budget: int | None = None
    host_count: int = 1000
    seed: int = 20240917


def _time_check(res: CheckResult, limit: float, body: Callable[[], None]) -> None:
    start = time.perf_counter()
    body()
    res.seconds = time.perf_counter() - start
    res.limit = limit
    if res.seconds > limit and res.status == PASS:
        res.fail(f"took {res.seconds:.2f}s, limit {limit:.0f}s")


# --- criterion 1 --------------------------------------------------------------------


def exact_instances() -> list[tuple[str, Hypergraph, int, int]]:
    out = [
        ("C4 vs K4", loose_cycle_c4(), 4, 5),
        ("T5 vs K4", loose_path(5, 3), 4, 6),
    ]
    out += [(f"P3 vs K{n}", loose_path(3, 3), n, n) for n in range(3, 7)]
    out.append(("graph P3 vs K3", loose_path(3, 2), 3, 5))
    return out


def check_exact_numbers(opts: SuiteOptions) -> CheckResult:
    res = CheckResult(1, "exact small Ramsey numbers by search")
    budget = opts.budget or default_budget()

    def body() -> None:
        for name, pattern, n, expected in exact_instances():
            start = time.perf_counter()
            out = ramsey_number(pattern, n, SearchConfig(node_budget=budget))
            took = time.perf_counter() - start
            if out.value is None:
                res.status = BUDGET if res.status == PASS else res.status
                res.details.append(f"{name}: budget exhausted after {out.nodes} nodes")
                continue
            if out.value != expected:
                res.fail(f"{name}: got {out.value}, expected {expected}")
            elif took > 60:
                res.fail(f"{name}: took {took:.1f}s")
            else:
                res.details.append(f"{name} = {out.value} ({out.nodes} nodes, {took:.2f}s)")
            if out.witness is not None and not verify_witness(out.witness, pattern, n).clean:
                res.fail(f"{name}: witness below the value is not clean")

    _time_check(res, 60 * len(exact_instances()), body)
    return res


# --- criterion 2 --------------------------------------------------------------------


def check_witnesses(opts: SuiteOptions) -> CheckResult:
    res = CheckResult(2, "block and cubic-residue witnesses verify clean")

    def one(label: str, run: Callable[[], bool]) -> None:
        start = time.perf_counter()
        ok = run()
        took = time.perf_counter() - start
        if not ok:
            res.fail(f"{label}: not clean")
        elif took > 5:
            res.fail(f"{label}: took {took:.2f}s")
        else:
            res.details.append(f"{label}: clean ({took:.3f}s)")

    def body() -> None:
        trees = [t for m in range(3, 8) if is_tree_order(m, 3) for t in enumerate_trees(m, 3)]
        for n in (4, 5):
            chi, t = chi_w_complete(n, 3), t_complete(n, 3)
            for tree in trees:
                c = tree.order
                w = burr_witness(chi, t, c, 3)
                one(f"K{n} vs tree{tree.edges} on {w.order} vertices",
                    lambda w=w, n=n, tree=tree: verify_witness(
                        w, complete_hypergraph(n, 3), blue_pattern=tree).clean)
        cubic = cubic_residue_witness(2)
        one("cubic residue j=2 (red C4, blue K5) on 7 vertices",
            lambda: verify_witness(cubic, loose_cycle_c4(), 5).clean)
        if goodness_target(4, 5, 3) != 7:
            res.fail("goodness target of C4 at n=5 is not 7")

    _time_check(res, 5 * 9, body)
    return res


# --- criterion 3 --------------------------------------------------------------------


def check_tables(opts: SuiteOptions) -> CheckResult:
    res = CheckResult(3, "tree and path grids byte-exact, symbolic rows at j = 2..7")

    def body() -> None:
        for family in (TREE, PATH):
            label = f"{family} grid"
            got = render_table(family, list(TABLE_ROWS), list(TABLE_COLS), "text")
            want = golden_text(family, opts.golden_dir)
            if got != want:
                for d in diff_cells(want, got) or ["bytes differ"]:
                    res.fail(f"{label} {d}")
            row = golden_text(family, opts.golden_dir, symbolic=True)
            for j in range(2, 8):
                m, cells = eval_symbolic_row(row, j)
                for n, (lo, hi) in zip(TABLE_COLS, cells):
                    iv = best_interval(family, m, n)
                    if lo > hi:
                        # the generic row has no meaning here; the explicit numeric row governs
                        res.details.append(f"{label} symbolic cell (j={j}, n={n}) evaluates to empty [{lo}, {hi}]; "
                                           f"numeric row gives {iv.text()}")
                        if iv.lower != lo:
                            res.fail(f"{label} symbolic (j={j}, n={n}): lower {iv.lower} != {lo}")
                        continue
                    if (iv.lower, iv.upper) != (lo, hi):
                        res.fail(f"{label} symbolic (j={j}, m={m}, n={n}): expected [{lo}, {hi}], got {iv.text()}")

    _time_check(res, 60, body)
    return res


# --- criterion 4 --------------------------------------------------------------------


def check_closed_forms(opts: SuiteOptions) -> CheckResult:
    res = CheckResult(4, "chi_w and t of K_n^(r) match exhaustive search")

    def body() -> None:
        for r in (2, 3, 4):
            for n in range(1, 9):
                k = complete_hypergraph(n, r)
                chi, wc = weak_chromatic_number(k, shortcut=False)
                t = min_color_class(k, shortcut=False)
                if not wc.is_valid_for(k):
                    res.fail(f"K_{n}^({r}): search returned an invalid colouring")
                if (chi, t) != (chi_w_complete(n, r), t_complete(n, r)):
                    res.fail(f"K_{n}^({r}): search ({chi}, {t}) vs closed form "
                             f"({chi_w_complete(n, r)}, {t_complete(n, r)})")

    _time_check(res, 30, body)
    return res


# --- criterion 5 --------------------------------------------------------------------


def small_hypergraphs(max_order: int, r: int, max_edges: int) -> list[Hypergraph]:
    """Every r-uniform hypergraph with at most ``max_edges`` edges on at most ``max_order`` vertices, up to isomorphism."""
    seen: dict[tuple, Hypergraph] = {}
    for p in range(0, max_order + 1):
        edges = colex_edges(p, r)
        for k in range(0, min(max_edges, len(edges)) + 1):
            for subset in combinations(edges, k):
                h = Hypergraph(p, r, subset)
                seen.setdefault(canonical_form(h), h)
    return [seen[key] for key in sorted(seen)]


def check_tree_definitions(opts: SuiteOptions) -> CheckResult:
    res = CheckResult(5, "four tree definitions agree on all small 3-uniform hypergraphs")

    def body() -> None:
        graphs = small_hypergraphs(7, 3, 3)
        trees = 0
        for h in graphs:
            verdicts = {m: is_tree(h, m) for m in TREE_METHODS}
            if len(set(verdicts.values())) != 1:
                res.fail(f"disagreement on {h.to_json()}: {verdicts}")
            trees += verdicts["build"]
        res.details.append(f"{len(graphs)} isomorphism classes, {trees} trees")

    _time_check(res, 120, body)
    return res


# --- criterion 6 --------------------------------------------------------------------


def random_dense_host(rng: random.Random, p: int, m: int, r: int = 3) -> Hypergraph:
    """Random subhypergraph of K_p^(r) that keeps min degree at or above the embedding bound."""
    bound = degree_bound(p, m, r)
    deg = [binom(p - 1, r - 1)] * p
    edges = list(colex_edges(p, r))
    rng.shuffle(edges)
    drop_target = rng.randint(0, len(edges))
    kept = []
    dropped = 0
    for e in edges:
        if dropped < drop_target and all(deg[v] > bound for v in e):
            for v in e:
                deg[v] -= 1
            dropped += 1
        else:
            kept.append(e)
    return Hypergraph(p, r, tuple(kept))


def check_degree_embeddings(opts: SuiteOptions) -> CheckResult:
    res = CheckResult(6, "minimum-degree hosts embed every tree of order 5 and 7")

    def body() -> None:
        rng = random.Random(opts.seed)
        for m in (5, 7):
            trees = enumerate_trees(m, 3)
            failures = 0
            for _ in range(opts.host_count):
                p = rng.randint(m, 8)
                host = random_dense_host(rng, p, m)
                if host.min_degree() < degree_bound(p, m, 3):
                    res.fail(f"generator produced a host below the bound: {host.to_json()}")
                    continue
                for t in trees:
                    rep = check_degree_embedding(host, t)
                    if not rep.guaranteed or rep.embedding is None:
                        failures += 1
                        res.fail(f"m={m}: no embedding of {t.edges} into {host.to_json()}")
            res.details.append(f"m={m}: {opts.host_count} hosts x {len(trees)} trees, {failures} failures")

    _time_check(res, 120, body)
    return res


# --- criterion 7 --------------------------------------------------------------------


def check_bound_consistency(opts: SuiteOptions) -> CheckResult:
    res = CheckResult(7, "bound consistency, divisibility goodness and goodness reduction")

    def body() -> None:
        rows = [m for m in range(5, 32) if is_tree_order(m, 3)]
        cols = list(range(4, 11))
        for family in FAMILIES:
            for m in rows:
                for n in cols:
                    try:
                        recs = all_records(family, m, n, 3)
                    except InconsistentBounds as exc:
                        res.fail(str(exc))
                        continue
                    lows = [b.value for b in recs if b.direction == "lower"]
                    ups = [b.value for b in recs if b.direction == "upper"]
                    if ups and max(lows) > min(ups):
                        res.fail(f"{family} m={m} n={n}: lower {max(lows)} > upper {min(ups)}")
                    if n - 2 >= 3 and n_good_status(family, m, n) == PROVEN_GOOD \
                            and n_good_status(family, m, n - 2) != PROVEN_GOOD:
                        res.fail(f"{family} m={m}: good at n={n} but not at n={n - 2}")
        checked = 0
        for r in (3, 4, 5):
            for m in range(r, 32):
                if not is_tree_order(m, r):
                    continue
                for n in range(r, 22):
                    if (n - 1) % (r - 1):
                        continue
                    checked += 1
                    if loh_upper(m, n, r).value != goodness_target(m, n, r):
                        res.fail(f"m={m} n={n} r={r}: upper {loh_upper(m, n, r).value} "
                                 f"!= target {goodness_target(m, n, r)}")
        res.details.append(f"divisibility equality checked on {checked} cells")

    _time_check(res, 60, body)
    return res


# --- criterion 8 --------------------------------------------------------------------


def check_large_witness(opts: SuiteOptions) -> CheckResult:
    res = CheckResult(8, "P7 vs K8: bound provenance and clean colouring of K_19")

    def body() -> None:
        iv = best_interval(PATH, 7, 8, 3)
        if (iv.lower, iv.upper) != (20, 20):
            res.fail(f"P7 vs K8 interval is {iv.text()}, expected 20")
        res.details.append(f"interval {iv.text()} from {iv.lower_src.source} / {iv.upper_src.source}")
        w = burr_witness(4, 2, 7, 3).swapped()
        if w.order != 19:
            res.fail(f"witness has {w.order} vertices, expected 19")
        verdict = verify_witness(w, loose_path(7, 3), 8)
        if not verdict.clean:
            res.fail(f"witness contains a {verdict.kind} pattern at {verdict.found}")

    _time_check(res, 600, body)
    return res


CHECKS: list[Callable[[SuiteOptions], CheckResult]] = [
    check_exact_numbers,
    check_witnesses,
    check_tables,
    check_closed_forms,
    check_tree_definitions,
    check_degree_embeddings,
    check_bound_consistency,
    check_large_witness,
]


def run_all(opts: SuiteOptions | None = None, emit: Callable[[str], None] | None = None) -> list[CheckResult]:
    opts = opts or SuiteOptions()
    out = []
    for check in CHECKS:
        res = check(opts)
        out.append(res)
        if emit:
            emit(res.line())
            for d in res.details:
                emit(f"    {d}")
    return out


def suite_exit_code(results: list[CheckResult]) -> int:
    if any(r.status == FAIL for r in results):
        return 1
    if any(r.status == BUDGET for r in results):
        return 2
    return 0
