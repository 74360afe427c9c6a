"""Exact arrowing K_p^(r) -> (H, K_n^(r)) by pruned backtracking over edge colourings."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb

from .cliques import add_to_link, find_clique, remove_from_link
from .coloring import chi_w_complete, t_complete
from .hypergraph import (
    Edge,
    EmbeddingPlan,
    Hypergraph,
    HypergraphError,
    colex_edges,
    colex_index,
    components,
    search_embedding,
)
from .witness import BLUE, RED, TwoColoring, burr_witness, verify_witness

DEFAULT_BUDGET = 10**8
DEFAULT_SYMMETRY_LEVELS = 6

ARROWS = "arrows"
COUNTEREXAMPLE = "counterexample"
EXHAUSTED = "budget-exhausted"


def default_budget() -> int:
    env = os.environ.get("RAMSEY_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class SearchConfig:
    node_budget: int = field(default_factory=default_budget)
    symmetry: bool = False
    edge_order: str = "colex"
    symmetry_levels: int = DEFAULT_SYMMETRY_LEVELS

    def __post_init__(self) -> None:
        if self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.edge_order not in ("colex", "degree-guided"):
            raise ValueError(f"unknown edge order {self.edge_order!r}")


@dataclass(frozen=True)
class ArrowingResult:
    verdict: str
    nodes: int
    coloring: TwoColoring | None = None

    @property
    def arrows(self) -> bool:
        return self.verdict == ARROWS


class _BudgetExhausted(Exception):
    pass


def _edge_order(p: int, r: int, how: str) -> list[Edge]:
    """Edges grouped by largest vertex, so the first C(k, r) edges span exactly K_k.

    'colex' keeps colex order inside a group; 'degree-guided' puts edges that
    touch the most recently added vertices first within the group.
    """
    edges = list(colex_edges(p, r))
    if how == "colex":
        return edges
    return sorted(edges, key=lambda e: (e[-1], tuple(-v for v in reversed(e))))


class _Search:
    def __init__(self, p: int, pattern: Hypergraph, n: int, cfg: SearchConfig) -> None:
        self.p, self.r, self.n = p, pattern.r, n
        self.pattern = pattern
        self.cfg = cfg
        self.edges = _edge_order(p, self.r, cfg.edge_order)
        self.pos = {e: i for i, e in enumerate(self.edges)}
        self.state = [-1] * len(self.edges)
        self.nodes = 0
        self.red_deg = [0] * p
        self.pair = [[0] * p for _ in range(p)]
        self.red_nbr = [0] * p
        self.blue_link: dict[tuple[int, ...], int] = {}
        self.plans = [EmbeddingPlan.build(pattern, start=f) for f in pattern.edges]
        self.pattern_deg = pattern.degrees()
        self.sym_checks = self._symmetry_tables() if cfg.symmetry else {}

    # -- colour bookkeeping

    def has_red(self, e: Edge) -> bool:
        return self.state[self.pos[e]] == RED

    def _set_red(self, e: Edge, on: bool) -> None:
        step = 1 if on else -1
        for v in e:
            self.red_deg[v] += step
        for a, b in combinations(e, 2):
            self.pair[a][b] += step
            self.pair[b][a] += step
            if on and self.pair[a][b] == 1:
                self.red_nbr[a] |= 1 << b
                self.red_nbr[b] |= 1 << a
            elif not on and self.pair[a][b] == 0:
                self.red_nbr[a] &= ~(1 << b)
                self.red_nbr[b] &= ~(1 << a)

    # -- incremental pattern tests

    def red_pattern_through(self, e: Edge) -> dict[int, int] | None:
        for f, plan in zip(self.pattern.edges, self.plans):
            for img in permutations(e):
                if any(self.red_deg[x] < self.pattern_deg[u] for u, x in zip(f, img)):
                    continue
                phi = search_embedding(
                    plan, self.p, self.has_red, self.red_deg, self.red_nbr, dict(zip(f, img))
                )
                if phi is not None:
                    return phi
        return None

    def blue_clique_through(self, e: Edge) -> tuple[int, ...] | None:
        return find_clique(self.blue_link, self.p, self.r, self.n, seed=e)

    # -- symmetry breaking

    def _symmetry_tables(self) -> dict[int, list[list[int]]]:
        """For each level k, the position maps of every non-identity permutation of K_k."""
        tables: dict[int, list[list[int]]] = {}
        for k in range(self.r + 1, min(self.p, self.cfg.symmetry_levels) + 1):
            size = comb(k, self.r)
            prefix = self.edges[:size]
            maps = []
            for sigma in permutations(range(k)):
                if list(sigma) == list(range(k)):
                    continue
                maps.append([size - 1 - self.pos[tuple(sorted(sigma[v] for v in e))] for e in prefix])
            tables[size] = maps
        return tables

    def _is_lex_leader(self, depth: int) -> bool:
        maps = self.sym_checks[depth]
        bits = self.state[:depth]
        mine = 0
        for c in bits:
            mine = (mine << 1) | c
        for pm in maps:
            img = 0
            for i, c in enumerate(bits):
                if c:
                    img |= 1 << pm[i]
            if img < mine:
                return False
        return True

    # -- driver

    def run(self) -> ArrowingResult:
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, len(self.edges) + 1000))
        try:
            found = self._dfs(0)
        except _BudgetExhausted:
            return ArrowingResult(EXHAUSTED, self.nodes)
        finally:
            sys.setrecursionlimit(limit)
        if not found:
            return ArrowingResult(ARROWS, self.nodes)
        colors = bytearray(len(self.edges))
        rank = colex_index(self.p, self.r)
        for e, c in zip(self.edges, self.state):
            colors[rank[e]] = c
        return ArrowingResult(COUNTEREXAMPLE, self.nodes, TwoColoring(self.p, self.r, bytes(colors)))

    def _dfs(self, depth: int) -> bool:
        self.nodes += 1
        if self.nodes > self.cfg.node_budget:
            raise _BudgetExhausted
        if depth in self.sym_checks and not self._is_lex_leader(depth):
            return False
        if depth == len(self.edges):
            return True
        e = self.edges[depth]
        self.state[depth] = RED
        self._set_red(e, True)
        if self.red_pattern_through(e) is None and self._dfs(depth + 1):
            return True
        self._set_red(e, False)
        self.state[depth] = BLUE
        add_to_link(self.blue_link, e)
        if self.blue_clique_through(e) is None and self._dfs(depth + 1):
            return True
        remove_from_link(self.blue_link, e)
        self.state[depth] = -1
        return False


def arrows(p: int, red_pattern: Hypergraph, blue_n: int, cfg: SearchConfig | None = None) -> ArrowingResult:
    """Decide whether every red/blue colouring of K_p^(r) has a red ``red_pattern`` or a blue K_{blue_n}.

    A counterexample, when found, is the first clean colouring in search order.
    """
    cfg = cfg or SearchConfig()
    r = red_pattern.r
    if p < 0 or p > 64:
        raise HypergraphError(f"host order {p} outside [0, 64]")
    if blue_n < 0:
        raise HypergraphError("blue clique size must be non-negative")
    # structures with no edges appear as soon as there is room for them
    if (not red_pattern.edges and red_pattern.order <= p) or (blue_n < r and blue_n <= p):
        return ArrowingResult(ARROWS, 0)
    return _Search(p, red_pattern, blue_n, cfg).run()


@dataclass(frozen=True)
class RamseyResult:
    """``value`` is None when the budget ran out; ``lower``/``upper`` bracket what was proven."""

    value: int | None
    witness: TwoColoring | None
    lower: int
    upper: int | None
    nodes: int
    checked: tuple[tuple[int, str], ...] = ()


def _seed_lower(pattern: Hypergraph, n: int) -> tuple[int, TwoColoring | None]:
    """Generic lower bound and, when available, a colouring certifying it."""
    r = pattern.r
    m = pattern.order
    if not pattern.edges or n < r:
        return 1, None
    chi, t = chi_w_complete(n, r), t_complete(n, r)
    c = components(pattern).largest
    lower = max(n, m)
    seed = None
    if c >= t:
        burr = (chi - 1) * (c - 1) + t
        if burr >= lower:
            lower = burr
            seed = burr_witness(chi, t, c, r).swapped()
    return lower, seed


def ramsey_number(
    red_pattern: Hypergraph,
    blue_n: int,
    cfg: SearchConfig | None = None,
    start: int | None = None,
) -> RamseyResult:
    """Least p with K_p -> (red_pattern, K_blue_n), plus a clean colouring of K_{p-1}.

    The scan starts at the generic lower bound (or ``start``); the witness
    below it comes from the block construction when that verifies clean.
    """
    cfg = cfg or SearchConfig()
    lower, seed = _seed_lower(red_pattern, blue_n)
    if start is not None:
        lower, seed = start, None
    nodes = 0
    checked: list[tuple[int, str]] = []
    witness = None
    if lower > 1:
        if seed is not None and seed.order == lower - 1 and verify_witness(seed, red_pattern, blue_n).clean:
            witness = seed
            checked.append((lower - 1, "witness"))
        else:
            res = arrows(lower - 1, red_pattern, blue_n, cfg)
            nodes += res.nodes
            checked.append((lower - 1, res.verdict))
            if res.verdict == EXHAUSTED:
                return RamseyResult(None, None, lower, None, nodes, tuple(checked))
            if res.arrows:
                raise HypergraphError(f"start {lower} is not a lower bound: K_{lower - 1} already arrows")
            witness = res.coloring
    p = lower
    while True:
        res = arrows(p, red_pattern, blue_n, cfg)
        nodes += res.nodes
        checked.append((p, res.verdict))
        if res.verdict == EXHAUSTED:
            return RamseyResult(None, witness, p, None, nodes, tuple(checked))
        if res.arrows:
            return RamseyResult(p, witness, p, p, nodes, tuple(checked))
        witness = res.coloring
        p += 1


def max_red_matching(c: TwoColoring) -> list[Edge]:
    """A maximum set of pairwise disjoint red edges."""
    red = [sum(1 << v for v in e) for e in c.edges_of(RED)]
    edges = c.edges_of(RED)
    by_low: dict[int, list[int]] = {}
    for i, e in enumerate(edges):
        by_low.setdefault(e[0], []).append(i)
    best: list[int] = []
    chosen: list[int] = []
    r = c.r

    def rec(v: int, covered: int) -> None:
        nonlocal best
        if len(chosen) + (c.order - v) // r <= len(best):
            return
        if v >= c.order:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        for i in by_low.get(v, ()):
            if not red[i] & covered:
                chosen.append(i)
                rec(v + 1, covered | red[i])
                chosen.pop()
        rec(v + 1, covered)

    rec(0, 0)
    return [edges[i] for i in best]


def independence_check(c: TwoColoring, mode: str = "red-matching") -> int:
    """Size of a maximum red matching."""
    if mode != "red-matching":
        raise ValueError(f"unsupported mode {mode!r}")
    return len(max_red_matching(c))
