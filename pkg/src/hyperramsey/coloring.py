"""Weak proper vertex colourings: chi_w(H), t(H) and closed forms for K_n^(r)."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Iterator

from .hypergraph import Hypergraph, HypergraphError, binom

DEFAULT_CAP = 12


class ColoringCapExceeded(HypergraphError):
    pass


@dataclass(frozen=True)
class WeakColoring:
    """Vertex colouring in which no hyperedge is monochromatic."""

    assignment: tuple[int, ...]
    color_count: int

    def class_sizes(self) -> list[int]:
        sizes = [0] * self.color_count
        for c in self.assignment:
            sizes[c] += 1
        return sizes

    def is_valid_for(self, h: Hypergraph) -> bool:
        if len(self.assignment) != h.order:
            return False
        if set(self.assignment) != set(range(self.color_count)):
            return False
        return all(len({self.assignment[v] for v in e}) > 1 for e in h.edges)


def chi_w_complete(n: int, r: int) -> int:
    if n < 1 or r < 2:
        raise HypergraphError("need n >= 1 and r >= 2")
    return ceil(n / (r - 1))


def t_complete(n: int, r: int) -> int:
    """Smallest colour class of an optimal weak colouring of K_n^(r)."""
    if n < 1 or r < 2:
        raise HypergraphError("need n >= 1 and r >= 2")
    k = n % (r - 1)
    return k if k else r - 1


def _is_complete(h: Hypergraph) -> bool:
    return h.order >= 1 and len(h.edges) == binom(h.order, h.r)


def _complete_witness(n: int, r: int) -> WeakColoring:
    # blocks of r-1 consecutive vertices; the leftover block (size t) comes last
    return WeakColoring(tuple(v // (r - 1) for v in range(n)), chi_w_complete(n, r))


def _weak_colorings(h: Hypergraph, k: int) -> Iterator[tuple[int, ...]]:
    """All weak colourings with exactly k colours, colours numbered by first use.

    Yielded in lexicographic order of the assignment tuple.
    """
    n = h.order
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in h.edges:
        closing[max(e)].append(e)
    colour = [0] * n

    def rec(v: int, used: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            if used == k:
                yield tuple(colour)
            return
        if k - used > n - v:
            return
        for c in range(min(used + 1, k)):
            colour[v] = c
            if all(any(colour[u] != c for u in e if u != v) for e in closing[v]):
                yield from rec(v + 1, max(used, c + 1))

    yield from rec(0, 0)


def weak_chromatic_number(
    h: Hypergraph, cap: int = DEFAULT_CAP, shortcut: bool = True
) -> tuple[int, WeakColoring]:
    """chi_w(h) together with the lexicographically least optimal colouring.

    Complete hypergraphs go to the closed form unless ``shortcut`` is off;
    everything else is searched exhaustively and must respect ``cap``.
    """
    if h.order < 1:
        raise HypergraphError("weak colourings need at least one vertex")
    if shortcut and _is_complete(h):
        w = _complete_witness(h.order, h.r)
        return w.color_count, w
    if h.order > cap:
        raise ColoringCapExceeded(f"order {h.order} exceeds cap {cap}")
    for k in range(1, h.order + 1):
        for assignment in _weak_colorings(h, k):
            return k, WeakColoring(assignment, k)
    raise AssertionError("the all-distinct colouring is always weak")


def min_color_class(h: Hypergraph, cap: int = DEFAULT_CAP, shortcut: bool = True) -> int:
    """t(h): minimum class size over every weak colouring with chi_w(h) colours."""
    if shortcut and _is_complete(h):
        return t_complete(h.order, h.r)
    chi, _ = weak_chromatic_number(h, cap, shortcut=False)
    best = h.order
    for assignment in _weak_colorings(h, chi):
        sizes = [0] * chi
        for c in assignment:
            sizes[c] += 1
        best = min(best, min(sizes))
        if best == 1:
            break
    return best
