"""Clique search in r-uniform hypergraphs given by (r-1)-set link masks.

A vertex set S is a clique when every r-subset of S is an edge. The link of an
(r-1)-set A is the bitmask of vertices w with A + {w} an edge.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

Link = dict[tuple[int, ...], int]


def build_link(edges: Iterable[Sequence[int]]) -> Link:
    link: Link = {}
    for e in edges:
        for i, v in enumerate(e):
            key = tuple(e[:i]) + tuple(e[i + 1:])
            link[key] = link.get(key, 0) | (1 << v)
    return link


def add_to_link(link: Link, e: Sequence[int]) -> None:
    for i, v in enumerate(e):
        key = tuple(e[:i]) + tuple(e[i + 1:])
        link[key] = link.get(key, 0) | (1 << v)


def remove_from_link(link: Link, e: Sequence[int]) -> None:
    for i, v in enumerate(e):
        key = tuple(e[:i]) + tuple(e[i + 1:])
        link[key] &= ~(1 << v)


def _candidates(link: Link, order: int, r: int, seed: Sequence[int]) -> int:
    mask = (1 << order) - 1
    for v in seed:
        mask &= ~(1 << v)
    for a in combinations(sorted(seed), r - 1):
        mask &= link.get(a, 0)
    return mask


def _narrow(link: Link, r: int, chosen: list[int], v: int, cand: int) -> int:
    for a in combinations(chosen, r - 2):
        cand &= link.get(tuple(sorted(a + (v,))), 0)
    return cand


def find_clique(
    link: Link, order: int, r: int, size: int, seed: Sequence[int] = ()
) -> tuple[int, ...] | None:
    """First clique of ``size`` vertices containing ``seed`` (assumed a clique).

    Vertices are added in increasing order, so the result is the
    lexicographically least such clique.
    """
    chosen = sorted(seed)
    if len(chosen) >= size:
        return tuple(chosen[:size]) if len(chosen) == size else None

    def rec(cand: int) -> bool:
        if len(chosen) == size:
            return True
        if len(chosen) + cand.bit_count() < size:
            return False
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            nxt = _narrow(link, r, chosen, v, cand)
            chosen.append(v)
            if rec(nxt):
                return True
            chosen.pop()
            if len(chosen) + cand.bit_count() < size:
                return False
        return False

    if rec(_candidates(link, order, r, chosen)):
        return tuple(sorted(chosen))
    return None


def max_clique(link: Link, order: int, r: int, seed: Sequence[int] = ()) -> tuple[int, ...]:
    """A maximum clique containing ``seed``, by branch and bound on the candidate count."""
    chosen = sorted(seed)
    best = list(chosen)

    def rec(cand: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        while cand:
            if len(chosen) + cand.bit_count() <= len(best):
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            nxt = _narrow(link, r, chosen, v, cand)
            chosen.append(v)
            rec(nxt)
            chosen.pop()

    rec(_candidates(link, order, r, chosen))
    return tuple(sorted(best))
