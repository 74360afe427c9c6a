"""Explicit red/blue colourings of K_p^(r) and their verification."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .cliques import build_link, find_clique
from .hypergraph import (
    Edge,
    Hypergraph,
    HypergraphError,
    binom,
    colex_edges,
    colex_index,
    components,
    contains_sub,
    is_connected,
)

RED = 0
BLUE = 1


class WitnessError(HypergraphError):
    pass


@dataclass(frozen=True)
class TwoColoring:
    """Total red/blue colouring of K_p^(r); ``colors[i]`` colours the edge of colex rank i."""

    order: int
    r: int
    colors: bytes

    def __post_init__(self) -> None:
        if len(self.colors) != binom(self.order, self.r):
            raise WitnessError(
                f"colouring of K_{self.order}^({self.r}) needs {binom(self.order, self.r)} entries, "
                f"got {len(self.colors)}"
            )
        if any(c not in (RED, BLUE) for c in self.colors):
            raise WitnessError("colour entries must be 0 (red) or 1 (blue)")

    @classmethod
    def from_red(cls, order: int, r: int, red: set[Edge] | list[Edge]) -> TwoColoring:
        red_set = {tuple(sorted(e)) for e in red}
        index = colex_index(order, r)
        unknown = red_set - index.keys()
        if unknown:
            raise WitnessError(f"red edges outside K_{order}^({r}): {sorted(unknown)[:3]}")
        return cls(order, r, bytes(RED if e in red_set else BLUE for e in colex_edges(order, r)))

    def color(self, edge: Edge) -> int:
        return self.colors[colex_index(self.order, self.r)[tuple(sorted(edge))]]

    def edges_of(self, colour: int) -> list[Edge]:
        return [e for e, c in zip(colex_edges(self.order, self.r), self.colors) if c == colour]

    def red_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.order, self.r, tuple(self.edges_of(RED)))

    def blue_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.order, self.r, tuple(self.edges_of(BLUE)))

    def swapped(self) -> TwoColoring:
        return TwoColoring(self.order, self.r, bytes(1 - c for c in self.colors))

    def to_dict(self) -> dict:
        return {"order": self.order, "r": self.r, "red": [list(e) for e in sorted(self.edges_of(RED))]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> TwoColoring:
        try:
            return cls.from_red(int(data["order"]), int(data["r"]), [tuple(e) for e in data["red"]])
        except KeyError as exc:
            raise WitnessError(f"colouring JSON missing field {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> TwoColoring:
        return cls.from_dict(json.loads(text))


def uniform_coloring(order: int, r: int, colour: int) -> TwoColoring:
    return TwoColoring(order, r, bytes([colour]) * binom(order, r))


def block_coloring(order: int, r: int, blocks: list[range], inside: int) -> TwoColoring:
    """Edges inside one block get ``inside``; every other edge gets the other colour."""
    block_of = [-1] * order
    for i, b in enumerate(blocks):
        for v in b:
            block_of[v] = i
    out = bytearray()
    for e in colex_edges(order, r):
        same = block_of[e[0]] >= 0 and all(block_of[v] == block_of[e[0]] for v in e)
        out.append(inside if same else 1 - inside)
    return TwoColoring(order, r, bytes(out))


def burr_witness(chi_w: int, t: int, c: int, r: int) -> TwoColoring:
    """(chi_w - 1) blue cliques of order c - 1 and one of order t - 1, every other edge red.

    Blocks occupy consecutive vertex ranges with the (t - 1)-block last.
    """
    if chi_w < 1 or t < 1 or c < 1:
        raise WitnessError("chi_w, t and c must all be positive")
    sizes = [c - 1] * (chi_w - 1) + [t - 1]
    blocks, start = [], 0
    for s in sizes:
        blocks.append(range(start, start + s))
        start += s
    return block_coloring(start, r, blocks, BLUE)


def extend_red_clique(base: TwoColoring, m: int, r: int | None = None) -> TwoColoring:
    """Append a red K_{m-1}^(r) on new vertices; edges mixing old and new vertices are blue."""
    r = base.r if r is None else r
    if r != base.r:
        raise WitnessError("uniformity mismatch with base colouring")
    if m < 1:
        raise WitnessError("m must be positive")
    p = base.order
    order = p + m - 1
    out = bytearray()
    old = colex_index(p, r)
    for e in colex_edges(order, r):
        if e[-1] < p:
            out.append(base.colors[old[e]])
        elif e[0] >= p:
            out.append(RED)
        else:
            out.append(BLUE)
    return TwoColoring(order, r, bytes(out))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def cubic_residue_red_edges(j: int) -> list[Edge]:
    p = 3 * j + 1
    if not is_prime(p):
        raise WitnessError(f"3j+1 = {p} is not prime")
    red = [tuple(sorted((0, x, p - x))) for x in range(1, (p - 1) // 2 + 1)]
    fibres: dict[int, list[int]] = {}
    for x in range(1, p):
        fibres.setdefault(x * x % p * x % p, []).append(x)
    red.extend(tuple(f) for _, f in sorted(fibres.items()))
    return red


def cubic_residue_witness(j: int) -> TwoColoring:
    """Colouring of K_{3j+1}^(3) over Z/(3j+1).

    Red: triples {0, x, -x} and the fibres {x : x^3 = c} of the cubing map;
    everything else blue.
    """
    return TwoColoring.from_red(3 * j + 1, 3, cubic_residue_red_edges(j))


# --- verification -------------------------------------------------------------


@dataclass(frozen=True)
class WitnessVerdict:
    """``kind`` is 'clean', 'red' or 'blue'; ``found`` maps pattern vertices to host vertices."""

    kind: str
    found: dict[int, int] | None = None

    @property
    def clean(self) -> bool:
        return self.kind == "clean"


def _is_complete(h: Hypergraph) -> bool:
    return len(h.edges) == binom(h.order, h.r)


def find_monochromatic_clique(c: TwoColoring, colour: int, size: int) -> tuple[int, ...] | None:
    link = build_link(c.edges_of(colour))
    return find_clique(link, c.order, c.r, size)


def find_pattern(c: TwoColoring, colour: int, pattern: Hypergraph, shortcut: bool = True) -> dict[int, int] | None:
    """Embedding of ``pattern`` into the subhypergraph of one colour."""
    if pattern.r != c.r:
        raise WitnessError(f"uniformity mismatch: colouring r={c.r}, pattern r={pattern.r}")
    if pattern.order > c.order:
        return None
    if _is_complete(pattern):
        clique = find_monochromatic_clique(c, colour, pattern.order)
        return None if clique is None else dict(enumerate(clique))
    host = Hypergraph(c.order, c.r, tuple(c.edges_of(colour)))
    if shortcut and is_connected(pattern) and components(host).largest < pattern.order:
        return None
    return contains_sub(host, pattern)


def verify_witness(
    c: TwoColoring,
    red_pattern: Hypergraph,
    blue_n: int | None = None,
    blue_pattern: Hypergraph | None = None,
    shortcut: bool = True,
) -> WitnessVerdict:
    """Check that ``c`` has no red ``red_pattern`` and no blue K_{blue_n} (or blue ``blue_pattern``)."""
    if (blue_n is None) == (blue_pattern is None):
        raise WitnessError("give exactly one of blue_n and blue_pattern")
    if blue_pattern is None:
        blue_pattern = Hypergraph(blue_n, c.r, tuple(combinations(range(blue_n), c.r))) if blue_n else None
    if red_pattern.r != c.r or (blue_pattern is not None and blue_pattern.r != c.r):
        raise WitnessError("uniformity mismatch between colouring and patterns")
    found = find_pattern(c, RED, red_pattern, shortcut)
    if found is not None:
        return WitnessVerdict("red", found)
    if blue_pattern is None:
        # K_0 sits in every colouring
        return WitnessVerdict("blue", {})
    found = find_pattern(c, BLUE, blue_pattern, shortcut)
    if found is not None:
        return WitnessVerdict("blue", found)
    return WitnessVerdict("clean")
