"""r-uniform hypergraphs: construction, degrees, components, embedding, isomorphism."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

MAX_ORDER = 64

Edge = tuple[int, ...]


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs or invalid queries."""


def binom(a: int, b: int) -> int:
    """Binomial coefficient with C(a, b) = 0 whenever a < b or either is negative."""
    if a < 0 or b < 0 or a < b:
        return 0
    return comb(a, b)


def colex_rank(edge: Sequence[int]) -> int:
    """Position of a sorted vertex tuple in the colexicographic order of r-subsets."""
    return sum(comb(v, i + 1) for i, v in enumerate(edge))


@lru_cache(maxsize=None)
def colex_edges(order: int, r: int) -> tuple[Edge, ...]:
    """All r-subsets of range(order) listed in colex order, so index == colex_rank."""
    if order > MAX_ORDER:
        raise HypergraphError(f"order {order} exceeds cap {MAX_ORDER}")
    return tuple(sorted(combinations(range(order), r), key=lambda e: e[::-1]))


@lru_cache(maxsize=None)
def colex_index(order: int, r: int) -> dict[Edge, int]:
    return {e: i for i, e in enumerate(colex_edges(order, r))}


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertices 0..order-1.

    Edges are stored as sorted tuples in colex order; equality is on
    (order, r, edge set).
    """

    order: int
    r: int
    edges: tuple[Edge, ...] = ()
    _edge_set: frozenset[Edge] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.r < 2:
            raise HypergraphError(f"uniformity must be >= 2, got {self.r}")
        if not 0 <= self.order <= MAX_ORDER:
            raise HypergraphError(f"order must lie in [0, {MAX_ORDER}], got {self.order}")
        normalized = set()
        for e in self.edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != self.r or len(set(t)) != self.r:
                raise HypergraphError(f"edge {tuple(e)} is not a set of {self.r} distinct vertices")
            if t[0] < 0 or t[-1] >= self.order:
                raise HypergraphError(f"edge {t} leaves vertex range [0, {self.order})")
            if t in normalized:
                raise HypergraphError(f"edge {t} listed twice")
            normalized.add(t)
        ordered = tuple(sorted(normalized, key=lambda e: e[::-1]))
        object.__setattr__(self, "edges", ordered)
        object.__setattr__(self, "_edge_set", frozenset(ordered))

    def __contains__(self, edge: Iterable[int]) -> bool:
        return tuple(sorted(edge)) in self._edge_set

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[Edge]:
        return self._edge_set

    def has_edge(self, edge: Edge) -> bool:
        """Membership test for an already sorted tuple."""
        return edge in self._edge_set

    def degrees(self) -> list[int]:
        deg = [0] * self.order
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def neighbor_masks(self) -> list[int]:
        """Bitmask of vertices sharing at least one edge with each vertex."""
        masks = [0] * self.order
        for e in self.edges:
            m = 0
            for v in e:
                m |= 1 << v
            for v in e:
                masks[v] |= m & ~(1 << v)
        return masks

    def without_edge(self, edge: Edge) -> Hypergraph:
        return Hypergraph(self.order, self.r, tuple(e for e in self.edges if e != edge))

    def relabel(self, perm: Sequence[int]) -> Hypergraph:
        """Image under the vertex map v -> perm[v]."""
        return Hypergraph(self.order, self.r, tuple(tuple(perm[v] for v in e) for e in self.edges))

    def induced(self, vertices: Iterable[int]) -> Hypergraph:
        """Induced subhypergraph, relabelled to 0..k-1 in increasing vertex order."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        keep = [tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)]
        return Hypergraph(len(vs), self.r, tuple(keep))

    def to_dict(self) -> dict:
        return {"order": self.order, "r": self.r, "edges": [list(e) for e in sorted(self.edges)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> Hypergraph:
        try:
            return cls(int(data["order"]), int(data["r"]), tuple(tuple(e) for e in data["edges"]))
        except KeyError as exc:
            raise HypergraphError(f"hypergraph JSON missing field {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> Hypergraph:
        return cls.from_dict(json.loads(text))


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    """K_n^(r): every r-subset of an n-set."""
    if n < 1:
        raise HypergraphError("complete hypergraph needs at least one vertex")
    return Hypergraph(n, r, colex_edges(n, r))


def empty_hypergraph(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, r, ())


def degree(h: Hypergraph, v: int) -> int:
    if not 0 <= v < h.order:
        raise HypergraphError(f"vertex {v} out of range [0, {h.order})")
    return sum(1 for e in h.edges if v in e)


def disjoint_union(*parts: Hypergraph) -> Hypergraph:
    if not parts:
        raise HypergraphError("disjoint_union needs at least one part")
    r = parts[0].r
    edges: list[Edge] = []
    offset = 0
    for h in parts:
        if h.r != r:
            raise HypergraphError("uniformity mismatch in disjoint union")
        edges.extend(tuple(v + offset for v in e) for e in h.edges)
        offset += h.order
    return Hypergraph(offset, r, tuple(edges))


# --- connectivity ---------------------------------------------------------


@dataclass(frozen=True)
class ComponentPartition:
    """Berge-connected components; each block is a sorted vertex tuple."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def largest(self) -> int:
        """c(H): order of the largest component (0 for the empty hypergraph)."""
        return max((len(b) for b in self.blocks), default=0)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, v: int) -> tuple[int, ...]:
        for b in self.blocks:
            if v in b:
                return b
        raise HypergraphError(f"vertex {v} not covered")


class _DisjointSets:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def components(h: Hypergraph) -> ComponentPartition:
    ds = _DisjointSets(h.order)
    for e in h.edges:
        for v in e[1:]:
            ds.union(e[0], v)
    groups: dict[int, list[int]] = {}
    for v in range(h.order):
        groups.setdefault(ds.find(v), []).append(v)
    blocks = sorted(tuple(g) for g in groups.values())
    return ComponentPartition(tuple(blocks))


def largest_component_order(h: Hypergraph) -> int:
    return components(h).largest


def is_connected(h: Hypergraph) -> bool:
    return h.order > 0 and len(components(h)) == 1


# --- subhypergraph embedding ---------------------------------------------


def _vertex_order(pattern: Hypergraph, start: Sequence[int] = ()) -> list[int]:
    """Connectivity-first ordering of non-isolated pattern vertices.

    Begins with ``start`` and then repeatedly takes the vertex sharing the most
    edges with the placed set; ties go to higher degree, then lower index.
    """
    deg = pattern.degrees()
    active = [v for v in range(pattern.order) if deg[v] > 0]
    order = list(start)
    placed = set(order)
    while len(order) < len(active):
        best = None
        best_key = None
        for v in active:
            if v in placed:
                continue
            links = sum(1 for e in pattern.edges if v in e and any(u in placed for u in e))
            key = (links, deg[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
    return order


@dataclass
class EmbeddingPlan:
    """Precomputed pattern schedule for repeated embedding queries.

    ``checks[k]`` lists the pattern edges whose last vertex (in ``order``) is
    ``order[k]``; those edges must be present in the host once position k is
    mapped.
    """

    pattern: Hypergraph
    order: list[int]
    checks: list[list[Edge]]
    anchors: list[int] = field(default_factory=list)
    pattern_degree: list[int] = field(default_factory=list)
    isolated: list[int] = field(default_factory=list)

    @classmethod
    def build(cls, pattern: Hypergraph, start: Sequence[int] = ()) -> EmbeddingPlan:
        order = _vertex_order(pattern, start)
        pos = {v: i for i, v in enumerate(order)}
        checks: list[list[Edge]] = [[] for _ in order]
        for e in pattern.edges:
            checks[max(pos[v] for v in e)].append(e)
        # an anchor is an earlier pattern vertex sharing an edge; used for neighbourhood filtering
        anchors = []
        for k, v in enumerate(order):
            prev = [u for e in pattern.edges if v in e for u in e if u in pos and pos[u] < k]
            anchors.append(order.index(min(prev, key=pos.get)) if prev else -1)
        deg = pattern.degrees()
        isolated = [v for v in range(pattern.order) if deg[v] == 0]
        return cls(pattern, order, checks, anchors, deg, isolated)


def search_embedding(
    plan: EmbeddingPlan,
    host_order: int,
    has_edge: Callable[[Edge], bool],
    host_degree: Sequence[int] | None = None,
    host_neighbors: Sequence[int] | None = None,
    fixed: dict[int, int] | None = None,
) -> dict[int, int] | None:
    """Backtracking search for an injective map of pattern vertices into the host.

    ``fixed`` pre-assigns a prefix of ``plan.order``. Candidates are tried in
    increasing host-vertex order, so the first embedding found is deterministic.
    """
    pattern = plan.pattern
    if pattern.order > host_order:
        return None
    order = plan.order
    n = len(order)
    phi: dict[int, int] = {}
    used = 0
    start = 0
    if fixed:
        for k in range(n):
            v = order[k]
            if v not in fixed:
                break
            phi[v] = fixed[v]
            used |= 1 << fixed[v]
            start = k + 1
        for k in range(start):
            for e in plan.checks[k]:
                if not has_edge(tuple(sorted(phi[u] for u in e))):
                    return None
    all_mask = (1 << host_order) - 1
    pdeg = plan.pattern_degree

    def extend(k: int, used: int) -> bool:
        if k == n:
            return True
        v = order[k]
        anchor = plan.anchors[k]
        if anchor >= 0 and host_neighbors is not None:
            cand = host_neighbors[phi[order[anchor]]] & ~used
        else:
            cand = all_mask & ~used
        need = pdeg[v]
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            if host_degree is not None and host_degree[x] < need:
                continue
            phi[v] = x
            if all(has_edge(tuple(sorted(phi[u] for u in e))) for e in plan.checks[k]):
                if extend(k + 1, used | low):
                    return True
            del phi[v]
        return False

    if not extend(start, used):
        return None
    spare = (x for x in range(host_order) if x not in set(phi.values()))
    for v in plan.isolated:
        phi[v] = next(spare)
    return dict(sorted(phi.items()))


def contains_sub(host: Hypergraph, pattern: Hypergraph) -> dict[int, int] | None:
    """Injective vertex map sending every pattern edge to a host edge, or None.

    Isolated pattern vertices go to the smallest unused host vertices.
    """
    if host.r != pattern.r:
        raise HypergraphError(f"uniformity mismatch: host r={host.r}, pattern r={pattern.r}")
    if len(pattern.edges) > len(host.edges) or pattern.order > host.order:
        return None
    plan = EmbeddingPlan.build(pattern)
    return search_embedding(plan, host.order, host.has_edge, host.degrees(), host.neighbor_masks())


def is_embedding(host: Hypergraph, pattern: Hypergraph, phi: dict[int, int]) -> bool:
    if sorted(phi) != list(range(pattern.order)) or len(set(phi.values())) != pattern.order:
        return False
    if any(not 0 <= x < host.order for x in phi.values()):
        return False
    return all(tuple(sorted(phi[v] for v in e)) in host.edge_set for e in pattern.edges)


# --- isomorphism ------------------------------------------------------------


def _refine(h: Hypergraph) -> list[int]:
    """Isomorphism-invariant vertex colouring by iterated edge-neighbourhood refinement."""
    incident: list[list[Edge]] = [[] for _ in range(h.order)]
    for e in h.edges:
        for v in e:
            incident[v].append(e)
    colour = [len(incident[v]) for v in range(h.order)]
    ncolours = len(set(colour))
    while True:
        sigs = []
        for v in range(h.order):
            around = sorted(tuple(sorted(colour[u] for u in e if u != v)) for e in incident[v])
            sigs.append((colour[v], tuple(around)))
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colour = [palette[s] for s in sigs]
        if len(palette) == ncolours:
            return colour
        ncolours = len(palette)


def _twin_classes(h: Hypergraph) -> list[int]:
    """Label vertices so that u, v share a label iff swapping them is an automorphism."""
    label = list(range(h.order))
    es = h.edge_set
    for u in range(h.order):
        if label[u] != u:
            continue
        for v in range(u + 1, h.order):
            if label[v] != v:
                continue
            swap = {u: v, v: u}
            if all(tuple(sorted(swap.get(x, x) for x in e)) in es for e in h.edges if (u in e) != (v in e)):
                label[v] = u
    return label


def _arrangements(labels: list[int]) -> Iterator[list[int]]:
    """Distinct permutations of a multiset of labels."""
    counts: dict[int, int] = {}
    for x in labels:
        counts[x] = counts.get(x, 0) + 1
    keys = sorted(counts)
    out: list[int] = []

    def rec() -> Iterator[list[int]]:
        if len(out) == len(labels):
            yield list(out)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                out.append(k)
                yield from rec()
                out.pop()
                counts[k] += 1

    yield from rec()


def canonical_form(h: Hypergraph) -> tuple[int, int, tuple[int, ...]]:
    """Minimum sorted colex-rank edge list over vertex relabellings.

    Only relabellings that respect the refined colour classes are explored, and
    vertices that are interchangeable by a transposition automorphism are
    never permuted among themselves.
    """
    colour = _refine(h)
    twins = _twin_classes(h)
    cells: dict[int, list[int]] = {}
    for v in range(h.order):
        cells.setdefault(colour[v], []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    per_cell = []
    offset = 0
    for cell in cell_list:
        members: dict[int, list[int]] = {}
        for v in cell:
            members.setdefault(twins[v], []).append(v)
        options = []
        for arr in _arrangements([twins[v] for v in cell]):
            seen: dict[int, int] = {}
            placed = []
            for t in arr:
                placed.append(members[t][seen.get(t, 0)])
                seen[t] = seen.get(t, 0) + 1
            options.append(placed)
        per_cell.append((offset, options))
        offset += len(cell)
    best: tuple[int, ...] | None = None
    perm = [0] * h.order
    for choice in product(*(opts for _, opts in per_cell)):
        for (base, _), placed in zip(per_cell, choice):
            for i, v in enumerate(placed):
                perm[v] = base + i
        key = tuple(sorted(colex_rank(sorted(perm[v] for v in e)) for e in h.edges))
        if best is None or key < best:
            best = key
    return (h.order, h.r, best if best is not None else ())


def is_isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    if (a.order, a.r, len(a.edges)) != (b.order, b.r, len(b.edges)):
        return False
    if sorted(a.degrees()) != sorted(b.degrees()):
        return False
    if sorted(_refine(a)) != sorted(_refine(b)):
        return False
    return canonical_form(a) == canonical_form(b)
