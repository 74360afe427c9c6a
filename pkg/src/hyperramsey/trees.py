"""r-uniform trees, loose paths and the loose cycle C_4^(3)."""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import (
    Edge,
    Hypergraph,
    HypergraphError,
    binom,
    canonical_form,
    components,
    contains_sub,
    is_connected,
)

TREE_METHODS = ("build", "acyclic", "components", "unique-path")
UNIQUE_PATH_MAX_ORDER = 12


class TreeError(HypergraphError):
    pass


@dataclass(frozen=True)
class TreeCertificate:
    """Build order witnessing the one-edge-at-a-time definition.

    ``attach_vertex[i]`` is the single vertex edge ``build_order[i]`` shares
    with the union of the earlier edges (None for the first edge).
    """

    build_order: tuple[int, ...]
    attach_vertex: tuple[int | None, ...]

    def replay(self, h: Hypergraph) -> bool:
        seen: set[int] = set()
        for step, (idx, attach) in enumerate(zip(self.build_order, self.attach_vertex)):
            e = h.edges[idx]
            common = seen.intersection(e)
            if step == 0:
                if attach is not None:
                    return False
            elif common != {attach}:
                return False
            seen.update(e)
        return sorted(self.build_order) == list(range(len(h.edges))) and len(seen) == h.order


def is_tree_order(m: int, r: int) -> bool:
    return m >= r and (m - r) % (r - 1) == 0


def edge_count_for_order(m: int, r: int) -> int:
    if not is_tree_order(m, r):
        raise TreeError(f"order {m} is not r + k(r-1) for r={r}")
    return (m - 1) // (r - 1)


def loose_path(m: int, r: int) -> Hypergraph:
    """P_m^(r): edge i covers vertices i(r-1) .. i(r-1)+r-1."""
    k = edge_count_for_order(m, r)
    edges = tuple(tuple(range(i * (r - 1), i * (r - 1) + r)) for i in range(k))
    return Hypergraph(m, r, edges)


def loose_cycle_c4() -> Hypergraph:
    """Two triples sharing two vertices."""
    return Hypergraph(4, 3, ((0, 1, 2), (1, 2, 3)))


def star_tree(k: int, r: int) -> Hypergraph:
    """k edges meeting only at vertex 0."""
    edges = tuple((0,) + tuple(range(1 + i * (r - 1), 1 + (i + 1) * (r - 1))) for i in range(k))
    return Hypergraph(1 + k * (r - 1), r, edges)


# --- recognizers --------------------------------------------------------------


def tree_certificate(h: Hypergraph) -> TreeCertificate | None:
    """Greedy build from the first edge; succeeds exactly for trees."""
    if not h.edges:
        return None
    seen = set(h.edges[0])
    order = [0]
    attach: list[int | None] = [None]
    remaining = list(range(1, len(h.edges)))
    progress = True
    while remaining and progress:
        progress = False
        for idx in remaining:
            common = seen.intersection(h.edges[idx])
            if len(common) == 1:
                order.append(idx)
                attach.append(next(iter(common)))
                seen.update(h.edges[idx])
                remaining.remove(idx)
                progress = True
                break
    if remaining or len(seen) != h.order:
        return None
    return TreeCertificate(tuple(order), tuple(attach))


def _is_tree_build(h: Hypergraph) -> bool:
    return tree_certificate(h) is not None


def _is_tree_acyclic(h: Hypergraph) -> bool:
    # a Berge cycle is exactly a cycle in the vertex/edge incidence graph
    if not h.edges or not is_connected(h):
        return False
    n = h.order
    parent = list(range(n + len(h.edges)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, e in enumerate(h.edges):
        node = n + i
        for v in e:
            a, b = find(node), find(v)
            if a == b:
                return False
            parent[a] = b
    return True


def _is_tree_components(h: Hypergraph) -> bool:
    if not h.edges or not is_connected(h):
        return False
    return all(len(components(h.without_edge(e))) == h.r for e in h.edges)


def loose_paths_from(h: Hypergraph, u: int) -> dict[int, int]:
    """Count loose paths starting at ``u``, keyed by their far end vertex.

    A path e_1..e_k runs from u to w when u lies in e_1 but not e_2 and w lies
    in e_k but not e_{k-1}; for k = 1 both lie in the single edge.
    """
    counts: dict[int, int] = {}
    masks = [sum(1 << v for v in e) for e in h.edges]

    def walk(last: int, joint: int, used_vertices: int, used_edges: int) -> None:
        for w in h.edges[last]:
            if w != joint and w != u:
                counts[w] = counts.get(w, 0) + 1
        for j, e in enumerate(h.edges):
            if used_edges >> j & 1:
                continue
            shared = masks[j] & masks[last]
            if shared & (shared - 1) or not shared:
                continue
            x = shared.bit_length() - 1
            if x == joint or x == u:
                continue
            if masks[j] & used_vertices != shared:
                continue
            walk(j, x, used_vertices | masks[j], used_edges | 1 << j)

    for i, e in enumerate(h.edges):
        if u in e:
            walk(i, -1, masks[i], 1 << i)
    return counts


def _is_tree_unique_path(h: Hypergraph) -> bool:
    if h.order > UNIQUE_PATH_MAX_ORDER:
        raise TreeError(f"unique-path recognizer capped at order {UNIQUE_PATH_MAX_ORDER}")
    if not h.edges:
        return False
    for u in range(h.order):
        counts = loose_paths_from(h, u)
        if any(counts.get(w, 0) != 1 for w in range(h.order) if w != u):
            return False
    return True


_RECOGNIZERS = {
    "build": _is_tree_build,
    "acyclic": _is_tree_acyclic,
    "components": _is_tree_components,
    "unique-path": _is_tree_unique_path,
}


def is_tree(h: Hypergraph, method: str = "build") -> bool:
    """Decide whether ``h`` is an r-uniform tree using one of the four definitions.

    Edgeless hypergraphs are never trees under any method.
    """
    try:
        return _RECOGNIZERS[method](h)
    except KeyError:
        raise TreeError(f"unknown method {method!r}; choose from {TREE_METHODS}") from None


# --- structure ----------------------------------------------------------------


def free_hyperedges(t: Hypergraph) -> list[Edge]:
    """Edges with at least r-1 degree-one vertices (exactly r-1 unless t is one edge)."""
    if not is_tree(t):
        raise TreeError("free_hyperedges expects a tree")
    deg = t.degrees()
    return [e for e in t.edges if sum(deg[v] == 1 for v in e) >= t.r - 1]


def add_free_edge(h: Hypergraph, at: int) -> Hypergraph:
    """Attach a new edge at vertex ``at`` using r-1 fresh vertices."""
    fresh = tuple(range(h.order, h.order + h.r - 1))
    return Hypergraph(h.order + h.r - 1, h.r, h.edges + ((at,) + fresh,))


def remove_free_edge(t: Hypergraph, e: Edge) -> Hypergraph:
    """Drop a free edge together with its degree-one vertices, relabelling compactly."""
    deg = t.degrees()
    leaves = [v for v in e if deg[v] == 1]
    if len(leaves) < t.r - 1:
        raise TreeError(f"{e} is not a free hyperedge")
    drop = set(leaves[: t.r - 1]) if len(t.edges) > 1 else set(leaves[1:])
    keep = [v for v in range(t.order) if v not in drop]
    return t.without_edge(e).induced(keep)


def enumerate_trees(m: int, r: int) -> list[Hypergraph]:
    """All r-uniform trees of order m up to isomorphism, sorted by canonical form."""
    k = edge_count_for_order(m, r)
    level = {canonical_form(loose_path(r, r)): loose_path(r, r)}
    for _ in range(k - 1):
        nxt: dict[tuple, Hypergraph] = {}
        for key in sorted(level):
            t = level[key]
            for v in range(t.order):
                grown = add_free_edge(t, v)
                nxt.setdefault(canonical_form(grown), grown)
        level = nxt
    return [level[key] for key in sorted(level)]


@dataclass(frozen=True)
class DegreeEmbeddingReport:
    """Outcome of the minimum-degree tree embedding check.

    ``guaranteed`` is True when the host meets the degree hypothesis (and has
    at least as many vertices as the tree), in which case a missing
    embedding would contradict the minimum-degree guarantee.
    """

    min_degree: int
    bound: int
    guaranteed: bool
    embedding: dict[int, int] | None

    @property
    def counterexample(self) -> bool:
        return self.guaranteed and self.embedding is None


def degree_bound(p: int, m: int, r: int) -> int:
    return binom(p - 1, r - 1) - binom(p - m, r - 1)


def check_degree_embedding(h: Hypergraph, t: Hypergraph) -> DegreeEmbeddingReport:
    if h.r != t.r:
        raise HypergraphError(f"uniformity mismatch: host r={h.r}, tree r={t.r}")
    if not is_tree(t):
        raise TreeError("check_degree_embedding expects a tree pattern")
    delta = h.min_degree()
    bound = degree_bound(h.order, t.order, h.r)
    guaranteed = h.order >= t.order and delta >= bound
    return DegreeEmbeddingReport(delta, bound, guaranteed, contains_sub(h, t))
