"""Canonical labelling and isomorph-free enumeration of small graphs.

The canonical form is the relabelling whose upper-triangle bit string (graph6
column order) is lexicographically smallest among all labellings that list
vertices by their colour-refinement class.  Colour refinement is
isomorphism-invariant, so the result is a true canonical form; restricting the
search to class-respecting orders only shrinks the search.  Transpositions of
twin vertices are automorphisms and are pruned.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Iterator, Optional

from kdlab.errors import UnsupportedError
from kdlab.graph import Graph, complement, iter_bits, min_degree, relabel, write_graph6

MAX_ENUMERATION_ORDER = 8


def refine_colours(g: Graph) -> list[int]:
    n, adj = g.n, g.adj
    colours = [nb.bit_count() for nb in adj]
    ncol = len(set(colours))
    while True:
        sigs = [
            (colours[v], tuple(sorted(colours[u] for u in iter_bits(adj[v]))))
            for v in range(n)
        ]
        index = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [index[sig] for sig in sigs]
        if len(index) == ncol:
            return new
        colours, ncol = new, len(index)


def _twins(adj, u: int, v: int) -> bool:
    return adj[u] & ~(1 << v) == adj[v] & ~(1 << u)


def canonical_labeling(g: Graph) -> list[int]:
    """Vertex order ``p`` such that ``relabel(g, p)`` is the canonical form."""
    n, adj = g.n, g.adj
    if n == 0:
        return []
    colours = refine_colours(g)
    slots = sorted(colours)
    best: list[Optional[int]] = [None] * n
    best_perm: list[int] = []
    perm: list[int] = []

    def search(j: int, used: int) -> None:
        nonlocal best_perm
        if j == n:
            if not best_perm:
                best_perm = perm[:]
            return
        want = slots[j]
        tried: list[int] = []
        for v in range(n):
            if used >> v & 1 or colours[v] != want:
                continue
            if any(_twins(adj, u, v) for u in tried):
                continue
            tried.append(v)
            nb = adj[v]
            col = 0
            for i in range(j):
                col = (col << 1) | (nb >> perm[i] & 1)
            b = best[j]
            if b is not None and col > b:
                continue
            if b is None or col < b:
                best[j] = col
                for t in range(j + 1, n):
                    best[t] = None
                # a strictly better prefix invalidates the stored leaf
                best_perm = []
            perm.append(v)
            search(j + 1, used | (1 << v))
            perm.pop()

    search(0, 0)
    return best_perm


def canonical_form(g: Graph) -> Graph:
    return relabel(g, canonical_labeling(g))


def canonical_key(g: Graph) -> str:
    """graph6 string of the canonical form; equal keys iff isomorphic."""
    return write_graph6(canonical_form(g))


def find_isomorphism(g: Graph, h: Graph) -> Optional[dict[int, int]]:
    """Explicit vertex map ``g -> h`` preserving adjacency, or ``None``.

    The map is re-verified edge by edge before being returned.
    """
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    pg, ph = canonical_labeling(g), canonical_labeling(h)
    if relabel(g, pg) != relabel(h, ph):
        return None
    mapping = {pg[i]: ph[i] for i in range(g.n)}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v) != h.has_edge(mapping[u], mapping[v]):
                raise AssertionError("canonical labelling produced an invalid isomorphism")
    return mapping


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


# -- enumeration ------------------------------------------------------------


def _classes_by_edges(n: int, max_edges: int) -> list[list[Graph]]:
    """Isomorphism classes of graphs on ``n`` vertices grouped by edge count
    ``0..max_edges``; each level is built by adding one edge to every class of
    the previous level and deduplicating by canonical key."""
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    levels: list[list[Graph]] = [[Graph.empty(n)]]
    for _ in range(max_edges):
        seen: dict[str, Graph] = {}
        for g in levels[-1]:
            for i, j in pairs:
                if g.has_edge(i, j):
                    continue
                adj = list(g.adj)
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                h = canonical_form(Graph(n, tuple(adj)))
                seen.setdefault(write_graph6(h), h)
        levels.append([seen[key] for key in sorted(seen)])
        if not seen:
            break
    return levels


def graph_classes(n: int, min_edges: int = 0, max_edges: Optional[int] = None) -> Iterator[Graph]:
    """One canonical representative per isomorphism class with edge count in
    ``[min_edges, max_edges]``, ordered by (edge count, canonical graph6).

    Levels past half the possible edges are obtained by complementing sparse
    classes.  No order cap is applied here; the cost grows with the number of
    classes in the requested band.
    """
    total = comb(n, 2)
    hi = total if max_edges is None else min(max_edges, total)
    lo = max(min_edges, 0)
    if lo > hi:
        return
    need = max(m if m <= total // 2 else total - m for m in range(lo, hi + 1))
    levels = _classes_by_edges(n, need)
    for m in range(lo, hi + 1):
        if m <= total // 2:
            yield from levels[m]
        else:
            comps = [canonical_form(complement(g)) for g in levels[total - m]]
            comps.sort(key=write_graph6)
            yield from comps


def dense_classes(n: int, max_missing_edges: int) -> Iterator[Graph]:
    """Classes of graphs on ``n`` vertices missing at most ``max_missing_edges``
    edges.  Intended for producing graph6 corpora past the enumeration cap in
    the dense regime where the size theorems live."""
    yield from graph_classes(n, min_edges=comb(n, 2) - max_missing_edges)


def connected_graphs(n: int, min_edges: int = 0, min_deg: int = 0) -> Iterator[Graph]:
    if n > MAX_ENUMERATION_ORDER:
        raise UnsupportedError(
            f"internal enumeration stops at n={MAX_ENUMERATION_ORDER}; ingest a graph6 corpus "
            f"for n={n} instead (e.g. the output of `geng -c {n}`)"
        )
    if n < 1:
        return
    for g in graph_classes(n, min_edges=min_edges):
        if g.is_connected() and min_degree(g) >= min_deg:
            yield g


def enumerate_connected(
    n: int, min_edges: int = 0, min_deg: int = 0, sink: Optional[Callable[[Graph], object]] = None
) -> int:
    count = 0
    for g in connected_graphs(n, min_edges, min_deg):
        if sink is not None:
            sink(g)
        count += 1
    return count
