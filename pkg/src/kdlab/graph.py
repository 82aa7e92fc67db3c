"""Simple undirected graphs on at most 64 vertices, stored as neighbour bitmasks.

Vertex ``v``'s neighbourhood is the integer ``adj[v]`` whose bit ``u`` is set
iff ``uv`` is an edge.  Graphs are immutable values; all construction helpers
return new graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from kdlab.errors import Graph6Error, PreconditionError

MAX_ORDER = 64


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_ORDER:
            raise PreconditionError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise PreconditionError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise PreconditionError(f"vertex {v} has a neighbour out of range")
            if nb >> v & 1:
                raise PreconditionError(f"loop at vertex {v}")
            for u in iter_bits(nb):
                if not self.adj[u] >> v & 1:
                    raise PreconditionError(f"asymmetric adjacency between {v} and {u}")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for order {n}")
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> Graph:
        return join(cls.empty(a), cls.empty(b))

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls.complete_bipartite(1, leaves)

    # -- queries ------------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, sorted by ``u`` then ``v``."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return _component_of(self.adj, 1, (1 << self.n) - 1) == (1 << self.n) - 1

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges}, graph6={write_graph6(self)!r})"


@dataclass(frozen=True)
class ComponentStats:
    component_sizes: tuple[int, ...]
    odd_nontrivial: int
    isolated: int


def _component_of(adj: Sequence[int], seed: int, alive: int) -> int:
    comp = frontier = seed
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= adj[v]
        frontier = reach & alive & ~comp
        comp |= frontier
    return comp


def odd_and_isolated(adj: Sequence[int], alive: int) -> tuple[int, int]:
    """Counts of odd components of order >= 3 and of isolated vertices in the
    subgraph induced by the vertex mask ``alive``."""
    odd = iso = 0
    rest = alive
    while rest:
        low = rest & -rest
        comp = _component_of(adj, low, alive)
        rest &= ~comp
        size = comp.bit_count()
        if size == 1:
            iso += 1
        elif size & 1:
            odd += 1
    return odd, iso


def component_sizes(g: Graph) -> list[int]:
    sizes = []
    rest = (1 << g.n) - 1
    alive = rest
    while rest:
        comp = _component_of(g.adj, rest & -rest, alive)
        rest &= ~comp
        sizes.append(comp.bit_count())
    return sizes


def component_stats(g: Graph) -> ComponentStats:
    sizes = sorted(component_sizes(g), reverse=True)
    return ComponentStats(
        component_sizes=tuple(sizes),
        odd_nontrivial=sum(1 for c in sizes if c >= 3 and c % 2 == 1),
        isolated=sum(1 for c in sizes if c == 1),
    )


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise PreconditionError("minimum degree of the null graph is undefined")
    return min(g.degrees())


# -- graph algebra ----------------------------------------------------------


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    if g1.n + g2.n > MAX_ORDER:
        raise PreconditionError(f"union order {g1.n + g2.n} exceeds {MAX_ORDER}")
    shift = g1.n
    return Graph(g1.n + g2.n, g1.adj + tuple(nb << shift for nb in g2.adj))


def join(g1: Graph, g2: Graph) -> Graph:
    if g1.n + g2.n > MAX_ORDER:
        raise PreconditionError(f"join order {g1.n + g2.n} exceeds {MAX_ORDER}")
    n1, n2 = g1.n, g2.n
    left = ((1 << n2) - 1) << n1
    right = (1 << n1) - 1
    adj = tuple(nb | left for nb in g1.adj) + tuple((nb << n1) | right for nb in g2.adj)
    return Graph(n1 + n2, adj)


def union_all(graphs: Iterable[Graph]) -> Graph:
    out = Graph.empty(0)
    for g in graphs:
        out = disjoint_union(out, g)
    return out


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~nb & ~(1 << v) for v, nb in enumerate(g.adj)))


def induced_delete(g: Graph, s: Iterable[int]) -> Graph:
    """``G - S``; survivors are relabelled in ascending original order."""
    removed = set(s)
    for v in removed:
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} out of range for order {g.n}")
    keep = [v for v in range(g.n) if v not in removed]
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        nb = 0
        for u in iter_bits(g.adj[v]):
            if u in index:
                nb |= 1 << index[u]
        adj.append(nb)
    return Graph(len(keep), tuple(adj))


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is ``g``'s vertex ``order[i]``."""
    pos = {v: i for i, v in enumerate(order)}
    adj = []
    for v in order:
        nb = 0
        for u in iter_bits(g.adj[v]):
            nb |= 1 << pos[u]
        adj.append(nb)
    return Graph(g.n, tuple(adj))


# -- graph6 -----------------------------------------------------------------

_HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> sh) & 63) + 63) for sh in (12, 6, 0))


def write_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        nb = g.adj[j]
        for i in range(j):
            bits.append(nb >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for p in range(0, len(bits), 6):
        val = 0
        for b in bits[p : p + 6]:
            val = (val << 1) | b
        body.append(chr(val + 63))
    return _encode_order(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    line = text.strip()
    base = 0
    if line.startswith(_HEADER):
        line = line[len(_HEADER) :]
        base = len(_HEADER)
    if not line:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range", base + i)

    if line[0] != "~":
        n, pos = ord(line[0]) - 63, 1
    elif len(line) >= 2 and line[1] == "~":
        raise Graph6Error(f"order exceeds {MAX_ORDER}", base + 1)
    else:
        if len(line) < 4:
            raise Graph6Error("truncated length field", base + len(line))
        n = 0
        for ch in line[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 4
        if n <= 62:
            raise Graph6Error("non-canonical long length field", base + 1)
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds {MAX_ORDER}", base)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = line[pos:]
    if len(body) != nbytes:
        off = base + pos + min(len(body), nbytes)
        raise Graph6Error(f"expected {nbytes} body bytes for order {n}, got {len(body)}", off)

    adj = [0] * n
    k = 0
    i, j = 0, 1
    for b, ch in enumerate(body):
        val = ord(ch) - 63
        for sh in range(5, -1, -1):
            bit = val >> sh & 1
            if k < nbits:
                if bit:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise Graph6Error("nonzero padding bits", base + pos + b)
            k += 1
    return Graph(n, tuple(adj))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Graphs from a corpus stream: one graph6 per line, ``>`` lines and blanks skipped."""
    for raw in lines:
        line = raw.strip()
        if not line or (line.startswith(">") and not line.startswith(_HEADER)):
            continue
        yield parse_graph6(line)
