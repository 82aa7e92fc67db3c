"""k-matchings by exact dynamic programming over the edge list.

Edges are processed in (min endpoint, max endpoint) order.  The state is the
vector of per-vertex residuals: remaining capacity for ``mu_k`` and remaining
required load for exact-load search.  Once a vertex's last incident edge has
been processed its residual is fixed, which both shrinks the state space and
lets exact-load search reject prefixes early.  Weights are tried in ascending
order, so the witness returned is the lexicographically smallest weight vector
among the valid ones.

This module never consults the deficiency formula; it decides k-d-criticality
straight from the witness definition so the two can be cross-checked.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from kdlab.deficiency import CriticalityVerdict, check_kd_parameters
from kdlab.errors import BudgetExceeded, PreconditionError
from kdlab.graph import Graph

STATE_BUDGET = 1 << 26


@dataclass(frozen=True)
class KMatching:
    k: int
    n: int
    weights: Mapping[tuple[int, int], int]

    def loads(self) -> list[int]:
        out = [0] * self.n
        for (u, v), w in self.weights.items():
            out[u] += w
            out[v] += w
        return out

    @property
    def total(self) -> int:
        return sum(self.weights.values())

    def to_dict(self) -> dict:
        return {"k": self.k, "weights": [[u, v, w] for (u, v), w in sorted(self.weights.items())]}


def _check_budget(n: int, k: int) -> None:
    if (k + 1) ** n > STATE_BUDGET:
        raise BudgetExceeded(
            f"(k+1)^n = {k + 1}^{n} exceeds the DP budget of 2^26 states"
        )


def _last_use(g: Graph, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    """For each edge index, the vertices whose final incident edge it is."""
    last = {}
    for idx, (u, v) in enumerate(edges):
        last[u] = idx
        last[v] = idx
    closing: list[list[int]] = [[] for _ in edges]
    for v, idx in last.items():
        closing[idx].append(v)
    return closing


def _ensure_recursion(depth: int) -> None:
    if sys.getrecursionlimit() < depth + 100:
        sys.setrecursionlimit(depth + 100)


def mu_k(g: Graph, k: int) -> tuple[int, KMatching]:
    """Maximum total weight of a k-matching, with the lexicographically
    smallest optimal weight vector."""
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    _check_budget(g.n, k)
    edges = g.edges()
    closing = _last_use(g, edges)
    m = len(edges)
    memo: dict[tuple[int, tuple[int, ...]], int] = {}
    _ensure_recursion(m)

    def step(i: int, cap: tuple[int, ...]) -> tuple[int, ...]:
        if not closing[i]:
            return cap
        c = list(cap)
        for v in closing[i]:
            c[v] = 0
        return tuple(c)

    def best(i: int, cap: tuple[int, ...]) -> int:
        if i == m:
            return 0
        key = (i, cap)
        hit = memo.get(key)
        if hit is not None:
            return hit
        u, v = edges[i]
        top = min(cap[u], cap[v])
        c = list(cap)
        val = -1
        for w in range(top + 1):
            c[u] = cap[u] - w
            c[v] = cap[v] - w
            val = max(val, w + best(i + 1, step(i, tuple(c))))
        memo[key] = val
        return val

    start = tuple([k] * g.n)
    value = best(0, start)
    weights = {}
    cap = start
    for i, (u, v) in enumerate(edges):
        target = best(i, cap)
        for w in range(min(cap[u], cap[v]) + 1):
            c = list(cap)
            c[u] -= w
            c[v] -= w
            nxt = step(i, tuple(c))
            if w + best(i + 1, nxt) == target:
                weights[(u, v)] = w
                cap = nxt
                break
    return value, KMatching(k, g.n, weights)


def constrained_matching(g: Graph, k: int, target: Sequence[int]) -> Optional[KMatching]:
    """A k-matching whose load at every vertex equals ``target`` exactly, or ``None``."""
    if len(target) != g.n:
        raise PreconditionError("target length must equal the graph order")
    if any(not 0 <= t <= k for t in target):
        raise PreconditionError(f"targets must lie in 0..{k}")
    _check_budget(g.n, k)
    if sum(target) % 2:
        return None

    edges = g.edges()
    m = len(edges)
    # capacity still reachable at each vertex from edge index i onward
    remaining_deg = [[0] * g.n for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row = remaining_deg[i]
        row[:] = remaining_deg[i + 1]
        u, v = edges[i]
        row[u] += 1
        row[v] += 1
    if any(target[v] > k * remaining_deg[0][v] for v in range(g.n)):
        return None

    dead: set[tuple[int, tuple[int, ...]]] = set()
    chosen = [0] * m
    _ensure_recursion(m)

    def search(i: int, need: tuple[int, ...]) -> bool:
        if i == m:
            return True
        if (i, need) in dead:
            return False
        u, v = edges[i]
        ru, rv = remaining_deg[i + 1][u], remaining_deg[i + 1][v]
        lo = max(need[u] - k * ru, need[v] - k * rv, 0)
        hi = min(need[u], need[v], k)
        c = list(need)
        for w in range(lo, hi + 1):
            c[u] = need[u] - w
            c[v] = need[v] - w
            chosen[i] = w
            if search(i + 1, tuple(c)):
                return True
        dead.add((i, need))
        return False

    if not search(0, tuple(target)):
        return None
    return KMatching(k, g.n, {e: chosen[i] for i, e in enumerate(edges)})


def is_kd_critical_witness(g: Graph, k: int, d: int) -> CriticalityVerdict:
    """k-d-criticality straight from the definition: every vertex ``v`` needs a
    k-matching with load ``k - d`` at ``v`` and ``k`` everywhere else."""
    check_kd_parameters(g.n, k, d)
    for v in range(g.n):
        target = [k] * g.n
        target[v] = k - d
        if constrained_matching(g, k, target) is None:
            return CriticalityVerdict("k-d-critical", False, (v,), k, d)
    return CriticalityVerdict("k-d-critical", True, None, k, d)


def verify_matching(g: Graph, m: KMatching) -> bool:
    loads = [0] * g.n
    for (u, v), w in m.weights.items():
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            return False
        if not 0 <= w <= m.k:
            return False
        loads[u] += w
        loads[v] += w
    return all(x <= m.k for x in loads)
