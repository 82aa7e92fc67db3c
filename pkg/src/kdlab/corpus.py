"""Graph corpora for the verification suites: internal enumeration, graph6
files, and seeded random samples."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from kdlab.canon import MAX_ENUMERATION_ORDER, connected_graphs
from kdlab.errors import PreconditionError, UnsupportedError
from kdlab.extremal import build_Gs
from kdlab.graph import Graph, min_degree, read_graph6_lines


@dataclass(frozen=True)
class CorpusSpec:
    kind: str = "enumerate"  # "enumerate" | "file" | "random"
    path: Optional[str] = None
    count: int = 0
    seed: int = 0
    inject_extremal: bool = True
    edge_prob: float = 0.5

    @classmethod
    def from_dict(cls, data: dict) -> CorpusSpec:
        spec = cls(**data)
        if spec.kind not in ("enumerate", "file", "random"):
            raise PreconditionError(f"unknown corpus kind {spec.kind!r}")
        if spec.kind == "file" and not spec.path:
            raise PreconditionError("file corpus needs a path")
        if spec.kind == "random" and spec.count < 0:
            raise PreconditionError("random corpus count must be >= 0")
        if not 0 < spec.edge_prob <= 1:
            raise PreconditionError("edge_prob must lie in (0, 1]")
        return spec

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "file":
            out["path"] = self.path
        if self.kind == "random":
            out.update(count=self.count, seed=self.seed, inject_extremal=self.inject_extremal,
                       edge_prob=self.edge_prob)
        return out


@lru_cache(maxsize=16)
def _enumerated(n: int) -> tuple[Graph, ...]:
    return tuple(connected_graphs(n))


def enumerated_corpus(n: int, min_deg: int = 0) -> list[Graph]:
    if n > MAX_ENUMERATION_ORDER:
        raise UnsupportedError(
            f"no internal enumeration for n={n}; supply a graph6 corpus, e.g. `geng -c -d{min_deg} {n}`"
        )
    return [g for g in _enumerated(n) if min_degree(g) >= min_deg]


def file_corpus(path: str, n: int) -> list[Graph]:
    p = Path(path)
    if not p.is_file():
        raise UnsupportedError(
            f"corpus file {path} not found; generate it with e.g. `geng -c {n} > {path}`"
        )
    with p.open() as fh:
        graphs = list(read_graph6_lines(fh))
    wrong = [g.n for g in graphs if g.n != n]
    if wrong:
        raise PreconditionError(f"corpus {path} holds graphs of order {wrong[0]}, expected {n}")
    if not graphs:
        raise UnsupportedError(
            f"corpus file {path} holds no graphs of order {n}; expected output of `geng -c {n}`"
        )
    return graphs


def random_connected(
    n: int, count: int, seed: int, min_deg: int = 1, edge_prob: float = 0.5
) -> Iterator[Graph]:
    """Each pair present independently with probability ``edge_prob`` (1/2 is
    uniform over edge subsets), conditioned on connectivity and minimum degree
    by rejection."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    produced = 0
    while produced < count:
        bits = rng.random(len(iu)) < edge_prob
        adj = [0] * n
        for i, j, b in zip(iu.tolist(), ju.tolist(), bits.tolist()):
            if b:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        g = Graph(n, tuple(adj))
        if g.is_connected() and min(nb.bit_count() for nb in adj) >= min_deg:
            produced += 1
            yield g


def extremal_family(n: int) -> list[Graph]:
    return [build_Gs(n, s) for s in range(1, n // 2 + 1)]


def load_corpus(spec: CorpusSpec, n: int, min_deg: int) -> list[Graph]:
    if spec.kind == "enumerate":
        return enumerated_corpus(n, min_deg)
    if spec.kind == "file":
        return file_corpus(spec.path, n)
    graphs = list(random_connected(n, spec.count, spec.seed, min_deg, spec.edge_prob))
    if spec.inject_extremal:
        graphs = extremal_family(n) + graphs
    return graphs
