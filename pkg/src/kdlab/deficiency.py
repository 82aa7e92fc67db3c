"""k-Berge-Tutte deficiency, k-barriers, and the subset-inequality tests for
generalized factor-criticality (GFC_k), generalized bicriticality (GBC_k) and
k-d-criticality.

Everything here is an exhaustive reference oracle: subsets are scanned in
ascending cardinality and lexicographic order within a cardinality, so the
first reported violator is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from kdlab.errors import PreconditionError, UnsupportedError
from kdlab.graph import Graph, odd_and_isolated

MAX_SUBSET_ORDER = 24


@dataclass(frozen=True)
class DeficiencyReport:
    k: int
    value: int
    parity_branch: str
    barriers: list[tuple[int, ...]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "value": self.value,
            "parity_branch": self.parity_branch,
            "barriers": [list(b) for b in self.barriers],
        }


@dataclass(frozen=True)
class CriticalityVerdict:
    property: str
    holds: bool
    violating_set: Optional[tuple[int, ...]]
    k: int
    d: Optional[int] = None

    def to_dict(self) -> dict:
        out = {
            "property": self.property,
            "holds": self.holds,
            "violating_set": None if self.violating_set is None else list(self.violating_set),
            "k": self.k,
        }
        if self.d is not None:
            out["d"] = self.d
        return out


def subsets_in_order(n: int, nonempty: bool = False) -> Iterator[tuple[tuple[int, ...], int]]:
    """``(vertices, mask)`` for every subset of ``range(n)``: by size, then lexicographically."""
    if n > MAX_SUBSET_ORDER:
        raise UnsupportedError(
            f"exhaustive subset scan refused for n={n} (limit {MAX_SUBSET_ORDER})"
        )
    for r in range(1 if nonempty else 0, n + 1):
        for combo in combinations(range(n), r):
            mask = 0
            for v in combo:
                mask |= 1 << v
            yield combo, mask


def branch_value(g: Graph, k: int, removed_mask: int) -> int:
    """The k-Berge-Tutte expression for ``S`` given as a vertex mask."""
    alive = ((1 << g.n) - 1) & ~removed_mask
    odd, iso = odd_and_isolated(g.adj, alive)
    s = removed_mask.bit_count()
    if k % 2 == 0:
        return k * iso - k * s
    return odd + k * iso - k * s


def deficiency_k(g: Graph, k: int) -> DeficiencyReport:
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    best = None
    barriers: list[tuple[int, ...]] = []
    for combo, mask in subsets_in_order(g.n):
        val = branch_value(g, k, mask)
        if best is None or val > best:
            best, barriers = val, [combo]
        elif val == best:
            barriers.append(combo)
    return DeficiencyReport(
        k=k,
        value=best,
        parity_branch="even-k" if k % 2 == 0 else "odd-k",
        barriers=barriers,
    )


def k_barriers(g: Graph, k: int) -> list[tuple[int, ...]]:
    return deficiency_k(g, k).barriers


def _first_violator(g: Graph, excess) -> Optional[tuple[int, ...]]:
    full = (1 << g.n) - 1
    for combo, mask in subsets_in_order(g.n, nonempty=True):
        odd, iso = odd_and_isolated(g.adj, full & ~mask)
        if excess(odd, iso, len(combo)) > 0:
            return combo
    return None


def classify_gfc_gbc(g: Graph, k: int) -> CriticalityVerdict:
    """GFC_k for odd order, GBC_k for even order, decided by the nonempty-subset
    inequalities matching the parity of ``k``."""
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if g.n < 3:
        raise UnsupportedError("GFC_k/GBC_k classification needs order n >= 3")
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    prop = "GFC_k" if g.n % 2 else "GBC_k"
    if k % 2 == 0:
        def excess(odd, iso, s):
            return iso - (s - 1)
    else:
        slack = 1 if g.n % 2 else 2

        def excess(odd, iso, s):
            return odd + k * iso - (k * s - slack)

    witness = _first_violator(g, excess)
    return CriticalityVerdict(prop, witness is None, witness, k)


def check_kd_parameters(n: int, k: int, d: int) -> None:
    if k < 3 or k % 2 == 0:
        raise PreconditionError(f"k-d-criticality needs odd k >= 3, got k={k}")
    if not 1 <= d <= k:
        raise PreconditionError(f"d must lie in 1..{k}, got d={d}")
    if (n - d) % 2:
        raise PreconditionError(f"parity mismatch: n={n} and d={d} differ mod 2")


def is_kd_critical_deficiency(g: Graph, k: int, d: int) -> CriticalityVerdict:
    """k-d-criticality via odd(G-S) + k*i(G-S) <= k|S| - d over nonempty ``S``."""
    check_kd_parameters(g.n, k, d)
    if g.n < 3:
        raise PreconditionError("order must be at least 3")

    def excess(odd, iso, s):
        return odd + k * iso - (k * s - d)

    witness = _first_violator(g, excess)
    return CriticalityVerdict("k-d-critical", witness is None, witness, k, d)


def reevaluate(g: Graph, verdict: CriticalityVerdict) -> bool:
    """True iff ``verdict.violating_set`` really breaks the defining inequality."""
    if verdict.violating_set is None:
        return False
    s = verdict.violating_set
    mask = sum(1 << v for v in s)
    odd, iso = odd_and_isolated(g.adj, ((1 << g.n) - 1) & ~mask)
    k = verdict.k
    if verdict.property == "k-d-critical":
        return odd + k * iso > k * len(s) - verdict.d
    if k % 2 == 0:
        return iso > len(s) - 1
    return odd + k * iso > k * len(s) - (1 if g.n % 2 else 2)
