"""Parameter rules for the size and spectral sufficient conditions.

Each rule records which property the conclusion asserts, the parity
constraints on ``k`` and ``n``, and (for size conditions) the three n-ranges
that select the threshold graph and the exceptional family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from kdlab.deficiency import CriticalityVerdict, classify_gfc_gbc, is_kd_critical_deficiency
from kdlab.errors import PreconditionError
from kdlab.extremal import build_Gs, half_join
from kdlab.graph import Graph


@dataclass(frozen=True)
class TheoremRule:
    name: str
    kind: str  # "size" | "spectral"
    k_parity: str  # "odd" | "even"
    conclusion: str  # "k-d-critical" | "GFC_k" | "GBC_k"
    order_parity: Optional[str] = None
    min_order: int = 3


RULES: dict[str, TheoremRule] = {
    r.name: r
    for r in (
        TheoremRule("theorem1", "size", "odd", "k-d-critical"),
        TheoremRule("theorem2", "spectral", "odd", "k-d-critical"),
        TheoremRule("theorem3", "size", "even", "GFC_k", "odd"),
        TheoremRule("theorem4", "size", "even", "GBC_k", "even", 4),
        TheoremRule("theorem5", "spectral", "even", "GFC_k", "odd"),
        TheoremRule("theorem6", "spectral", "even", "GBC_k", "even"),
        TheoremRule("corollary1", "size", "odd", "GFC_k", "odd"),
        TheoremRule("corollary2", "size", "odd", "GBC_k", "even", 4),
        TheoremRule("corollary3", "spectral", "odd", "GFC_k", "odd"),
        TheoremRule("corollary4", "spectral", "odd", "GBC_k", "even"),
    )
}


def rule(name: str) -> TheoremRule:
    try:
        return RULES[name]
    except KeyError:
        raise PreconditionError(f"unknown theorem {name!r}; expected one of {sorted(RULES)}") from None


def validate(name: str, n: int, delta: int, k: int, d: Optional[int] = None) -> TheoremRule:
    r = rule(name)
    if delta < 1:
        raise PreconditionError("delta must be a positive integer")
    if n < r.min_order:
        raise PreconditionError(f"{name} needs n >= {r.min_order}")
    if r.kind == "spectral" and n < 8 * delta + 4:
        raise PreconditionError(f"{name} needs n >= 8*delta + 4 = {8 * delta + 4}, got {n}")
    if r.k_parity == "odd" and (k < 3 or k % 2 == 0):
        raise PreconditionError(f"{name} needs odd k >= 3, got {k}")
    if r.k_parity == "even" and (k < 2 or k % 2):
        raise PreconditionError(f"{name} needs even k >= 2, got {k}")
    if r.order_parity == "odd" and n % 2 == 0:
        raise PreconditionError(f"{name} needs odd order, got {n}")
    if r.order_parity == "even" and n % 2:
        raise PreconditionError(f"{name} needs even order, got {n}")
    if r.conclusion == "k-d-critical":
        if d is None or not 1 <= d < k:
            raise PreconditionError(f"{name} needs 1 <= d < k, got d={d}")
        if (n - d) % 2:
            raise PreconditionError(f"{name} needs n = d (mod 2), got n={n}, d={d}")
    return r


def size_clauses(name: str, n: int, delta: int) -> list[str]:
    """Every clause of a size condition whose stated n-set contains ``n``."""
    r = rule(name)
    if r.kind != "size":
        raise PreconditionError(f"{name} is not a size condition")
    hits = []
    if r.order_parity is None:
        if n > 6 * delta + 2 or n == 6 * delta + 1:
            hits.append("i")
        if n == 6 * delta + 2 or n == 6 * delta - 1:
            hits.append("ii")
        if n < 6 * delta - 1 or n == 6 * delta:
            hits.append("iii")
    else:
        pivot = 6 * delta - 1 if r.order_parity == "odd" else 6 * delta + 2
        hits.append("i" if n > pivot else "ii" if n == pivot else "iii")
    return hits


def size_clause(name: str, n: int, delta: int) -> str:
    hits = size_clauses(name, n, delta)
    if len(hits) != 1:
        raise PreconditionError(f"{name} at n={n}, delta={delta} matches clauses {hits}")
    return hits[0]


def threshold_graph(name: str, n: int, delta: int) -> Graph:
    """The graph whose size (or spectral radius) is the hypothesis threshold."""
    r = rule(name)
    if r.kind == "size" and size_clause(name, n, delta) == "iii":
        return half_join(n)
    return build_Gs(n, delta)


def exceptional_graphs(name: str, n: int, delta: int) -> list[tuple[str, Graph, tuple[int, ...]]]:
    """Graphs named in the "unless" clause, each with its join clique (the
    expected violating set)."""
    r = rule(name)
    clause = "i" if r.kind == "spectral" else size_clause(name, n, delta)
    named = []
    if clause in ("i", "ii"):
        named.append(("G_delta", build_Gs(n, delta), tuple(range(delta))))
    if clause in ("ii", "iii"):
        named.append(("half_join", half_join(n), tuple(range(n // 2))))
    return named


def check_conclusion(name: str, g: Graph, k: int, d: Optional[int] = None) -> CriticalityVerdict:
    r = rule(name)
    if r.conclusion == "k-d-critical":
        return is_kd_critical_deficiency(g, k, d)
    return classify_gfc_gbc(g, k)
