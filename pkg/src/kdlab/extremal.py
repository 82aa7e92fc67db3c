"""Extremal joins ``G_s = K_s v (K_{n-2s} + co-K_s)`` and the comparison lemmas
over them.

Vertex layout of every construction here: the join clique first, then the
clique part(s), then the independent part.  Reported violating sets therefore
read ``(0, ..., s-1)`` for the join clique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from kdlab.errors import PreconditionError
from kdlab.graph import Graph, disjoint_union, join, union_all
from kdlab.spectral import (
    DEFAULT_TOL,
    charpoly_fs,
    charpoly_tilde,
    largest_root,
    spectral_radius,
)

AGREEMENT_TOL = 1e-9


@dataclass(frozen=True)
class ExtremalParams:
    n: int
    delta: int
    s: int

    def __post_init__(self):
        if not 1 <= self.delta <= self.s <= self.n // 2:
            raise PreconditionError(
                f"need 1 <= delta <= s <= n//2, got n={self.n}, delta={self.delta}, s={self.s}"
            )


@dataclass(frozen=True)
class ComparisonVerdict:
    lemma: str
    case_label: str
    holds: bool
    margin: float
    inconclusive: bool = False
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.inconclusive:
            return "inconclusive"
        return "holds" if self.holds else "fails"

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "case_label": self.case_label,
            "status": self.status,
            "holds": self.holds,
            "margin": float(self.margin) if isinstance(self.margin, Fraction) else self.margin,
            "details": self.details,
        }


# -- constructions ----------------------------------------------------------


def build_Gs(n: int, s: int) -> Graph:
    if not 1 <= s <= n // 2:
        raise PreconditionError(f"s must lie in 1..{n // 2}, got {s}")
    return join(Graph.complete(s), disjoint_union(Graph.complete(n - 2 * s), Graph.empty(s)))


def half_join(n: int) -> Graph:
    """``K_{floor(n/2)} v co-K_{ceil(n/2)}``."""
    return join(Graph.complete(n // 2), Graph.empty(n - n // 2))


def clique_join(s: int, parts: Sequence[int]) -> Graph:
    """``K_s v (K_{n_1} + ... + K_{n_t})``."""
    return join(Graph.complete(s), union_all(Graph.complete(p) for p in parts))


def edge_count_Gs(n: int, s: int) -> int:
    if not 1 <= s <= n // 2:
        raise PreconditionError(f"s must lie in 1..{n // 2}, got {s}")
    val = Fraction(3 * s * s, 2) + (Fraction(1, 2) - n) * s + Fraction(n * n - n, 2)
    assert val.denominator == 1 and val >= 0, val
    return int(val)


def quotient_root_Gs(n: int, s: int) -> float:
    """Spectral radius of ``G_s`` from its quotient polynomial."""
    if 2 * s == n:
        return largest_root(charpoly_tilde(n))
    return largest_root(charpoly_fs(n, s))


# -- edge-count comparison --------------------------------------------------


def lemma8_clauses(n: int, delta: int) -> list[str]:
    """Every clause whose stated n-set contains ``n``."""
    hits = []
    if n > 6 * delta + 2 or n == 6 * delta + 1:
        hits.append("i")
    if n == 6 * delta + 2 or n == 6 * delta - 1:
        hits.append("ii")
    if n < 6 * delta - 1 or n == 6 * delta:
        hits.append("iii")
    return hits


def lemma8_compare(n: int, delta: int) -> ComparisonVerdict:
    """Check the clause governing ``(n, delta)`` with exact edge counts.

    margin is the smallest strict gap the clause asserts (0 when the clause's
    strict comparisons are vacuous).
    """
    if delta < 1 or delta > n // 2:
        raise PreconditionError(f"need 1 <= delta <= n//2, got n={n}, delta={delta}")
    half = n // 2
    e = {s: edge_count_Gs(n, s) for s in range(delta, half + 1)}
    clauses = lemma8_clauses(n, delta)
    details = {"edge_counts": {str(s): v for s, v in e.items()}, "clauses": clauses}
    if len(clauses) != 1:
        return ComparisonVerdict("lemma8", "+".join(clauses) or "none", False, 0, details=details)
    clause = clauses[0]
    if clause == "i":
        top, others = e[delta], [e[s] for s in range(delta + 1, half + 1)]
        ok_eq = True
    elif clause == "ii":
        top, others = e[delta], [e[s] for s in range(delta + 1, half)]
        ok_eq = e[delta] == e[half]
    else:
        top, others = e[half], [e[s] for s in range(delta, half)]
        ok_eq = True
    margin = min((top - x for x in others), default=0)
    holds = ok_eq and all(top > x for x in others)
    return ComparisonVerdict("lemma8", clause, holds, margin, details=details)


# -- spectral comparison ----------------------------------------------------


def lemma9_compare(n: int, delta: int, tol: float = AGREEMENT_TOL) -> ComparisonVerdict:
    """Check that ``rho(G_delta) > rho(G_s)`` for every ``delta < s <= n//2``.

    Each radius comes from power iteration and from the quotient polynomial;
    the two must agree to ``AGREEMENT_TOL``.  A dominance margin at or below
    ``tol`` yields an inconclusive verdict rather than a failure.
    """
    if n < 8 * delta + 4:
        raise PreconditionError(f"need n >= 8*delta + 4, got n={n}, delta={delta}")
    rhos = {}
    max_disagreement = 0.0
    for s in range(delta, n // 2 + 1):
        iterative = spectral_radius(build_Gs(n, s), tol=DEFAULT_TOL).rho
        closed = quotient_root_Gs(n, s)
        max_disagreement = max(max_disagreement, abs(iterative - closed))
        rhos[s] = iterative
    base = rhos[delta]
    margin = min(base - rhos[s] for s in range(delta + 1, n // 2 + 1))
    details = {
        "rho": {str(s): r for s, r in rhos.items()},
        "max_quotient_disagreement": max_disagreement,
    }
    if max_disagreement > AGREEMENT_TOL:
        return ComparisonVerdict("lemma9", "quotient-mismatch", False, margin, details=details)
    if abs(margin) <= tol:
        return ComparisonVerdict("lemma9", "dominance", False, margin, inconclusive=True, details=details)
    return ComparisonVerdict("lemma9", "dominance", margin > tol, margin, details=details)


# -- clique-join comparisons ------------------------------------------------


def _check_parts(s: int, parts: Sequence[int], p: int) -> tuple[int, int]:
    parts = list(parts)
    t = len(parts)
    if s < 1 or t < 1:
        raise PreconditionError("need s >= 1 and at least one part")
    if parts != sorted(parts, reverse=True):
        raise PreconditionError("parts must be non-increasing")
    if p < 1 or parts[-1] < p:
        raise PreconditionError(f"need n_t >= p >= 1, got parts={parts}, p={p}")
    n = s + sum(parts)
    big = n - s - p * (t - 1)
    if not parts[0] < big:
        raise PreconditionError(f"need n_1 < n - s - p(t-1) = {big}, got n_1 = {parts[0]}")
    return n, t


def lemma4_check(s: int, parts: Sequence[int], p: int) -> ComparisonVerdict:
    n, t = _check_parts(s, parts, p)
    lhs = clique_join(s, parts).num_edges
    rhs = clique_join(s, [n - s - p * (t - 1)] + [p] * (t - 1)).num_edges
    return ComparisonVerdict(
        "lemma4", f"s={s},parts={tuple(parts)},p={p}", lhs < rhs, rhs - lhs,
        details={"e_parts": lhs, "e_merged": rhs},
    )


def lemma5_check(s: int, parts: Sequence[int], tol: float = AGREEMENT_TOL) -> ComparisonVerdict:
    n, t = _check_parts(s, parts, 1)
    lhs = spectral_radius(clique_join(s, parts)).rho
    rhs = spectral_radius(clique_join(s, [n - s - t + 1] + [1] * (t - 1))).rho
    margin = rhs - lhs
    return ComparisonVerdict(
        "lemma5", f"s={s},parts={tuple(parts)}", margin > tol, margin,
        inconclusive=abs(margin) <= tol, details={"rho_parts": lhs, "rho_merged": rhs},
    )


def lemma4_lemma5_check(s: int, parts: Sequence[int], p: int = 1) -> ComparisonVerdict:
    """Edge comparison at ``p``; with ``p == 1`` also the spectral comparison on the same pair."""
    v4 = lemma4_check(s, parts, p)
    if p != 1:
        return v4
    v5 = lemma5_check(s, parts)
    return ComparisonVerdict(
        "lemma4+lemma5", v4.case_label, v4.holds and v5.holds, min(float(v4.margin), v5.margin),
        inconclusive=v5.inconclusive,
        details={"lemma4": v4.to_dict(), "lemma5": v5.to_dict()},
    )
