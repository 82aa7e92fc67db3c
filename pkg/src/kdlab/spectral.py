"""Adjacency spectral radius, equitable quotient matrices, and the closed-form
characteristic polynomials of the extremal joins.

Polynomial coefficients stay in exact integer / rational arithmetic; only root
extraction and power iteration touch floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from kdlab.errors import ConvergenceError, KdlabError, PreconditionError
from kdlab.graph import Graph, iter_bits

DEFAULT_TOL = 1e-12
MAX_ITERATIONS = 10**6


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    residual: float
    iterations: int
    order: int = 1

    @property
    def error_bound(self) -> float:
        # some eigenvalue of a symmetric A lies within ||Ax - rho x||_2 of rho
        return self.residual * math.sqrt(max(self.order, 1))

    def to_dict(self) -> dict:
        return {"rho": self.rho, "residual": self.residual, "iterations": self.iterations}


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITERATIONS) -> SpectralResult:
    """Largest adjacency eigenvalue of a connected graph by power iteration.

    Iterates on ``A + I`` from the all-ones vector: the shift leaves the Perron
    vector unchanged and breaks the ``+rho / -rho`` tie of bipartite graphs.
    Stops once ``max|A x - rho x| <= tol`` for the unit iterate ``x``.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    if g.n < 1:
        raise PreconditionError("spectral radius needs at least one vertex")
    if not g.is_connected():
        raise PreconditionError("power iteration needs a connected graph")
    a = g.adjacency_matrix()
    x = np.full(g.n, 1.0 / math.sqrt(g.n))
    rho, residual = 0.0, math.inf
    for it in range(1, max_iter + 1):
        ax = a @ x
        rho = float(x @ ax)
        residual = float(np.max(np.abs(ax - rho * x)))
        if residual <= tol:
            return SpectralResult(rho, residual, it, g.n)
        y = ax + x
        x = y / np.linalg.norm(y)
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} in {max_iter} steps", rho, residual, max_iter
    )


# -- quotient matrices ------------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    part_sizes: tuple[int, ...]
    entries: tuple[tuple[Fraction, ...], ...]
    equitable: bool

    @property
    def dimension(self) -> int:
        return len(self.part_sizes)

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def largest_eigenvalue(self) -> float:
        return float(max(np.linalg.eigvals(self.as_array()).real))


def quotient_matrix(g: Graph, partition: Sequence[Sequence[int]]) -> QuotientMatrix:
    """Average block row sums of ``A(g)`` with respect to ``partition``."""
    masks = []
    seen = 0
    for part in partition:
        if not part:
            raise PreconditionError("partition cells must be nonempty")
        mask = 0
        for v in part:
            if not 0 <= v < g.n:
                raise PreconditionError(f"vertex {v} out of range")
            if (seen | mask) >> v & 1:
                raise PreconditionError(f"vertex {v} appears twice in the partition")
            mask |= 1 << v
        seen |= mask
        masks.append(mask)
    if seen != (1 << g.n) - 1:
        raise PreconditionError("partition does not cover every vertex")

    equitable = True
    rows = []
    for mi in masks:
        row = []
        members = list(iter_bits(mi))
        for mj in masks:
            sums = [(g.adj[v] & mj).bit_count() for v in members]
            if len(set(sums)) > 1:
                equitable = False
            row.append(Fraction(sum(sums), len(members)))
        rows.append(tuple(row))
    return QuotientMatrix(tuple(m.bit_count() for m in masks), tuple(rows), equitable)


# -- closed-form polynomials ------------------------------------------------


def charpoly_fs(n: int, s: int) -> tuple[int, int, int, int]:
    """Characteristic polynomial of the 3x3 quotient of ``K_s v (K_{n-2s} + co-K_s)``,
    highest degree first."""
    if s < 1 or 2 * s > n:
        raise PreconditionError(f"need 1 <= s and 2s <= n, got n={n}, s={s}")
    return (1, s - n + 2, -(s * s - s + n - 1), (n - 1) * s * s - 2 * s**3)


def charpoly_tilde(n: int) -> tuple[int, int, int]:
    """Characteristic polynomial of the 2x2 quotient of ``K_{n/2} v co-K_{n/2}``."""
    if n < 2 or n % 2:
        raise PreconditionError(f"n must be even and >= 2, got {n}")
    h = n // 2
    return (1, -(h - 1), -h * h)


def _horner(coeffs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while len(a) >= len(b):
        q = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= q * b[i]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def _repeated_root(mon: list[Fraction]) -> Optional[float]:
    """Largest root of a monic cubic with a repeated root, else ``None``.

    A repeated root of a rational cubic is rational (it is a root of
    gcd(f, f')), so it is recovered exactly instead of by bisection, which
    only resolves a multiple root to roughly the cube root of machine epsilon.
    """
    _, b, c, _ = mon
    a, r = mon, [Fraction(3), 2 * b, c]
    while r:
        a, r = r, _poly_rem(a, r)
    if len(a) == 2:  # gcd x - r0: double root r0, simple root t
        r0 = -a[1] / a[0]
        return float(max(r0, -b - 2 * r0))
    if len(a) == 3:  # gcd (x - r0)^2: triple root
        return float(-a[1] / (2 * a[0]))
    return None


def largest_root(coeffs: Sequence[float]) -> float:
    """Largest real root of a degree-2 or degree-3 polynomial (highest degree first)."""
    coeffs = list(coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    deg = len(coeffs) - 1
    if deg not in (2, 3):
        raise PreconditionError(f"expected degree 2 or 3, got degree {deg}")
    lead = coeffs[0]
    mon = [float(Fraction(c) / Fraction(lead)) for c in coeffs]

    if deg == 2:
        _, b, c = mon
        disc = b * b - 4 * c
        if disc < 0:
            raise KdlabError("polynomial has no real root")
        sq = math.sqrt(disc)
        if b < 0:
            return 0.5 * (sq - b)
        # cancellation-free form of the larger root when b >= 0
        q = -0.5 * (b + sq)
        return c / q if q != 0 else 0.0

    repeated = _repeated_root([Fraction(c) / Fraction(lead) for c in coeffs])
    if repeated is not None:
        return repeated

    _, b, c, d = mon
    bound = 1.0 + max(abs(b), abs(c), abs(d))
    f = lambda x: _horner(mon, x)  # noqa: E731
    df = lambda x: (3 * x + 2 * b) * x + c  # noqa: E731

    # critical points of the monic cubic split the line into monotone pieces
    disc = b * b - 3 * c
    if disc > 0:
        r = math.sqrt(disc)
        c_lo, c_hi = (-b - r) / 3, (-b + r) / 3
        f_hi = f(c_hi)
        scale = 1.0 + abs(c_hi) ** 3
        if abs(f_hi) <= 1e-13 * scale:
            return c_hi
        lo, hi = (c_hi, bound) if f_hi < 0 else (-bound, c_lo)
    else:
        lo, hi = -bound, bound

    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(100):
        slope = df(x)
        if slope == 0:
            break
        nxt = x - f(x) / slope
        if not lo <= nxt <= hi:
            nxt = 0.5 * (lo + hi)
        if f(nxt) < 0:
            lo = nxt
        else:
            hi = nxt
        if abs(nxt - x) <= 1e-13 * max(1.0, abs(x)):
            return nxt
        x = nxt
    return x


def claim_polynomials(n, delta, s, x) -> tuple:
    """The three auxiliary quantities used to compare the extremal spectral radii.

    Returns ``(g1(x), h, g2(x))`` where ``g1`` satisfies
    ``f_s - f_delta = -(s - delta) * g1``, ``h`` is the printed expansion of
    ``g1(n - delta - 1)`` as a function of ``s``, and ``g2 = f_delta - (x - n/2) * f_tilde``.
    Rational inputs give exact ``Fraction`` results.
    """
    exact = all(isinstance(v, (int, Fraction)) for v in (n, delta, s, x))
    if exact:
        n, delta, s, x = (Fraction(v) for v in (n, delta, s, x))
    dl = delta
    g1 = (
        -x * x
        + (dl + s - 1) * x
        + dl + s - dl * n + 2 * dl * s - n * s + 2 * dl * dl + 2 * s * s
    )
    h = (
        2 * s * s + dl * s + dl - dl * n
        - (dl - 1) * (dl - n + 1) + 2 * dl * dl - (dl - n + 1) ** 2
    )
    g2 = (
        (dl + 1) * x * x
        + (-dl * dl + dl - n / 2 + 1) * x
        - 2 * dl**3 + dl * dl * n - dl * dl - n**3 / 8
    )
    return g1, h, g2
