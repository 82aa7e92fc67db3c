from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from kdlab.errors import ConvergenceError, KdlabError, PreconditionError
from kdlab.extremal import build_Gs, half_join
from kdlab.graph import Graph
from kdlab.spectral import (
    charpoly_fs,
    charpoly_tilde,
    claim_polynomials,
    largest_root,
    quotient_matrix,
    spectral_radius,
)

X = sympy.Symbol("x")


def sympy_charpoly(rows):
    m = sympy.Matrix([[sympy.Rational(v) for v in row] for row in rows])
    return tuple(int(c) for c in m.charpoly(X).all_coeffs())


def gs_cells(n, s):
    return [list(range(s)), list(range(s, n - s)), list(range(n - s, n))]


# -- power iteration --------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 5, 9, 16])
def test_rho_complete(n):
    assert spectral_radius(Graph.complete(n)).rho == pytest.approx(n - 1, abs=1e-9)


@pytest.mark.parametrize("a, b", [(1, 3), (2, 2), (3, 4), (5, 7)])
def test_rho_complete_bipartite(a, b):
    assert abs(spectral_radius(Graph.complete_bipartite(a, b)).rho - math.sqrt(a * b)) <= 1e-9


def test_rho_extremal_matches_cubic():
    res = spectral_radius(build_Gs(12, 1))
    assert abs(res.rho - largest_root((1, -9, -11, 9))) <= 1e-9
    assert res.residual <= 1e-12
    assert res.to_dict().keys() == {"rho", "residual", "iterations"}


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), st.data())
def test_rho_within_perron_bounds_and_matches_numpy(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    bits = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b] + [(i, i + 1) for i in range(n - 1)])
    res = spectral_radius(g)
    assert 2 * g.num_edges / n - 1e-9 <= res.rho <= n - 1 + 1e-9
    assert abs(res.rho - max(np.linalg.eigvalsh(g.adjacency_matrix()))) <= 1e-9


def test_rho_preconditions():
    with pytest.raises(PreconditionError):
        spectral_radius(Graph.empty(2))
    with pytest.raises(PreconditionError):
        spectral_radius(Graph.complete(3), tol=0)


def test_non_convergence_carries_estimate():
    with pytest.raises(ConvergenceError) as info:
        spectral_radius(Graph.from_edges(6, [(i, i + 1) for i in range(5)]), max_iter=3)
    assert info.value.iterations == 3 and info.value.rho > 0


# -- quotient matrices ------------------------------------------------------


@pytest.mark.parametrize("n, s", [(7, 1), (12, 3), (9, 4), (20, 2)])
def test_quotient_of_extremal_join(n, s):
    q = quotient_matrix(build_Gs(n, s), gs_cells(n, s))
    assert q.equitable
    assert q.entries == ((s - 1, n - 2 * s, s), (s, n - 2 * s - 1, 0), (s, 0, 0))
    assert sympy_charpoly(q.entries) == charpoly_fs(n, s)


@pytest.mark.parametrize("n", [2, 4, 8, 12])
def test_quotient_of_half_join(n):
    h = n // 2
    q = quotient_matrix(half_join(n), [list(range(h)), list(range(h, n))])
    assert q.equitable and q.entries == ((h - 1, h), (h, 0))
    assert sympy_charpoly(q.entries) == charpoly_tilde(n)


def test_quotient_small_example():
    q = quotient_matrix(Graph.complete(3), [[0], [1, 2]])
    assert q.entries == ((0, 2), (1, 1)) and q.equitable and q.part_sizes == (1, 2)


def test_quotient_flags_non_equitable():
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    q = quotient_matrix(path, [[0, 1], [2]])
    assert not q.equitable and q.entries[0] == (Fraction(1), Fraction(1, 2))


@pytest.mark.parametrize("partition", [[[0], [1]], [[0, 1], [1, 2]], [[0], [], [1, 2]], [[0, 1, 2, 3]]])
def test_quotient_rejects_bad_partitions(partition):
    with pytest.raises(PreconditionError):
        quotient_matrix(Graph.complete(3), partition)


# -- closed forms -----------------------------------------------------------


def test_charpoly_examples():
    assert charpoly_fs(12, 1) == (1, -9, -11, 9)
    assert charpoly_fs(7, 3) == (1, -2, -12, 0)
    assert charpoly_tilde(4) == (1, -1, -4)
    assert charpoly_tilde(2) == (1, 0, -1)
    assert charpoly_tilde(12) == (1, -5, -36)
    with pytest.raises(PreconditionError):
        charpoly_tilde(7)
    with pytest.raises(PreconditionError):
        charpoly_fs(6, 4)


def test_largest_root_examples():
    assert largest_root((1, -1, -4)) == pytest.approx((1 + math.sqrt(17)) / 2, abs=1e-12)
    assert largest_root((1, -5, -36)) == 9.0
    assert largest_root((1, 0, -1)) == pytest.approx(1.0, abs=1e-12)
    r = largest_root((1, -9, -11, 9))
    assert 10 < r < 10.2
    assert largest_root((1, -2, -12, 0)) == pytest.approx(1 + math.sqrt(13), abs=1e-12)
    with pytest.raises(KdlabError):
        largest_root((1, 0, 1))
    with pytest.raises(PreconditionError):
        largest_root((1, 2))


def test_cubic_root_agrees_with_iteration_at_n7_s3():
    assert abs(largest_root(charpoly_fs(7, 3)) - spectral_radius(build_Gs(7, 3)).rho) <= 1e-9


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=3, max_size=3))
def test_largest_root_of_cubic_with_integer_roots(roots):
    coeffs = [int(c) for c in sympy.Poly(sympy.prod([X - r for r in roots]), X).all_coeffs()]
    assert largest_root(coeffs) == pytest.approx(max(roots), abs=1e-6)


@pytest.mark.parametrize("delta", [1, 2])
def test_quotient_roots_agree_with_iteration(delta):
    for n in range(8 * delta + 4, 8 * delta + 21):
        for s in range(delta, n // 2 + 1):
            poly = charpoly_tilde(n) if 2 * s == n else charpoly_fs(n, s)
            assert abs(largest_root(poly) - spectral_radius(build_Gs(n, s)).rho) <= 1e-9


# -- auxiliary polynomials --------------------------------------------------


def test_auxiliary_polynomial_examples():
    g1, _, _ = claim_polynomials(12, 1, 2, 10)
    assert g1 == -99
    # the x coefficient is 1 - 1 - 6 + 1 = -5, which gives -165 rather than -159
    _, _, g2 = claim_polynomials(12, 1, 2, 6)
    assert g2 == -165
    assert isinstance(g2, Fraction)


def test_g1_is_the_difference_quotient_symbolically():
    n, d, s = sympy.symbols("n delta s")
    fs = X**3 + (s - n + 2) * X**2 - (s**2 - s + n - 1) * X + (n - 1) * s**2 - 2 * s**3
    fd = fs.subs(s, d)
    g1, h, _ = claim_polynomials(n, d, s, X)
    assert sympy.expand(fs - fd + (s - d) * g1) == 0
    assert sympy.expand(h - g1.subs(X, n - d - 1)) == 0


def test_g2_is_the_stated_combination_symbolically():
    n, d = sympy.symbols("n delta")
    fd = X**3 + (d - n + 2) * X**2 - (d**2 - d + n - 1) * X + (n - 1) * d**2 - 2 * d**3
    ft = X**2 - (n / 2 - 1) * X - n**2 / 4
    _, _, g2 = claim_polynomials(n, d, d + 1, X)
    assert sympy.expand(fd - (X - n / 2) * ft - g2) == 0


def test_difference_identity_in_exact_integers():
    for n in range(12, 30):
        for delta in (1, 2):
            for s in range(delta, n // 2):
                fs, fd = charpoly_fs(n, s), charpoly_fs(n, delta)
                for x in range(-5, n + 5):
                    lhs = sum(c * x ** (3 - i) for i, c in enumerate(fs)) - sum(
                        c * x ** (3 - i) for i, c in enumerate(fd)
                    )
                    g1, _, _ = claim_polynomials(n, delta, s, x)
                    assert lhs == -(s - delta) * g1


@pytest.mark.parametrize("delta", [1, 2])
def test_auxiliary_polynomials_negative_on_grids(delta):
    for n in range(8 * delta + 4, 8 * delta + 21):
        for s in range(delta + 1, (n + 1) // 2):
            lo, hi = n - delta - 1, n
            for i in range(100):
                x = Fraction(lo) + Fraction(hi - lo) * i / 99
                assert claim_polynomials(n, delta, s, x)[0] < 0
        for i in range(1, 101):
            x = Fraction(n, 2) + (Fraction(n - 1) - Fraction(n, 2)) * i / 100
            assert claim_polynomials(n, delta, delta + 1, x)[2] < 0
