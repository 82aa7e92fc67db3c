from __future__ import annotations

import pytest

from kdlab.canon import canonical_key, is_isomorphic
from kdlab.errors import PreconditionError
from kdlab.extremal import (
    ExtremalParams,
    build_Gs,
    clique_join,
    edge_count_Gs,
    half_join,
    lemma4_check,
    lemma4_lemma5_check,
    lemma5_check,
    lemma8_clauses,
    lemma8_compare,
    lemma9_compare,
    quotient_root_Gs,
)
from kdlab.graph import min_degree


def test_build_examples():
    g = build_Gs(7, 1)
    assert (g.num_edges, min_degree(g)) == (16, 1)
    assert build_Gs(10, 5).num_edges == 35
    assert build_Gs(10, 5) == half_join(10)
    assert is_isomorphic(build_Gs(9, 4), half_join(9))


def test_build_rejects_bad_s():
    for n, s in [(7, 0), (7, 4), (2, 2)]:
        with pytest.raises(PreconditionError):
            build_Gs(n, s)
    with pytest.raises(PreconditionError):
        ExtremalParams(10, 3, 2)


@pytest.mark.parametrize("n, s, e", [(7, 1, 16), (7, 3, 15), (10, 5, 35), (7, 2, 14)])
def test_edge_count_examples(n, s, e):
    assert edge_count_Gs(n, s) == e


def test_formula_matches_construction():
    for n in range(3, 41):
        for s in range(1, n // 2 + 1):
            assert edge_count_Gs(n, s) == build_Gs(n, s).num_edges


def test_edge_counts_fall_then_rise():
    for n in range(4, 200):
        e = [edge_count_Gs(n, s) for s in range(1, n // 2 + 1)]
        low = min(e)
        first = e.index(low)
        minima = [i for i, v in enumerate(e) if v == low]
        # two-way tie at the bottom exactly when the vertex (2n-1)/6 is a half-integer
        assert len(minima) == (2 if n % 3 == 2 and n >= 5 else 1)
        assert all(a > b for a, b in zip(e[:first], e[1 : first + 1]))
        assert all(a < b for a, b in zip(e[minima[-1] :], e[minima[-1] + 1 :]))
        assert abs((first + 1) - (2 * n - 1) / 6) <= 1


def test_half_join_identity_by_canonical_form():
    for n in range(2, 17):
        g, h = build_Gs(n, n // 2), half_join(n)
        assert sorted(g.degrees()) == sorted(h.degrees())
        assert canonical_key(g) == canonical_key(h)


def test_edge_comparison_examples():
    v = lemma8_compare(7, 1)
    assert (v.case_label, v.holds) == ("i", True)
    assert v.details["edge_counts"] == {"1": 16, "2": 14, "3": 15}
    v = lemma8_compare(8, 1)
    assert (v.case_label, v.holds) == ("ii", True)
    # G_2(8) and G_3(8) tie at 19
    assert v.details["edge_counts"] == {"1": 22, "2": 19, "3": 19, "4": 22}
    v = lemma8_compare(5, 1)
    assert (v.case_label, v.holds) == ("ii", True)
    assert v.details["edge_counts"] == {"1": 7, "2": 7}


def test_edge_clauses_cover_each_n_once():
    for delta in range(1, 8):
        for n in range(2 * delta, 80):
            assert len(lemma8_clauses(n, delta)) == 1


def test_spectral_dominance_examples():
    v = lemma9_compare(12, 1)
    assert v.holds and v.margin > 1e-9
    assert v.details["rho"]["6"] == pytest.approx(9.0, abs=1e-9)
    assert quotient_root_Gs(12, 6) == 9.0
    v = lemma9_compare(20, 2)
    assert v.holds and set(v.details["rho"]) == {str(s) for s in range(2, 11)}
    with pytest.raises(PreconditionError):
        lemma9_compare(11, 1)


def test_dominance_inconclusive_under_huge_tolerance():
    v = lemma9_compare(12, 1, tol=100.0)
    assert v.inconclusive and v.status == "inconclusive"


def test_clique_join_comparison_examples():
    v = lemma4_check(1, (2, 2, 1), 1)
    assert v.holds and v.details == {"e_parts": 7, "e_merged": 8}
    assert lemma5_check(1, (2, 2, 1)).holds
    both = lemma4_lemma5_check(1, (2, 2, 1))
    assert both.holds and both.lemma == "lemma4+lemma5"
    with pytest.raises(PreconditionError):
        lemma4_lemma5_check(1, (3, 1, 1))


def test_clique_join_edges_with_larger_p():
    v = lemma4_lemma5_check(2, (3, 3, 2), p=2)
    assert v.lemma == "lemma4" and v.holds
    assert v.details["e_merged"] == clique_join(2, [4, 2, 2]).num_edges
    assert v.margin == v.details["e_merged"] - v.details["e_parts"] > 0


def test_clique_join_parts_validation():
    for s, parts, p in [(0, (2, 1), 1), (1, (1, 2), 1), (1, (2, 1), 2), (1, (), 1)]:
        with pytest.raises(PreconditionError):
            lemma4_check(s, parts, p)


def test_clique_join_is_connected_and_sized():
    g = clique_join(2, [3, 1])
    assert g.n == 6 and g.is_connected()
    assert g.num_edges == 1 + 3 + 2 * 4


def test_verdict_serialises():
    d = lemma8_compare(7, 1).to_dict()
    assert d["status"] == "holds" and d["lemma"] == "lemma8"
    assert isinstance(d["margin"], (int, float))
