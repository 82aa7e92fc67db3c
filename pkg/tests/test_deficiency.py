from __future__ import annotations

import pytest

from kdlab.canon import connected_graphs
from kdlab.deficiency import (
    branch_value,
    classify_gfc_gbc,
    deficiency_k,
    is_kd_critical_deficiency,
    k_barriers,
    reevaluate,
    subsets_in_order,
)
from kdlab.errors import PreconditionError, UnsupportedError
from kdlab.extremal import build_Gs
from kdlab.graph import Graph

K = Graph.complete
SMALL = [g for n in range(3, 8) for g in connected_graphs(n)]
TINY = [g for n in range(3, 7) for g in connected_graphs(n)]


def test_subset_order_is_by_size_then_lex():
    order = [c for c, _ in subsets_in_order(3)]
    assert order == [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    assert [c for c, _ in subsets_in_order(2, nonempty=True)] == [(0,), (1,), (0, 1)]


def test_deficiency_examples():
    rep = deficiency_k(Graph.star(3), 3)
    assert (rep.value, rep.barriers, rep.parity_branch) == (6, [(0,)], "odd-k")
    rep = deficiency_k(K(4), 3)
    assert (rep.value, rep.barriers) == (0, [()])
    rep = deficiency_k(K(1), 2)
    assert (rep.value, rep.barriers, rep.parity_branch) == (2, [()], "even-k")


def test_barrier_examples():
    assert k_barriers(Graph.star(3), 3) == [(0,)]
    assert k_barriers(K(3), 3) == [()]


def test_k2_barriers_include_both_singletons():
    # S = {v} leaves one isolated vertex: 0 + 3*1 - 3 = 0, tying the empty set
    assert deficiency_k(K(2), 3).value == 0
    assert k_barriers(K(2), 3) == [(), (0,), (1,)]


@pytest.mark.parametrize("k", [2, 3])
def test_barrier_optimality_on_small_corpus(k):
    for g in SMALL:
        rep = deficiency_k(g, k)
        vals = {combo: branch_value(g, k, mask) for combo, mask in subsets_in_order(g.n)}
        best = max(vals.values())
        assert rep.value == best
        assert rep.barriers == [c for c, v in vals.items() if v == best]
        assert rep.value >= vals[()]


def test_classify_examples():
    v = classify_gfc_gbc(K(3), 2)
    assert (v.property, v.holds, v.violating_set) == ("GFC_k", True, None)
    v = classify_gfc_gbc(Graph.star(3), 2)
    assert (v.property, v.holds, v.violating_set) == ("GBC_k", False, (0,))
    v = classify_gfc_gbc(build_Gs(9, 1), 3)
    assert (v.property, v.holds, v.violating_set) == ("GFC_k", False, (0,))


def test_classify_preconditions():
    with pytest.raises(UnsupportedError):
        classify_gfc_gbc(K(2), 2)
    with pytest.raises(PreconditionError):
        classify_gfc_gbc(K(3), 1)
    with pytest.raises(PreconditionError):
        classify_gfc_gbc(Graph.empty(3), 2)


@pytest.mark.parametrize("k", [2, 3])
def test_unique_barrier_matches_subset_characterisation(k):
    for g in SMALL:
        assert classify_gfc_gbc(g, k).holds == (k_barriers(g, k) == [()])


def test_kd_examples():
    assert is_kd_critical_deficiency(K(4), 3, 2).holds
    v = is_kd_critical_deficiency(build_Gs(9, 1), 3, 1)
    assert (v.holds, v.violating_set) == (False, (0,))
    assert is_kd_critical_deficiency(K(3), 3, 1).holds


def test_kd_preconditions():
    with pytest.raises(PreconditionError, match="parity"):
        is_kd_critical_deficiency(K(4), 3, 1)
    with pytest.raises(PreconditionError, match="odd k"):
        is_kd_critical_deficiency(K(4), 2, 2)
    with pytest.raises(PreconditionError):
        is_kd_critical_deficiency(K(4), 3, 4)


def test_violating_sets_really_violate():
    for g in TINY:
        for k in (2, 3):
            v = classify_gfc_gbc(g, k)
            assert v.holds or reevaluate(g, v)
        for d in (1, 2, 3):
            if (g.n - d) % 2 == 0:
                v = is_kd_critical_deficiency(g, 3, d)
                assert v.holds or reevaluate(g, v)


def test_kd_critical_implies_gfc_or_gbc():
    for g in SMALL:
        for d in (1, 2, 3):
            if (g.n - d) % 2 == 0 and is_kd_critical_deficiency(g, 3, d).holds:
                v = classify_gfc_gbc(g, 3)
                assert v.holds
                assert v.property == ("GFC_k" if d % 2 else "GBC_k")


def test_monotone_in_d():
    for g in SMALL:
        for k in (3, 5):
            held = [d for d in range(1, k + 1) if (g.n - d) % 2 == 0 and is_kd_critical_deficiency(g, k, d).holds]
            for d in held:
                for smaller in range(d - 2, 0, -2):
                    assert smaller in held
