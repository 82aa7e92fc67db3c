"""Verification suites: size and spectral sufficient conditions, sharpness of
the extremal exceptions, cross-oracle agreement, and lemma sweeps.

Every suite returns a :class:`SuiteReport`.  Reports are deterministic for a
given spec apart from ``wall_time``.
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

from kdlab import theorems
from kdlab.canon import canonical_key, connected_graphs, is_isomorphic
from kdlab.corpus import CorpusSpec, load_corpus
from kdlab.deficiency import (
    classify_gfc_gbc,
    deficiency_k,
    is_kd_critical_deficiency,
)
from kdlab.errors import BudgetExceeded, PreconditionError
from kdlab.extremal import (
    build_Gs,
    clique_join,
    edge_count_Gs,
    lemma4_check,
    lemma5_check,
    lemma8_clauses,
    lemma8_compare,
    lemma9_compare,
    quotient_root_Gs,
)
from kdlab.graph import Graph, min_degree, write_graph6
from kdlab.kmatching import STATE_BUDGET, is_kd_critical_witness, mu_k
from kdlab.spectral import quotient_matrix, spectral_radius

SCHEMA_VERSION = 1
GUARD_BAND = 1e-9
AGREEMENT_TOL = 1e-9
PERRON_MARGIN = 1e-10

SUITES = tuple(theorems.RULES) + ("sharpness", "oracle-equivalence", "lemma-sweep")


@dataclass(frozen=True)
class SuiteSpec:
    suite: str
    n: Optional[int] = None
    delta: Optional[int] = None
    k: Optional[int] = None
    d: Optional[int] = None
    corpus: CorpusSpec = field(default_factory=CorpusSpec)
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> SuiteSpec:
        data = dict(data)
        if data.get("suite") not in SUITES:
            raise PreconditionError(f"unknown suite {data.get('suite')!r}; expected one of {list(SUITES)}")
        corpus = CorpusSpec.from_dict(data.pop("corpus", {}) or {})
        known = {"suite", "n", "delta", "k", "d"}
        extra = {key: data.pop(key) for key in list(data) if key not in known}
        return cls(corpus=corpus, extra=extra, **data)

    def to_dict(self) -> dict:
        out = {"suite": self.suite}
        for key in ("n", "delta", "k", "d"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        out["corpus"] = self.corpus.to_dict()
        out.update(self.extra)
        return out


@dataclass
class SuiteReport:
    suite: dict
    graphs_examined: int = 0
    hypothesis_satisfying: int = 0
    conclusion_holds: int = 0
    exceptions_found: list[str] = field(default_factory=list)
    expected_exceptions: list[str] = field(default_factory=list)
    inconclusive: list[str] = field(default_factory=list)
    verdict: str = "fail"
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, **asdict(self)}

    def to_json(self, include_time: bool = True) -> str:
        data = self.to_dict()
        if not include_time:
            data.pop("wall_time")
        return json.dumps(data, indent=2, sort_keys=True)


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("KDLAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _pmap(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) < 64:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (threads * 8))))


def _witness_affordable(n: int, k: int) -> bool:
    return (k + 1) ** n <= STATE_BUDGET


# -- size and spectral theorem suites ---------------------------------------


def _size_job(args):
    name, g, k, d, thr = args
    if g.num_edges < thr:
        return None
    v = theorems.check_conclusion(name, g, k, d)
    return v.holds


def _spectral_job(args):
    name, g, k, d, thr = args
    rho = spectral_radius(g).rho
    if rho < thr - GUARD_BAND:
        return rho, None
    return rho, theorems.check_conclusion(name, g, k, d).holds


def _expected_keys(named, accept, present: Optional[set[str]]) -> list[str]:
    keys = set()
    for _, h, _ in named:
        if not accept(h):
            continue
        key = canonical_key(h)
        if present is None or key in present:
            keys.add(key)
    return sorted(keys)


def run_size_theorem_suite(spec: SuiteSpec, threads: Optional[int] = None) -> SuiteReport:
    """Every corpus graph meeting the size threshold satisfies the conclusion,
    except exactly the isomorphism classes the theorem names."""
    start = time.perf_counter()
    rule = theorems.validate(spec.suite, spec.n, spec.delta, spec.k, spec.d)
    if rule.kind != "size":
        raise PreconditionError(f"{spec.suite} is not a size condition")
    n, delta = spec.n, spec.delta
    clause = theorems.size_clause(spec.suite, n, delta)
    thr = theorems.threshold_graph(spec.suite, n, delta).num_edges

    def hypothesis(h: Graph) -> bool:
        return h.n == n and h.is_connected() and min_degree(h) >= delta and h.num_edges >= thr

    corpus = [g for g in load_corpus(spec.corpus, n, delta) if g.is_connected() and min_degree(g) >= delta]
    jobs = [(spec.suite, g, spec.k, spec.d, thr) for g in corpus]
    results = _pmap(_size_job, jobs, resolve_threads(threads))

    report = SuiteReport(suite=spec.to_dict(), graphs_examined=len(corpus))
    found = set()
    for g, res in zip(corpus, results):
        if res is None:
            continue
        report.hypothesis_satisfying += 1
        if res:
            report.conclusion_holds += 1
        else:
            found.add(canonical_key(g))
    present = None
    if spec.corpus.kind == "random" and not spec.corpus.inject_extremal:
        present = {canonical_key(g) for g in corpus if g.num_edges >= thr}
    report.exceptions_found = sorted(found)
    report.expected_exceptions = _expected_keys(
        theorems.exceptional_graphs(spec.suite, n, delta), hypothesis, present
    )
    report.verdict = "pass" if report.exceptions_found == report.expected_exceptions else "fail"
    report.details = {"clause": clause, "edge_threshold": thr}
    report.wall_time = time.perf_counter() - start
    return report


def spectral_threshold(n: int, delta: int) -> float:
    """rho(G_delta) from its quotient cubic, cross-checked by power iteration."""
    closed = quotient_root_Gs(n, delta)
    iterative = spectral_radius(build_Gs(n, delta)).rho
    if abs(closed - iterative) > AGREEMENT_TOL:
        raise AssertionError(f"threshold mismatch: quotient {closed} vs iteration {iterative}")
    return closed


def run_spectral_theorem_suite(spec: SuiteSpec, threads: Optional[int] = None) -> SuiteReport:
    """Every corpus graph whose spectral radius reaches rho(G_delta) satisfies
    the conclusion, except G_delta itself.

    Radii within the guard band of the threshold count as reaching it only when
    the graph is certified isomorphic to G_delta; otherwise they are reported
    as inconclusive and excluded from the verdict.
    """
    start = time.perf_counter()
    rule = theorems.validate(spec.suite, spec.n, spec.delta, spec.k, spec.d)
    if rule.kind != "spectral":
        raise PreconditionError(f"{spec.suite} is not a spectral condition")
    n, delta = spec.n, spec.delta
    thr = spectral_threshold(n, delta)
    g_delta = build_Gs(n, delta)

    corpus = [g for g in load_corpus(spec.corpus, n, delta) if g.is_connected() and min_degree(g) >= delta]
    jobs = [(spec.suite, g, spec.k, spec.d, thr) for g in corpus]
    results = _pmap(_spectral_job, jobs, resolve_threads(threads))

    report = SuiteReport(suite=spec.to_dict(), graphs_examined=len(corpus))
    found, unsure = set(), set()
    for g, (rho, holds) in zip(corpus, results):
        if holds is None:
            continue
        if rho <= thr + GUARD_BAND and not is_isomorphic(g, g_delta):
            unsure.add(canonical_key(g))
            continue
        report.hypothesis_satisfying += 1
        if holds:
            report.conclusion_holds += 1
        else:
            found.add(canonical_key(g))
    report.exceptions_found = sorted(found)
    report.inconclusive = sorted(unsure)
    g_delta_key = canonical_key(g_delta)
    present = {canonical_key(g) for g in corpus if g.num_edges == g_delta.num_edges}
    report.expected_exceptions = [g_delta_key] if g_delta_key in present else []
    report.verdict = "pass" if report.exceptions_found == report.expected_exceptions else "fail"
    report.details = {"rho_threshold": thr, "guard_band": GUARD_BAND}
    report.wall_time = time.perf_counter() - start
    return report


# -- sharpness --------------------------------------------------------------


def _applicable(n: int, delta: int, k: int, d_rule: str) -> list[tuple[str, Optional[int]]]:
    """(theorem, d) pairs whose parameter rules admit ``(n, delta, k)``."""
    out = []
    for name, rule in theorems.RULES.items():
        ds: list[Optional[int]] = [None]
        if rule.conclusion == "k-d-critical":
            ds = [d for d in range(1, k) if (n - d) % 2 == 0]
            if d_rule == "min":
                ds = ds[:1]
        for d in ds:
            try:
                theorems.validate(name, n, delta, k, d)
            except PreconditionError:
                continue
            out.append((name, d))
    return out


def run_sharpness_suite(
    delta_range: Iterable[int],
    n_range: Iterable[int],
    k_set: Iterable[int],
    d_rule: str = "all",
    witness: bool = True,
) -> SuiteReport:
    """Each graph an "unless" clause names must fail that theorem's property,
    with the join clique as the first violating set.  For k-d-criticality the
    witness oracle must agree whenever its DP budget allows."""
    start = time.perf_counter()
    delta_range, n_range, k_set = list(delta_range), list(n_range), list(k_set)
    report = SuiteReport(
        suite={"suite": "sharpness", "delta_range": delta_range, "n_range": n_range,
               "k_set": k_set, "d_rule": d_rule},
    )
    cases = []
    bad = set()
    witnessed = 0
    for delta in delta_range:
        for n in n_range:
            if n < 3 or delta > n // 2:
                continue
            for k in k_set:
                for name, d in _applicable(n, delta, k, d_rule):
                    for label, g, join_clique in theorems.exceptional_graphs(name, n, delta):
                        if min_degree(g) < delta:
                            continue
                        report.graphs_examined += 1
                        report.hypothesis_satisfying += 1
                        v = theorems.check_conclusion(name, g, k, d)
                        ok = (not v.holds) and v.violating_set == join_clique
                        case = {"theorem": name, "n": n, "delta": delta, "k": k, "d": d,
                                "graph": label, "graph6": write_graph6(g),
                                "violating_set": list(v.violating_set or ())}
                        if d is not None and witness and _witness_affordable(n, k):
                            w = is_kd_critical_witness(g, k, d)
                            case["witness_holds"] = w.holds
                            ok = ok and not w.holds
                            witnessed += 1
                        case["ok"] = ok
                        cases.append(case)
                        if ok:
                            report.conclusion_holds += 1
                        else:
                            bad.add(write_graph6(g))
    report.exceptions_found = sorted(bad)
    report.verdict = "pass" if not bad and cases else "fail"
    report.details = {"cases": cases, "witness_checks": witnessed}
    report.wall_time = time.perf_counter() - start
    return report


# -- oracle equivalence -----------------------------------------------------


def run_oracle_equivalence(n_max: int, k: int = 3, n_min: int = 3) -> SuiteReport:
    """Subset-inequality and witness deciders agree on every connected graph
    with ``n_min <= n <= n_max`` and every admissible ``d``."""
    if not _witness_affordable(n_max, k):
        raise BudgetExceeded(f"(k+1)^n = {k + 1}^{n_max} exceeds the witness DP budget")
    start = time.perf_counter()
    report = SuiteReport(suite={"suite": "oracle-equivalence", "n_min": n_min, "n_max": n_max, "k": k})
    per_order = {}
    bad = set()
    for n in range(n_min, n_max + 1):
        pairs = agree = critical = 0
        for g in connected_graphs(n):
            report.graphs_examined += 1
            for d in range(1, k + 1):
                if (n - d) % 2:
                    continue
                a = is_kd_critical_deficiency(g, k, d).holds
                b = is_kd_critical_witness(g, k, d).holds
                pairs += 1
                critical += a
                if a == b:
                    agree += 1
                else:
                    bad.add(f"{write_graph6(g)} d={d}")
        per_order[str(n)] = {"pairs": pairs, "agree": agree, "critical": critical}
        report.hypothesis_satisfying += pairs
        report.conclusion_holds += agree
    report.exceptions_found = sorted(bad)
    report.verdict = "pass" if not bad else "fail"
    report.details = {"per_order": per_order}
    report.wall_time = time.perf_counter() - start
    return report


def deficiency_mu_relation(n_max: int, ks: Sequence[int] = (1, 2, 3), n_min: int = 1) -> dict:
    """Empirical check of def_k(G) == k*n - 2*mu_k(G) on connected graphs.
    Reported only; nothing downstream relies on it."""
    out = {}
    for k in ks:
        checked = matched = 0
        first_miss = None
        for n in range(n_min, n_max + 1):
            if not _witness_affordable(n, k):
                break
            for g in connected_graphs(n):
                checked += 1
                lhs = deficiency_k(g, k).value
                rhs = k * n - 2 * mu_k(g, k)[0]
                if lhs == rhs:
                    matched += 1
                elif first_miss is None:
                    first_miss = {"graph6": write_graph6(g), "def_k": lhs, "kn_minus_2mu": rhs}
        out[str(k)] = {"checked": checked, "matched": matched, "first_mismatch": first_miss}
    return out


# -- lemma sweeps -----------------------------------------------------------


def _sweep_lemma8(grid: dict) -> SuiteReport:
    report = SuiteReport(suite={"suite": "lemma-sweep", "lemma": "lemma8", **grid})
    n_max = grid.get("n_max", 40)
    failures, uncovered, overlapping, eq_mismatch = [], [], [], []
    for delta in grid.get("delta", [1, 2, 3, 4, 5]):
        for n in range(max(3, 2 * delta), n_max + 1):
            report.graphs_examined += 1
            clauses = lemma8_clauses(n, delta)
            if not clauses:
                uncovered.append([n, delta])
            elif len(clauses) > 1:
                overlapping.append([n, delta])
            v = lemma8_compare(n, delta)
            report.hypothesis_satisfying += 1
            if v.holds:
                report.conclusion_holds += 1
            else:
                failures.append(f"n={n},delta={delta},clause={v.case_label}")
            half = n // 2
            if delta < half:
                equal = edge_count_Gs(n, delta) == edge_count_Gs(n, half)
                if equal != (n in (6 * delta + 2, 6 * delta - 1)):
                    eq_mismatch.append([n, delta])
    report.exceptions_found = failures
    report.details = {"uncovered": uncovered, "overlapping": overlapping, "equality_mismatch": eq_mismatch}
    ok = not (failures or uncovered or overlapping or eq_mismatch)
    report.verdict = "pass" if ok else "fail"
    return report


def _sweep_lemma9(grid: dict) -> SuiteReport:
    report = SuiteReport(suite={"suite": "lemma-sweep", "lemma": "lemma9", **grid})
    span = grid.get("n_span", 16)
    failures, unsure = [], []
    min_margin = math.inf
    max_disagreement = 0.0
    for delta in grid.get("delta", [1, 2]):
        for n in range(8 * delta + 4, 8 * delta + 4 + span + 1):
            report.graphs_examined += 1
            report.hypothesis_satisfying += 1
            v = lemma9_compare(n, delta)
            min_margin = min(min_margin, v.margin)
            max_disagreement = max(max_disagreement, v.details["max_quotient_disagreement"])
            if v.inconclusive:
                unsure.append(f"n={n},delta={delta}")
            elif v.holds:
                report.conclusion_holds += 1
            else:
                failures.append(f"n={n},delta={delta},{v.case_label}")
    report.exceptions_found = failures
    report.inconclusive = unsure
    report.details = {"min_margin": min_margin, "max_quotient_disagreement": max_disagreement}
    report.verdict = "pass" if not failures and not unsure else ("inconclusive" if not failures else "fail")
    return report


def _partitions(total: int, max_part: int) -> Iterable[list[int]]:
    if total == 0:
        yield []
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield [first] + rest


def _sweep_lemma45(grid: dict, which: str) -> SuiteReport:
    report = SuiteReport(suite={"suite": "lemma-sweep", "lemma": which, **grid})
    n_max = grid.get("n_max", 12 if which == "lemma4" else 10)
    failures, unsure = [], []
    for n in range(2, n_max + 1):
        for s in range(1, n):
            for parts in _partitions(n - s, n - s):
                t = len(parts)
                p_values = range(1, parts[-1] + 1) if which == "lemma4" else [1]
                for p in p_values:
                    if not parts[0] < n - s - p * (t - 1):
                        continue
                    report.graphs_examined += 1
                    report.hypothesis_satisfying += 1
                    v = lemma4_check(s, parts, p) if which == "lemma4" else lemma5_check(s, parts)
                    if v.inconclusive:
                        unsure.append(v.case_label)
                    elif v.holds:
                        report.conclusion_holds += 1
                    else:
                        failures.append(v.case_label)
    report.exceptions_found = failures
    report.inconclusive = unsure
    report.verdict = "pass" if not failures and report.graphs_examined else "fail"
    return report


def _random_connected_small(rng: random.Random, n: int) -> Graph:
    while True:
        edges = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < 0.5]
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            return g


def _sweep_lemma6(grid: dict) -> SuiteReport:
    report = SuiteReport(suite={"suite": "lemma-sweep", "lemma": "lemma6", **grid})
    rng = random.Random(grid.get("seed", 1))
    failures = []
    min_gain = math.inf
    for _ in range(grid.get("count", 200)):
        n = rng.randint(grid.get("n_min", 3), grid.get("n_max", 10))
        g = _random_connected_small(rng, n)
        missing = [(i, j) for i, j in combinations(range(n), 2) if not g.has_edge(i, j)]
        if not missing:
            continue
        i, j = rng.choice(missing)
        h = Graph.from_edges(n, g.edges() + [(i, j)])
        report.graphs_examined += 1
        report.hypothesis_satisfying += 1
        gain = spectral_radius(h).rho - spectral_radius(g).rho
        min_gain = min(min_gain, gain)
        if gain > PERRON_MARGIN:
            report.conclusion_holds += 1
        else:
            failures.append(f"{write_graph6(g)}+({i},{j})")
    report.exceptions_found = failures
    report.details = {"min_gain": min_gain}
    report.verdict = "pass" if not failures else "fail"
    return report


def _sweep_lemma7(grid: dict) -> SuiteReport:
    report = SuiteReport(suite={"suite": "lemma-sweep", "lemma": "lemma7", **grid})
    rng = random.Random(grid.get("seed", 1))
    failures = []
    worst = 0.0
    for _ in range(grid.get("count", 50)):
        if rng.random() < 0.5:
            n = rng.randint(4, 30)
            s = rng.randint(1, n // 2)
            g = build_Gs(n, s)
            cells = [range(s), range(s, n - s), range(n - s, n)]
        else:
            s = rng.randint(1, 4)
            parts = sorted((rng.randint(1, 5) for _ in range(rng.randint(1, 4))), reverse=True)
            g = clique_join(s, parts)
            cells, at = [range(s)], s
            for p in parts:
                cells.append(range(at, at + p))
                at += p
        cells = [list(c) for c in cells if len(c)]
        q = quotient_matrix(g, cells)
        report.graphs_examined += 1
        if not q.equitable:
            failures.append(f"{write_graph6(g)} partition not equitable")
            continue
        report.hypothesis_satisfying += 1
        gap = abs(q.largest_eigenvalue() - spectral_radius(g).rho)
        worst = max(worst, gap)
        if gap <= AGREEMENT_TOL:
            report.conclusion_holds += 1
        else:
            failures.append(write_graph6(g))
    report.exceptions_found = failures
    report.details = {"max_gap": worst}
    report.verdict = "pass" if not failures else "fail"
    return report


def run_lemma_sweep(which: str, grid: Optional[dict] = None) -> SuiteReport:
    start = time.perf_counter()
    grid = dict(grid or {})
    runners = {
        "lemma4": lambda: _sweep_lemma45(grid, "lemma4"),
        "lemma5": lambda: _sweep_lemma45(grid, "lemma5"),
        "lemma6": lambda: _sweep_lemma6(grid),
        "lemma7": lambda: _sweep_lemma7(grid),
        "lemma8": lambda: _sweep_lemma8(grid),
        "lemma9": lambda: _sweep_lemma9(grid),
    }
    key = which if which.startswith("lemma") else f"lemma{which}"
    if key not in runners:
        raise PreconditionError(f"unknown lemma {which!r}; expected one of {sorted(runners)}")
    report = runners[key]()
    report.wall_time = time.perf_counter() - start
    return report


# -- dispatch ---------------------------------------------------------------


def run_suite(spec: SuiteSpec, threads: Optional[int] = None) -> SuiteReport:
    if spec.suite in theorems.RULES:
        if theorems.RULES[spec.suite].kind == "size":
            return run_size_theorem_suite(spec, threads)
        return run_spectral_theorem_suite(spec, threads)
    x = spec.extra
    if spec.suite == "sharpness":
        return run_sharpness_suite(
            x.get("delta_range", [1]), x.get("n_range", [7]), x.get("k_set", [3]),
            x.get("d_rule", "all"), x.get("witness", True),
        )
    if spec.suite == "oracle-equivalence":
        return run_oracle_equivalence(x.get("n_max", spec.n or 5), spec.k or 3, x.get("n_min", 3))
    return run_lemma_sweep(x.get("lemma", "lemma8"), x.get("grid", {}))


def check_graph(g: Graph, k: int, d: Optional[int] = None) -> dict:
    """Everything the library can say about one graph at one ``k``."""
    out: dict = {
        "graph6": write_graph6(g),
        "n": g.n,
        "edges": g.num_edges,
        "connected": g.is_connected(),
        "min_degree": min_degree(g) if g.n else None,
        "k": k,
        "deficiency": deficiency_k(g, k).to_dict(),
    }
    if _witness_affordable(g.n, k):
        value, witness = mu_k(g, k)
        out["mu_k"] = {"value": value, "witness": witness.to_dict()}
    if k >= 2 and g.n >= 3 and g.is_connected():
        out["gfc_gbc"] = classify_gfc_gbc(g, k).to_dict()
    if k >= 3 and k % 2 and g.n >= 3:
        ds = [d] if d is not None else [x for x in range(1, k + 1) if (g.n - x) % 2 == 0]
        verdicts = []
        for dd in ds:
            entry = {"d": dd, "deficiency_oracle": is_kd_critical_deficiency(g, k, dd).to_dict()}
            if _witness_affordable(g.n, k):
                entry["witness_oracle"] = is_kd_critical_witness(g, k, dd).to_dict()
            verdicts.append(entry)
        out["kd_critical"] = verdicts
    elif d is not None:
        raise PreconditionError("--d needs odd k >= 3 and n >= 3")
    return out
