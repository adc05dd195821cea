"""Acceptance suite: one test per shipped claim, each printing a PASS/FAIL line.

Criteria, in order: (1) golden fixtures for sort, (2) forward-stability
oracle agreement, (3) Wheeler consistency of generated instances, (4) golden
fixture for pruning, (5) pruning oracle agreement, (6) co-lex correctness,
(7) the prefix-sorting special case, (8) performance and scaling bounds,
(9) suffix-doubling saturation.
"""

from __future__ import annotations

import functools
import random
import resource
import time

from copar.automaton import Automaton, path_dfa, reverse_automaton
from copar.colex import build_merged_graph, colex_order, suffix_doubling_ranks
from copar.examples import (
    example_loop_dfa,
    example_quasi_wheeler_nfa,
    example_unordered_nfa,
    example_width_two_dfa,
)
from copar.generators import gen_random_dfa, gen_random_nfa, gen_wheeler_nfa
from copar.oracle import (
    bisimilarity_partition,
    brute_colex_relation,
    brute_truncated_bounds,
    check_colex_axioms,
    check_wheeler_order,
    max_antichain,
    naive_coarsest_forward_stable,
    naive_prefix_sort,
)
from copar.prune import backward_walk, refine_with_pruning
from copar.refine import refine_all, wheeler_preorder
from copar.bench import bench_scaling


def _report(k: int, ok: bool, detail: str) -> None:
    print(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {k}: {detail}"


@functools.lru_cache(maxsize=1)
def _dfa_corpus() -> tuple[Automaton, ...]:
    """1000 seeded random DFAs with n <= 12, shared by criteria 5, 6 and 9."""
    out = []
    for seed in range(1000):
        rng = random.Random(seed)
        n = rng.randint(2, 12)
        out.append(gen_random_dfa(n, rng.randint(1, min(3, n - 1)), 10_000 + seed))
    return tuple(out)


def _never_contradicts_planted(parts: list[list[int]]) -> bool:
    """True when no state sits in a later part than a larger state."""
    top = -1
    for part in parts:
        if min(part) < top:
            return False
        top = max(top, max(part))
    return True


def test_criterion_1_golden_sort_fixtures():
    wheeler_preorder(example_quasi_wheeler_nfa())  # warm caches before timing
    t0 = time.perf_counter()
    center = wheeler_preorder(example_quasi_wheeler_nfa())
    left = wheeler_preorder(example_unordered_nfa())
    elapsed = time.perf_counter() - t0
    expected_quotient = Automaton(4, 2, 0, [(0, 1, 0), (0, 2, 1), (1, 2, 1), (1, 3, 1)])
    ok = (
        center.partition.parts == [[0], [1, 2], [3], [4]]
        and center.quasi_wheeler
        and center.quotient == expected_quotient
        and left.partition.parts == [[0], [1], [2], [3]]
        and not left.quasi_wheeler
        and elapsed < 0.010
    )
    _report(1, ok, f"both fixtures exact, {elapsed * 1000:.2f} ms")


def test_criterion_2_forward_stability_oracles():
    t0 = time.perf_counter()
    checked = 0
    for seed in range(1000):
        rng = random.Random(seed)
        n = rng.randint(2, 12)
        sigma = rng.randint(1, min(3, n - 1))
        a = gen_random_nfa(n, sigma, 20_000 + seed)
        sets = refine_all(a).as_sets()
        if sets != naive_coarsest_forward_stable(a):
            _report(2, False, f"forward-stable oracle disagrees at seed {seed}")
        if sets != bisimilarity_partition(reverse_automaton(a)):
            _report(2, False, f"bisimilarity oracle disagrees at seed {seed}")
        checked += 1
    elapsed = time.perf_counter() - t0
    _report(2, checked == 1000 and elapsed < 30.0, f"{checked} NFAs, {elapsed:.1f} s")


def test_criterion_3_wheeler_consistency():
    t0 = time.perf_counter()
    sizes = [10_000] * 3 + [random.Random(40_000 + i).randint(1_000, 5_000) for i in range(12)]
    checked = big = 0
    for i in range(500):
        rng = random.Random(30_000 + i)
        n = sizes[i] if i < len(sizes) else rng.randint(2, 60)
        big += n >= 1_000
        sigma = rng.randint(1, min(3, n - 1))
        m = rng.randint(n - 1, min(3 * (n - 1), (sigma + 1) * (n - 1)))
        a = gen_wheeler_nfa(n, m, sigma, 30_000 + i)
        res = wheeler_preorder(a)
        if not res.quasi_wheeler:
            _report(3, False, f"instance {i} not recognized as quasi-Wheeler")
        if not check_wheeler_order(res.quotient, list(range(res.quotient.n))).ok:
            _report(3, False, f"instance {i}: quotient order fails the axioms")
        if not _never_contradicts_planted(res.partition.parts):
            _report(3, False, f"instance {i}: output contradicts the planted order")
        checked += 1
    elapsed = time.perf_counter() - t0
    ok = checked == 500 and big == 15 and elapsed < 60.0
    _report(3, ok, f"{checked} NFAs ({big} with n >= 1000, 3 with n = 10^4), {elapsed:.1f} s")


def test_criterion_4_golden_pruning_fixture():
    a = example_loop_dfa()
    inf_p = refine_with_pruning(a, "inf")
    sup_p = refine_with_pruning(a, "sup")
    ok = (
        inf_p.deleted_edges() == [(1, 2, 0)]
        and backward_walk(inf_p, 2, 6) == (0,) * 6
        and sup_p.deleted_edges() == [(2, 2, 0)]
        and backward_walk(sup_p, 2, 6) == (1, 0)
    )
    _report(4, ok, 'deleted edges and walks "aaaaaa" / "ba" exact')


def test_criterion_5_pruning_oracle_agreement():
    t0 = time.perf_counter()
    checked = 0
    for a in _dfa_corpus():
        k = 2 * a.n
        bounds = brute_truncated_bounds(a, k)
        inf_p = refine_with_pruning(a, "inf")
        sup_p = refine_with_pruning(a, "sup")
        for v in range(a.n):
            if backward_walk(inf_p, v, k) != bounds[v][0]:
                _report(5, False, f"inf walk differs at state {v} of DFA {checked}")
            if backward_walk(sup_p, v, k) != bounds[v][1]:
                _report(5, False, f"sup walk differs at state {v} of DFA {checked}")
        checked += 1
    elapsed = time.perf_counter() - t0
    _report(5, checked == 1000, f"{checked} DFAs, both directions, {elapsed:.1f} s")


def test_criterion_6_colex_correctness():
    t0 = time.perf_counter()
    checked = 0
    for a in _dfa_corpus():
        res = colex_order(a)
        rel = res.relation_pairs()
        if rel != brute_colex_relation(a):
            _report(6, False, f"relation differs on DFA {checked}")
        if not check_colex_axioms(a, rel).ok:
            _report(6, False, f"axioms fail on DFA {checked}")
        if res.width != max_antichain(a.n, rel):
            _report(6, False, f"chain count not minimum on DFA {checked}")
        checked += 1
    witness = colex_order(example_width_two_dfa())
    elapsed = time.perf_counter() - t0
    ok = checked == 1000 and len(witness.chains) == 2
    _report(6, ok, f"{checked} DFAs, width-2 witness has 2 chains, {elapsed:.1f} s")


def test_criterion_7_prefix_sorting_special_case():
    t0 = time.perf_counter()
    lengths = [10_000] + [3_000] * 8 + [0] * 91
    checked = 0
    for i, forced in enumerate(lengths):
        rng = random.Random(50_000 + i)
        length = forced or rng.randint(1, 1_500)
        sigma = rng.randint(1, 4)
        s = [rng.randrange(sigma) for _ in range(length)]
        parts = refine_all(path_dfa(s)).parts
        if any(len(p) != 1 for p in parts):
            _report(7, False, f"string {i}: non-singleton part")
        if [p[0] for p in parts] != naive_prefix_sort(s):
            _report(7, False, f"string {i}: order differs from the naive prefix sort")
        checked += 1
    elapsed = time.perf_counter() - t0
    _report(7, checked == 100 and elapsed < 30.0, f"{checked} strings, {elapsed:.1f} s")


def test_criterion_8_performance_and_scaling():
    n = 1_000_000
    big = gen_wheeler_nfa(n, 3 * (n - 1), 3, 1729)
    t0 = time.perf_counter()
    res = wheeler_preorder(big)
    elapsed = time.perf_counter() - t0
    peak_gb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024**2
    cap = n.bit_length()  # floor(log2 n) + 1 for non-powers of two
    if not (elapsed <= 60.0 and peak_gb <= 4.0):
        _report(8, False, f"n=10^6 run took {elapsed:.1f} s, peak {peak_gb:.2f} GB")
    if res.max_splitter_count > cap:
        _report(8, False, f"splitter counter {res.max_splitter_count} exceeds {cap}")
    sizes = [5**6 * 2**i for i in range(5)]
    rows = bench_scaling(sizes, trials=3, ops=("sort",), seed=1729)
    ratios = [b.median_ms / a.median_ms for a, b in zip(rows, rows[1:])]
    if any(r.max_splitters > r.n.bit_length() for r in rows):
        _report(8, False, "splitter counter exceeds floor(log2 n) + 1 in the scaling suite")
    ok = all(r <= 3.0 for r in ratios)
    detail = (
        f"n=10^6 in {elapsed:.1f} s, peak {peak_gb:.2f} GB, "
        f"doubling ratios {['%.2f' % r for r in ratios]}"
    )
    _report(8, ok, detail)


def test_criterion_9_suffix_doubling_saturation():
    checked = 0
    for a in _dfa_corpus():
        g = build_merged_graph(refine_with_pruning(a, "inf"), refine_with_pruning(a, "sup"))
        base = suffix_doubling_ranks(g)
        extra = suffix_doubling_ranks(g, extra_rounds=1)
        if base.ranks.tolist() != extra.ranks.tolist():
            _report(9, False, f"extra round changed ranks on DFA {checked}")
        checked += 1
    _report(9, checked == 1000, f"{checked} DFAs, one extra round is always a no-op")
