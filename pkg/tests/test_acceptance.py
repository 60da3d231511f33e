"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and immediately when run with ``-s``.
Run directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import time
from functools import lru_cache

from digraph_ideals.analysis import (
    DIRECTED,
    UNDIRECTED,
    check_cycle_in_linear_ideal,
    classify_generators,
    cycle_binomial,
    cycle_space_dimension,
    diedge_ideal,
    divertex_ideal,
    edge_vars,
    extended_diedge_ideal,
    extended_linear_ideal,
    in_span,
    is_dag,
    is_directly_bipartite,
    is_upd,
    linear_edge_ideal,
    linear_form_vector,
    minimal_vertex_covers,
    source_sink_covers,
    undirected_cycles_via_orientation,
    unique_directed_paths,
)
from digraph_ideals.graphs import (
    build_h_graph,
    build_k_graph,
    connected_components,
    cycle_graph,
    enumerate_cycles_oracle,
    incidence_matrix,
    is_bipartite,
    is_perfect_matching,
    perfect_matching,
    random_digraph,
)
from digraph_ideals.groebner import IdealBasis, contains, eliminate, is_groebner, reduced_groebner
from digraph_ideals.poly import Polynomial
from digraph_ideals.toric import toric_by_elimination, toric_by_saturation

from helpers import D1, D2, D4, sample_digraph, sigma1, sigma2

RESULTS: list = []
N_PROPERTY = 200
N_CROSS = 50


def report(tag: str, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {tag:<5} {title}" + (f" -- {detail}" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def family():
    """The 200 seeded digraphs with their diedge ideals and oracle cycles."""
    out = []
    for k in range(N_PROPERTY):
        D = sample_digraph(k)
        out.append((k, D, diedge_ideal(D), enumerate_cycles_oracle(D)))
    return tuple(out)


def lin_span_equal(basis, texts, D):
    ev = edge_vars(D)
    a = [linear_form_vector(p) for p in basis]
    b = [linear_form_vector(Polynomial.parse(t, ev)) for t in texts]
    return len(a) == len(b) and all(in_span(v, b) for v in a) and all(in_span(v, a) for v in b)


def test_criterion_01_d1_ideal_and_cycles():
    t0 = time.perf_counter()
    I = diedge_ideal(D1, sigma1())
    rep = classify_generators(I, D1)
    elapsed = time.perf_counter() - t0
    want_ideal = {"e1*e2*e3 - 1", "e1*e2*e5 - e4", "e3*e4 - e5"}
    want_cycles = {
        frozenset({"e1", "e2", "e3"}): DIRECTED,
        frozenset({"e3", "e4", "e5"}): UNDIRECTED,
        frozenset({"e1", "e2", "e4", "e5"}): UNDIRECTED,
    }
    ok = set(I.rendered()) == want_ideal and rep.edge_sets() == want_cycles and elapsed < 1.0
    report("1", "D1 ideal under sigma1 and its three cycles", ok, f"{sorted(I.rendered())}, {elapsed:.3f}s")


def test_criterion_02_d2_fixture():
    I = diedge_ideal(D2, sigma2())
    rep = classify_generators(I, D2)
    ok = (
        I.rendered() == ["e1*e2 - e3"]
        and is_dag(D2).dag
        and [(set(c.edges), c.cls, c.length) for c in rep.cycles] == [({"e1", "e2", "e3"}, UNDIRECTED, 3)]
    )
    report("2", "D2 ideal, DAG, single undirected 3-cycle", ok, str(I.rendered()))


def test_criterion_03_direct_bipartiteness():
    r4 = is_directly_bipartite(D4)
    ok = (
        divertex_ideal(D4).as_set() == {Polynomial.parse("v5*v2*v4 - z1*z3", divertex_ideal(D4).vars)}
        and r4.directly_bipartite
        and set(r4.sources) == {"v1", "v3"}
        and set(r4.sinks) == {"v2", "v4", "v5"}
        and not is_directly_bipartite(D1).directly_bipartite
        and not is_directly_bipartite(D2).directly_bipartite
    )
    report("3", "D4 divertex ideal and bipartition; D1, D2 not directly bipartite", ok,
           str(divertex_ideal(D4).rendered()))


def test_criterion_04_linear_fixtures():
    b1 = linear_edge_ideal(D1, sigma1())
    b2 = linear_edge_ideal(D2, sigma2())
    ok = lin_span_equal(b1, ["e3 + e4 - e5", "e1 + e2 - e4 + e5"], D1) and lin_span_equal(b2, ["e1 + e2 - e3"], D2)
    report("4", "linear edge ideals of D1 (dim 2) and D2 (dim 1)", ok,
           f"{[str(p) for p in b1]} / {[str(p) for p in b2]}")


def test_criterion_05_cover_fixtures():
    covers = minimal_vertex_covers(build_k_graph(D1))
    r1, r2 = source_sink_covers(D1), source_sink_covers(D2)
    ok = (
        frozenset({"z1", "z2", "z3"}) in covers
        and frozenset({"v1", "v2", "v3", "v4", "v5"}) in covers
        and set(r1.source_covers) == {frozenset({"v1", "v2", "v3"})}
        and set(r1.sink_covers) == {frozenset({"v1", "v2", "v3", "v4", "v5"})}
        and set(r2.source_covers) == {frozenset({"v1", "v2", "v3", "v4"})}
        and set(r2.sink_covers) == {frozenset({"v2", "v3", "v5"})}
    )
    report("5", "vertex covers of K_D1; source/sink covers of D1, D2", ok)


def test_criterion_06_elimination_equals_saturation():
    cases = [(D1, sigma1()), (D2, sigma2())]
    rng = random.Random(6)
    for _ in range(N_CROSS):
        n = rng.randint(2, 6)
        m = rng.randint(0, min(10, n * (n - 1) // 2))
        cases.append((random_digraph(n, m, rng.randrange(1 << 30)), None))
    bad = []
    for k, (D, order) in enumerate(cases):
        ev = edge_vars(D)
        M = incidence_matrix(D)
        a = toric_by_elimination(M, ev, order)
        b = toric_by_saturation(M, ev, order)
        if a.as_set() != b.as_set():
            bad.append(k)
    report("6", f"elimination and saturation agree on {len(cases)} digraphs", not bad, f"mismatches {bad}")


def test_criterion_07a_generators_are_cycles():
    bad = []
    for k, D, I, cycles in family():
        oracle = {c.edge_set: (DIRECTED if c.directed else UNDIRECTED) for c in cycles}
        try:
            rep = classify_generators(I, D)
        except ValueError:
            bad.append(k)
            continue
        if any(oracle.get(frozenset(c.edges)) != c.cls for c in rep.cycles):
            bad.append(k)
    report("7(a)", f"generator cycles confirmed by the oracle on {N_PROPERTY} digraphs", not bad, f"counterexamples {bad}")


def test_criterion_07b_cycles_belong_to_both_ideals():
    bad = []
    for k, D, I, cycles in family():
        ev = edge_vars(D)
        basis = linear_edge_ideal(D)
        for c in cycles:
            if not contains(I, cycle_binomial(c, ev)) or not check_cycle_in_linear_ideal(c, D, basis):
                bad.append(k)
                break
    report("7(b)", "every oracle cycle in the diedge ideal and the linear span", not bad, f"counterexamples {bad}")


def test_criterion_07c_dag():
    bad = [k for k, D, I, cycles in family() if is_dag(D, gb=I).dag != (not any(c.directed for c in cycles))]
    report("7(c)", "is_dag equals absence of directed oracle cycles", not bad, f"counterexamples {bad}")


def test_criterion_07d_upd():
    bad = [k for k, D, I, _ in family() if is_upd(D, gb=I).upd != unique_directed_paths(D)]
    detail = f"counterexamples {bad}"
    if bad:
        D = family()[bad[0]][1]
        detail += "; first: " + ", ".join(f"{e.tail}->{e.head}" for e in D.edges)
    report("7(d)", "is_upd equals the exhaustive unique-path check", not bad, detail)


def test_criterion_08_structure():
    bad = []
    for k, D, _, _ in family():
        H = build_h_graph(D)
        M = perfect_matching(H)
        c = connected_components(D)
        dim = cycle_space_dimension(D)
        if (
            is_bipartite(H) is None
            or M is None
            or not is_perfect_matching(H, M)
            or dim != D.m - D.n + c
            or len(linear_edge_ideal(D)) != dim
        ):
            bad.append(k)
    report("8", "H_D bipartite with perfect matching; cycle space dimension m - n + c", not bad,
           f"counterexamples {bad}")


def test_criterion_09_groebner_engine():
    bad = []
    produced = [I for _, _, I, _ in family()]
    fixtures = [
        (extended_diedge_ideal(D1, sigma1()), D1.m),
        (extended_diedge_ideal(D2, sigma2()), D2.m),
        (extended_diedge_ideal(D4), D4.m),
        (extended_linear_ideal(D1, sigma1()), D1.m),
        (extended_linear_ideal(D2, sigma2()), D2.m),
    ]
    for raw, m in fixtures:
        produced.append(reduced_groebner(raw))
        produced.append(eliminate(raw, range(m, len(raw.vars))))
    produced.append(divertex_ideal(D4))
    for k, G in enumerate(produced):
        if not is_groebner(G):
            bad.append(f"gb{k}")
    rng = random.Random(9)
    for f, (raw, _) in enumerate(fixtures):
        base = reduced_groebner(raw).as_set()
        gens = list(raw.generators)
        for _ in range(10):
            rng.shuffle(gens)
            if reduced_groebner(IdealBasis.of(gens, raw.vars, raw.order)).as_set() != base:
                bad.append(f"perm{f}")
                break
    report("9", f"{len(produced)} bases pass the S-polynomial check; permutation invariance", not bad,
           f"failures {bad}")


def test_criterion_10_orientation():
    r5 = undirected_cycles_via_orientation(cycle_graph(5), seed=0)
    r4 = undirected_cycles_via_orientation(cycle_graph(4), seed=0)
    ok = [c.length for c in r5.cycles] == [5] and [c.length for c in r4.cycles] == [4]
    report("10", "orientation finds the single cycle of C5 and C4", ok,
           f"C5 {list(r5.ideal)}, C4 {list(r4.ideal)}")


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s"]))
