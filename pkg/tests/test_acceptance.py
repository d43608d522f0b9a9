"""Acceptance criteria, one test each.

Every test carries a ``criterion`` marker; conftest.py prints a PASS/FAIL line per
criterion at the end of the run.  Run standalone with ``python tests/test_acceptance.py``.
"""

import random
import time
from itertools import combinations

import networkx as nx
import pytest

from vt6p import graph as G
from vt6p.actions import load_actions, s12_on_pairs
from vt6p.catalog import (Budgets, data_path, load_catalog, run_all, shipped_catalog,
                          strip_timing)
from vt6p.graph import regular_valency
from vt6p.hamilton import (ABSENT, check_certificate, hamilton_cycle, hamilton_path,
                           jackson_applies)
from vt6p.iso import are_isomorphic, automorphism_gens, is_vertex_transitive
from vt6p.lift import lift_cycle
from vt6p.orbital import dedupe, gog, orbital_graphs, relevant_set
from vt6p.perm import PermGroup, block_systems, find_semiregular

import oracles
from test_hamilton import jackson_corpus, random_corpus
from test_lift import _all_choices, _covering_subgraph, _steps, random_quotient
from test_perm import CORPUS, _intersection_property


def criterion(num, title):
    return pytest.mark.criterion(num, title)


def table_entries():
    return (load_catalog(data_path("tables_qprim.json"))
            + load_catalog(data_path("tables_prim.json")))


@criterion(1, "catalog Hamiltonicity (29 quasiprimitive + 7 primitive entries)")
def test_c1_catalog_hamiltonicity():
    entries = table_entries()
    assert len(entries) == 36
    t0 = time.perf_counter()
    reports, summary = run_all(entries, Budgets(), jobs=1)
    total = time.perf_counter() - t0
    for e, r in zip(entries, reports):
        assert r.hamilton["kind"] == "found", e.id
        assert check_certificate(e.build(), r.hamilton["certificate"], True), e.id
        assert r.wall_time <= 60, (e.id, r.wall_time)
    assert summary["cycle_found"] == 36
    assert total <= 15 * 60


@criterion(2, "structural cross-check: order 6p and tabulated valency")
def test_c2_structure():
    acknowledged = []
    entries = [e for e in shipped_catalog() if not e.placeholder]
    for e in entries:
        X = e.build()
        if e.kind == "symbol":
            assert X.n == 6 * e.p, e.id
        if e.expected_order is not None:
            assert X.n == e.expected_order, e.id
        if e.expected_valency is not None:
            assert regular_valency(X) == e.expected_valency, e.id
        acknowledged += [(e.id, n["field"], n["printed"]) for n in e.notes]
    assert ("qprim_row10/X_2", "expected_order", 5) in acknowledged
    reports, _ = run_all(entries, Budgets(), jobs=1)
    assert all(not r.discrepancies for r in reports)


@criterion(3, "negative instance: truncated Petersen and Petersen")
def test_c3_negative_instances():
    X = G.truncation(G.petersen())
    t0 = time.perf_counter()
    r = hamilton_cycle(X)
    assert r.kind == ABSENT and time.perf_counter() - t0 <= 300
    p = hamilton_path(X)
    assert p.found and check_certificate(X, p.certificate, False)
    P = G.petersen()
    t0 = time.perf_counter()
    assert hamilton_cycle(P).kind == ABSENT
    p = hamilton_path(P)
    assert p.found and check_certificate(P, p.certificate, False)
    assert time.perf_counter() - t0 <= 10


@criterion(4, "suborbit counts of A5 on the cosets of Z2")
def test_c4_a5_suborbits():
    o = orbital_graphs(load_actions()["qprim_row1"].build())
    t = o.table
    nontrivial = t.nontrivial()
    assert len(nontrivial) == 15
    selfp = [i for i in nontrivial if t.pairing[i] == i]
    assert len(selfp) == 7
    assert sorted(len(t.suborbits[i]) for i in nontrivial) == [1] + [2] * 14
    for i in selfp:
        assert not G.is_connected(gog(o, [i]))
    merged = [gog(o, (i, t.pairing[i])) for i in nontrivial if t.pairing[i] > i]
    classes = dedupe(merged)
    assert len(classes) == 3
    assert sum(1 for rep, _ in classes if not G.is_connected(merged[rep])) == 1
    length2 = [i for i in selfp if len(t.suborbits[i]) == 2]
    unions = [gog(o, pair) for pair in combinations(length2, 2)]
    connected = [X for X in unions if G.is_connected(X)]
    assert len(dedupe(connected)) == 5


@criterion(5, "S12 on pairs: suborbits, relevant set, Jackson")
def test_c5_s12_pairs():
    o = orbital_graphs(s12_on_pairs())
    t = o.table
    assert sorted(len(t.suborbits[i]) for i in t.nontrivial()) == [20, 45]
    rel = relevant_set(o)
    assert len(rel) == 1 and regular_valency(rel[0][1]) == 20
    r = hamilton_cycle(rel[0][1])
    assert r.found and check_certificate(rel[0][1], r.certificate, True)
    big = next(X for X in o.graphs if regular_valency(X) == 45)
    assert jackson_applies(big)


@criterion(6, "lift dichotomy on 200 random voltage quotients")
def test_c6_lift_dichotomy():
    rng = random.Random(6)
    for _ in range(200):
        n = rng.choice([3, 5, 7])
        m = rng.randint(3, 6)
        k = rng.randint(3, m)
        cyc = rng.sample(range(m), k)
        q = random_quotient(rng, n, m, cyc)
        sets = [sorted(q.voltages[(min(a, b), max(a, b))]) for a, b in _steps(cyc)]
        choice = [rng.choice(s) for s in sets]
        res = lift_cycle(q, cyc, choice)
        nv, edges, _ = _covering_subgraph(q, cyc, [[c] for c in choice])
        lengths = oracles.simple_cycles_lengths(nv, edges)
        expected = [k * n] if res.kind == "full_cycle" else [k] * n
        assert lengths == expected
        assert (res.sigma != 0) == (res.kind == "full_cycle")
        # with every stored voltage, a kn-cycle exists iff some selection has nonzero sum
        nv, edges, _ = _covering_subgraph(q, cyc, sets)
        some_nonzero = any(lift_cycle(q, cyc, list(ch)).sigma != 0
                           for ch in _all_choices(q, cyc, limit=10**4))
        if nv <= 24:
            assert oracles.ham_cycle_exists(nv, edges) == some_nonzero


def _nx_graph(X):
    g = nx.Graph()
    g.add_nodes_from(range(X.n))
    g.add_edges_from(X.edges())
    return g


@criterion(7, "Jackson property suite and solver vs brute force")
def test_c7_jackson():
    corpus = jackson_corpus()
    assert len(corpus) == 100
    hits = 0
    for X in corpus:
        g = _nx_graph(X)
        k = regular_valency(X)
        if k is not None and 3 * k >= X.n and nx.is_biconnected(g):
            hits += 1
            r = hamilton_cycle(X)
            assert r.found and check_certificate(X, r.certificate, True)
        if X.n <= 9:
            assert hamilton_cycle(X).found == oracles.ham_cycle_exists(X.n, X.edges())
            assert hamilton_path(X).found == oracles.ham_path_exists(X.n, X.edges())
    assert hits > 0
    for X in random_corpus(seed=7, count=100):
        assert hamilton_cycle(X).found == oracles.ham_cycle_exists(X.n, X.edges())
        assert hamilton_path(X).found == oracles.ham_path_exists(X.n, X.edges())


@criterion(8, "cited families: prisms, GP(3p,3k), order-6 graphs")
def test_c8_families():
    for n in (15, 21):
        X = G.cartesian(G.cycle(n), G.complete(2))
        r = hamilton_cycle(X)
        assert r.found and check_certificate(X, r.certificate, True)
    for p in (5, 7):
        for k in range(1, (p + 1) // 2):
            X = G.generalized_petersen(3 * p, 3 * k)
            r = hamilton_cycle(X)
            assert r.found and check_certificate(X, r.certificate, True)
    six = [G.named(name) for name in G.NAMED_ORDER6]
    assert len(six) == 5
    for X, Y in combinations(six, 2):
        assert not are_isomorphic(X, Y)
    for X in six:
        assert is_vertex_transitive(X) is True
        for u, v in X.edges():
            r = hamilton_path(X, endpoints=(u, v))
            assert r.found and check_certificate(X, r.certificate, True)


@criterion(9, "block systems vs exhaustive partitions; intersection property")
def test_c9_blocks():
    for grp in CORPUS:
        assert grp.degree <= 8 and grp.is_transitive()
        gens = [g.images for g in grp.generators]
        brute = oracles.minimal_partitions(oracles.invariant_partitions(grp.degree, gens))
        assert {bs.key() for bs in block_systems(grp)} == brute
    tp = PermGroup(30, tuple(automorphism_gens(G.truncation(G.petersen()))))
    pairs = 0
    for grp in CORPUS + [tp]:
        n = grp.degree
        for q in (2, 3, 5, 7):
            if n % q:
                continue
            rho = find_semiregular(grp, n // q, q)
            if rho is None:
                continue
            for bs in block_systems(grp):
                _intersection_property(grp, bs, rho, q)
                pairs += 1
    assert pairs > 0


@criterion(10, "determinism of full catalog runs")
def test_c10_determinism():
    entries = shipped_catalog()
    r1, s1 = run_all(entries, Budgets(), jobs=1)
    r2, s2 = run_all(entries, Budgets(), jobs=2)
    r3, s3 = run_all(entries, Budgets(), jobs=1)
    j1 = [strip_timing(r.to_json()) for r in r1]
    assert j1 == [strip_timing(r.to_json()) for r in r2]
    assert j1 == [strip_timing(r.to_json()) for r in r3]
    assert s1 == s2 == s3


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
