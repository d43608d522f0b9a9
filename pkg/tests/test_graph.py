import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vt6p import graph as G
from vt6p.catalog import find_entry
from vt6p.graph import (BicirculantSymbol, FruchtSpec, Graph, GraphError, SymbolMatrix)
from vt6p.graphio import (bicirculant_from_json, bicirculant_to_json, format_graph,
                          from_edgelist, from_graph6, frucht_from_json, frucht_to_json,
                          read_graph, symbol_from_json, symbol_to_json, to_edgelist, to_graph6)
from vt6p.iso import (are_isomorphic, automorphism_gens, find_isomorphism, graph_invariant,
                      is_vertex_transitive)
from vt6p.lift import symbol_rotation

import oracles


def pm(p, *xs):
    return frozenset(x % p for x in xs) | frozenset((-x) % p for x in xs)


def nxg(X: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(X.n))
    g.add_edges_from(X.edges())
    return g


# --- Graph basics ------------------------------------------------------------

def test_graph_invariants_enforced():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 5)])
    with pytest.raises(GraphError):
        Graph.from_rows([0b10, 0b00])  # asymmetric
    X = Graph(4, [(0, 1), (1, 0), (2, 3)])
    assert X.edge_count() == 2 and X.adjacent(1, 0) and not X.adjacent(0, 2)


@settings(max_examples=60)
@given(st.integers(0, 14).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))),
                         max_size=40))))
def test_graph_from_edges_symmetric_no_loops(data):
    n, edges = data
    edges = [(u, v) for u, v in edges if u != v and n]
    X = Graph(n, edges)
    for u in range(n):
        assert not X.adjacent(u, u)
        for v in range(n):
            assert X.adjacent(u, v) == X.adjacent(v, u)
    assert X.edge_set() == {(min(e), max(e)) for e in edges}


def test_connectivity_examples():
    C6 = G.cycle(6)
    assert G.is_connected(C6) and G.is_two_connected(C6) and G.regular_valency(C6) == 2
    two_tri = G.disjoint_union(G.complete(3), G.complete(3))
    assert not G.is_connected(two_tri)
    P = G.petersen()
    Pm = G.induced(P, range(1, 10))
    assert G.is_connected(Pm) and G.is_two_connected(Pm)
    assert G.regular_valency(G.path(3)) is None


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.floats(0.1, 0.7), st.integers(0, 10**6))
def test_articulation_points_match_networkx(n, prob, seed):
    g = nx.gnp_random_graph(n, prob, seed=seed)
    X = Graph(n, g.edges())
    assert G.articulation_points(X) == set(nx.articulation_points(g))
    assert G.is_connected(X) == (n > 0 and nx.is_connected(g))
    assert G.girth(X) == (None if nx.is_forest(g) else nx.girth(g))


def test_induced_and_bipartite_between():
    assert G.induced(G.complete(6), [1, 3, 5]) == G.complete(3)
    spokes = G.bipartite_between(G.petersen(), range(5), range(5, 10))
    assert spokes.edge_count() == 5 and all(d <= 1 for d in spokes.degrees())
    assert len(G.components(G.induced(spokes, range(10)))) == 5
    with pytest.raises(GraphError):
        G.bipartite_between(G.petersen(), [0, 1], [1, 2])


def test_induced_orbit_of_table_graph_is_cycle():
    X = find_entry("qprim_row1/X_4").build()
    # R11 = {+-1} in this column, so orbit S_1 induces a 5-cycle
    C = G.induced(X, range(5, 10))
    assert are_isomorphic(C, G.cycle(5))


# --- constructors ------------------------------------------------------------

def test_symbol_examples():
    X1 = find_entry("qprim_row1/X_1").build()
    assert X1.n == 30 and G.regular_valency(X1) == 6
    X4 = find_entry("qprim_row2/X_4").build()
    assert X4.n == 42 and G.regular_valency(X4) == 6
    empty = SymbolMatrix.from_upper(5, {})
    assert G.from_symbol(empty) == G.empty(30)


def test_symbol_errors():
    with pytest.raises(GraphError):
        SymbolMatrix.from_upper(5, {(0, 1): [7]})
    with pytest.raises(GraphError):
        SymbolMatrix.from_upper(5, {(0, 0): [0]})
    with pytest.raises(GraphError):
        SymbolMatrix.from_upper(5, {(0, 1): [1], (1, 0): [1]})  # should be -1
    with pytest.raises(GraphError):
        SymbolMatrix.from_upper(5, {(2, 2): [1]})  # diagonal must be +- closed


def random_symbol(rng, p):
    given = {}
    for i in range(6):
        given[(i, i)] = pm(p, *rng.sample(range(1, p), rng.randint(0, 2)))
        for j in range(i + 1, 6):
            given[(i, j)] = frozenset(rng.sample(range(p), rng.randint(0, 2)))
    return SymbolMatrix.from_upper(p, given)


@pytest.mark.parametrize("p", [5, 7])
def test_symbol_rotation_is_automorphism(p):
    rng = random.Random(p)
    rho = symbol_rotation(p)
    for _ in range(100):
        sym = random_symbol(rng, p)
        X = G.from_symbol(sym)
        assert X.n == 6 * p
        assert all(X.adjacent(rho(u), rho(v)) for u, v in X.edges())
        # the stored relation: u_i^a ~ u_j^b iff b - a in R[i][j]
        for i in range(6):
            for j in range(6):
                for r in range(p):
                    assert X.adjacent(i * p, j * p + r) == (r in sym.entries[i][j] and
                                                            (i, r) != (j, 0))


def test_frucht_examples():
    assert G.from_frucht(FruchtSpec(1, 6, (pm(6, 1),))) == G.cycle(6)
    pet = G.from_frucht(FruchtSpec(2, 5, (pm(5, 1), pm(5, 2)), ((0, 1, frozenset({0})),)))
    assert oracles.isomorphic(10, pet.edges(), 10, G.PETERSEN_EDGES)
    k33 = G.from_frucht(FruchtSpec(2, 3, (frozenset(), frozenset()),
                                   ((0, 1, frozenset({0, 1, 2})),)))
    assert k33 == G.complete_bipartite(3, 3)
    with pytest.raises(GraphError):
        FruchtSpec(2, 5, (pm(5, 1), pm(5, 1)), ((0, 1, frozenset({5})),))
    with pytest.raises(GraphError):
        FruchtSpec(1, 5, (frozenset({1}),))  # not symmetric
    with pytest.raises(GraphError):
        FruchtSpec(2, 5, (frozenset(), frozenset()), ((0, 1, frozenset()), (0, 1, frozenset())))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(2, 8), st.randoms(use_true_random=False))
def test_frucht_rotation_is_automorphism(m, n, rng):
    inner = tuple(pm(n, *rng.sample(range(1, n), rng.randint(0, min(2, n - 1)))) for _ in range(m))
    arcs = tuple((i, k, frozenset(rng.sample(range(n), rng.randint(0, 2))))
                 for i in range(m) for k in range(m) if i < k and rng.random() < 0.7)
    X = G.from_frucht(FruchtSpec(m, n, inner, arcs))
    rot = G.orbit_rotation(m, n)
    assert X.is_automorphism(rot)


def test_bicirculant_examples():
    pet = G.bicirculant(BicirculantSymbol(5, pm(5, 1), pm(5, 2), frozenset({0})))
    assert oracles.isomorphic(10, pet.edges(), 10, G.PETERSEN_EDGES)
    mm = G.bicirculant(BicirculantSymbol(4, frozenset(), frozenset(), frozenset({0})))
    assert len(G.components(mm)) == 4 and mm.edge_count() == 4
    for k in (1, 2):
        X = G.bicirculant(BicirculantSymbol(15, pm(15, 3 * k), pm(15, 1), frozenset({0})))
        gp = G.generalized_petersen(15, 3 * k)
        # swapping the two orbits turns GP(15, 3k) into this symbol
        assert are_isomorphic(X, gp)
    with pytest.raises(GraphError):
        BicirculantSymbol(5, frozenset({1}), frozenset(), frozenset({0}))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), st.randoms(use_true_random=False))
def test_bicirculant_symbol_round_trip(n, rng):
    S = pm(n, *rng.sample(range(1, n), rng.randint(0, min(2, n - 1))))
    R = pm(n, *rng.sample(range(1, n), rng.randint(0, min(2, n - 1))))
    T = frozenset(rng.sample(range(n), rng.randint(0, min(3, n))))
    sym = BicirculantSymbol(n, S, R, T)
    X = G.bicirculant(sym)
    assert G.bicirculant_symbol(X, G.orbit_rotation(2, n), 0, n) == sym


def test_generalized_petersen():
    assert oracles.isomorphic(10, G.generalized_petersen(5, 2).edges(), 10, G.PETERSEN_EDGES)
    cube = nx.hypercube_graph(3)
    cube = nx.convert_node_labels_to_integers(cube)
    assert are_isomorphic(G.generalized_petersen(4, 1), Graph(8, cube.edges()))
    gp = G.generalized_petersen(15, 3)
    assert gp.n == 30 and G.regular_valency(gp) == 3
    for bad in (0, 8):
        with pytest.raises(GraphError):
            G.generalized_petersen(15, bad)


def test_products():
    prism = G.cartesian(G.cycle(15), G.complete(2))
    assert prism.n == 30 and G.regular_valency(prism) == 3
    k222 = G.wreath(G.complete(3), G.empty(2))
    assert are_isomorphic(k222, Graph(6, nx.complete_multipartite_graph(2, 2, 2).edges()))
    assert G.regular_valency(k222) == 4
    Y = G.petersen()
    assert G.cartesian(G.complete(1), Y) == Y


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_product_counts(a, b, seed):
    X = Graph(a, nx.gnp_random_graph(a, 0.5, seed=seed).edges())
    Y = Graph(b, nx.gnp_random_graph(b, 0.5, seed=seed + 1).edges())
    C = G.cartesian(X, Y)
    W = G.wreath(X, Y)
    assert C.n == W.n == a * b
    assert C.edge_count() == X.edge_count() * b + a * Y.edge_count()
    assert W.edge_count() == X.edge_count() * b * b + a * Y.edge_count()
    assert are_isomorphic(C, Graph(a * b, nx.convert_node_labels_to_integers(
        nx.cartesian_product(nxg(X), nxg(Y))).edges()))


def test_truncation():
    tk4 = G.truncation(G.complete(4))
    assert tk4.n == 12 and G.regular_valency(tk4) == 3
    tp = G.truncation(G.petersen())
    assert tp.n == 30 and G.regular_valency(tp) == 3
    assert G.truncation(G.complete_bipartite(3, 3)).n == 18
    # a different corner matching gives an isomorphic graph
    rng = random.Random(1)
    order = [rng.sample(G.complete(4).neighbors(v), 3) for v in range(4)]
    assert are_isomorphic(G.truncation(G.complete(4), order), tk4)
    with pytest.raises(GraphError):
        G.truncation(G.cycle(5))


def test_named():
    assert G.regular_valency(G.named("C6")) == 2 and G.named("C6").n == 6
    P = G.named("petersen")
    assert G.regular_valency(P) == 3 and P.n == 10 and G.girth(P) == 5
    cox = G.named("coxeter")
    assert cox.n == 28 and G.regular_valency(cox) == 3 and G.girth(cox) == 7
    assert is_vertex_transitive(cox)
    with pytest.raises(GraphError):
        G.named("heawood?")


def test_five_order6_graphs():
    graphs = [G.named(k) for k in G.NAMED_ORDER6]
    for i, X in enumerate(graphs):
        assert X.n == 6 and G.is_connected(X) and is_vertex_transitive(X)
        for Y in graphs[i + 1:]:
            assert not are_isomorphic(X, Y)
            assert not oracles.isomorphic(6, X.edges(), 6, Y.edges())
    # networkx's atlas lists exactly these five connected vertex-transitive graphs on 6 vertices
    atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 6 and nx.is_connected(g)
             and len({d for _, d in g.degree()}) == 1]
    vt = [g for g in atlas if is_vertex_transitive(Graph(6, g.edges()))]
    assert len(vt) == 5


# --- isomorphism -------------------------------------------------------------

def _small_corpus():
    rng = random.Random(7)
    out = []
    for _ in range(120):
        n = rng.randint(1, 8)
        g = nx.gnp_random_graph(n, rng.choice([0.25, 0.4, 0.5, 0.6]), seed=rng.randrange(10**6))
        out.append(Graph(n, g.edges()))
    for k in G.NAMED_ORDER6:
        out.append(G.named(k))
    out.append(G.cycle(8))
    out.append(G.generalized_petersen(4, 1))
    return out


def test_isomorphism_matches_brute_force():
    corpus = _small_corpus()
    rng = random.Random(3)
    pairs = 0
    for X in corpus:
        # a relabelled copy must be found isomorphic with a valid map
        perm = list(range(X.n))
        rng.shuffle(perm)
        Y = X.relabel(perm)
        m = find_isomorphism(X, Y)
        assert m is not None and all(Y.adjacent(m[u], m[v]) for u, v in X.edges())
        pairs += 1
    for i in range(len(corpus)):
        for j in range(i + 1, len(corpus)):
            X, Y = corpus[i], corpus[j]
            if X.n != Y.n or X.edge_count() != Y.edge_count():
                continue
            assert are_isomorphic(X, Y) == oracles.isomorphic(X.n, X.edges(), Y.n, Y.edges())
            pairs += 1
    assert pairs > 150


def test_iso_examples():
    assert not are_isomorphic(G.cycle(6), G.complete_bipartite(3, 3))
    assert is_vertex_transitive(G.petersen())
    assert is_vertex_transitive(G.path(3)) is False


def test_vertex_transitive_hard_non_vt():
    # GP(15, 3) is regular and refinement-uniform on each orbit but not vertex-transitive
    assert is_vertex_transitive(G.generalized_petersen(15, 3)) is False
    assert is_vertex_transitive(G.generalized_petersen(10, 3)) is True
    # networkx agrees that some automorphism maps outer to inner for GP(10,3)
    gm = nx.algorithms.isomorphism.GraphMatcher(nxg(G.generalized_petersen(10, 3)),
                                                nxg(G.generalized_petersen(10, 3)))
    assert any(m[0] == 10 for m in gm.isomorphisms_iter())


def test_vertex_transitive_budget_unknown():
    assert is_vertex_transitive(G.named("coxeter"), budget=1) is None


def test_automorphism_gens_group_order():
    from vt6p.perm import PermGroup
    for X, order in ((G.petersen(), 120), (G.cycle(7), 14), (G.complete(5), 120),
                     (G.generalized_petersen(4, 1), 48), (G.truncation(G.petersen()), 120)):
        gens = automorphism_gens(X)
        assert all(X.is_automorphism(g.images) for g in gens)
        assert PermGroup(X.n, tuple(gens)).order() == order


def test_graph_invariant_is_invariant():
    rng = random.Random(11)
    for X in _small_corpus():
        perm = list(range(X.n))
        rng.shuffle(perm)
        assert graph_invariant(X) == graph_invariant(X.relabel(perm))


# --- I/O ---------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 70), st.floats(0.0, 1.0), st.integers(0, 10**6))
def test_graph6_matches_networkx(n, prob, seed):
    g = nx.gnp_random_graph(n, prob, seed=seed)
    X = Graph(n, g.edges())
    s = to_graph6(X)
    assert s == nx.to_graph6_bytes(g, header=False).decode().strip()
    assert from_graph6(s) == X
    assert from_graph6(to_graph6(X, header=True)) == X
    assert from_edgelist(to_edgelist(X)) == X


def test_graph6_known_strings():
    assert to_graph6(G.petersen()) == "IheA@GUAo"
    assert from_graph6("A_") == Graph(2, [(0, 1)])
    with pytest.raises(GraphError):
        from_graph6("IheA@")
    big = G.cycle(300)
    assert from_graph6(to_graph6(big)) == big


def test_edgelist_parsing(tmp_path):
    X = from_edgelist("# comment\n0 1\n\n1 2\n")
    assert X.n == 3 and X.edge_count() == 2
    assert from_edgelist("# n=5\n0 1\n").n == 5
    with pytest.raises(GraphError):
        from_edgelist("0 1 2\n")
    with pytest.raises(GraphError):
        from_edgelist("a b\n")
    p = tmp_path / "g.txt"
    p.write_text(format_graph(G.petersen(), "edgelist"))
    assert read_graph(p) == G.petersen()
    p.write_text(format_graph(G.petersen(), "graph6"))
    assert read_graph(p) == G.petersen()


def test_json_round_trips():
    sym = random_symbol(random.Random(5), 7)
    assert symbol_from_json(7, symbol_to_json(sym)) == sym
    spec = FruchtSpec(2, 5, (pm(5, 1), pm(5, 2)), ((0, 1, frozenset({0})),))
    assert frucht_from_json(frucht_to_json(spec)) == spec
    b = BicirculantSymbol(7, pm(7, 1), pm(7, 2, 3), frozenset({0, 4}))
    assert bicirculant_from_json(bicirculant_to_json(b)) == b
    assert frucht_from_json({"m": 1, "n": 6, "inner": [[{"pm": [1]}]]}) == \
        FruchtSpec(1, 6, (pm(6, 1),))
