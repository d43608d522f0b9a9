"""Simple undirected graphs and the constructors used throughout the package.

Adjacency is stored as one Python int per vertex (bit ``v`` of ``rows[u]`` set iff
u ~ v).  Graphs are immutable; every constructor returns a fresh instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    pass


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    __slots__ = ("n", "rows", "_key")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {(u, v)} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self.n = n
        self.rows = tuple(rows)
        self._key = None

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> Graph:
        g = cls.__new__(cls)
        g.n = len(rows)
        g.rows = tuple(rows)
        g._key = None
        for u, r in enumerate(g.rows):
            if r >> u & 1:
                raise GraphError(f"loop at {u}")
            for v in bits(r):
                if not g.rows[v] >> u & 1:
                    raise GraphError(f"asymmetric adjacency {u}->{v}")
        return g

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def union(self, other: Graph) -> Graph:
        if other.n != self.n:
            raise GraphError("edge union needs equal vertex counts")
        return Graph.from_rows([a | b for a, b in zip(self.rows, other.rows)])

    def is_subgraph_of(self, other: Graph) -> bool:
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        for u in range(self.n):
            img = 0
            for v in bits(self.rows[u]):
                img |= 1 << perm[v]
            if img != self.rows[perm[u]]:
                return False
        return True


# -- structural predicates --

def components(X: Graph) -> list[frozenset[int]]:
    seen = 0
    out = []
    for s in range(X.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= X.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(frozenset(bits(comp)))
    return out


def is_connected(X: Graph) -> bool:
    return X.n <= 1 or len(components(X)) == 1


def articulation_points(X: Graph) -> set[int]:
    """Cut vertices via iterative low-point DFS."""
    n = X.n
    disc = [-1] * n
    low = [0] * n
    cut = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(X.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(X.neighbors(w))))
                    advanced = True
                    break
                elif w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cut.add(parent)
        if root_children > 1:
            cut.add(root)
    return cut


def is_two_connected(X: Graph) -> bool:
    return X.n >= 3 and is_connected(X) and not articulation_points(X)


def regular_valency(X: Graph) -> int | None:
    """The common degree, or None when the graph is not regular."""
    degs = set(X.degrees())
    if len(degs) > 1:
        return None
    return degs.pop() if degs else 0


def girth(X: Graph) -> int | None:
    best = None
    for s in range(X.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in X.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    c = dist[v] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best


def induced(X: Graph, U: Iterable[int]) -> Graph:
    """Subgraph induced by U, relabelled 0..|U|-1 in increasing vertex order."""
    U = sorted(set(U))
    pos = {v: i for i, v in enumerate(U)}
    return Graph(len(U), ((pos[u], pos[v]) for u, v in combinations(U, 2) if X.adjacent(u, v)))


def bipartite_between(X: Graph, U: Iterable[int], W: Iterable[int]) -> Graph:
    """The U-W edges of X, on the vertex set sorted(U) + sorted(W)."""
    U, W = sorted(set(U)), sorted(set(W))
    if set(U) & set(W):
        raise GraphError("U and W must be disjoint")
    order = U + W
    pos = {v: i for i, v in enumerate(order)}
    return Graph(len(order), ((pos[u], pos[w]) for u in U for w in W if X.adjacent(u, w)))


# -- constructors --

def circulant(n: int, S: Iterable[int]) -> Graph:
    S = {s % n for s in S}
    if 0 in S or S != {(-s) % n for s in S}:
        raise GraphError(f"circulant set must be symmetric and avoid 0: {sorted(S)}")
    return Graph(n, ((a, (a + s) % n) for a in range(n) for s in S))


def cycle(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n))) if n >= 3 else complete(n)


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges())
        off += g.n
    return Graph(off, edges)


def cartesian(X: Graph, Y: Graph) -> Graph:
    """X box Y on pairs (a, u) numbered a*|V(Y)| + u."""
    m = Y.n
    edges = [(a * m + u, b * m + u) for a, b in X.edges() for u in range(m)]
    edges += [(a * m + u, a * m + v) for a in range(X.n) for u, v in Y.edges()]
    return Graph(X.n * m, edges)


def wreath(X: Graph, Y: Graph) -> Graph:
    """Lexicographic product X[Y]: (a,u)~(b,v) iff ab in E(X), or a=b and uv in E(Y)."""
    m = Y.n
    edges = [(a * m + u, b * m + v) for a, b in X.edges() for u in range(m) for v in range(m)]
    edges += [(a * m + u, a * m + v) for a in range(X.n) for u, v in Y.edges()]
    return Graph(X.n * m, edges)


def generalized_petersen(n: int, k: int) -> Graph:
    if not (n >= 3 and 1 <= k and 2 * k < n):
        raise GraphError(f"GP({n},{k}) needs 1 <= k < n/2")
    return bicirculant(BicirculantSymbol(n, frozenset({1, n - 1}), frozenset({k, n - k}),
                                         frozenset({0})))


def truncation(X: Graph, corner_order: Sequence[Sequence[int]] | None = None) -> Graph:
    """Replace each vertex of a cubic graph by a triangle.

    Vertex v becomes corners 3v, 3v+1, 3v+2; the i-th neighbor of v (sorted order, or
    ``corner_order[v]`` when given) attaches to corner 3v+i.
    """
    if regular_valency(X) != 3:
        raise GraphError("truncation needs a cubic graph")
    order = [list(corner_order[v]) if corner_order else X.neighbors(v) for v in range(X.n)]
    for v in range(X.n):
        if sorted(order[v]) != X.neighbors(v):
            raise GraphError(f"corner order at {v} is not a neighbor ordering")
    edges = [(3 * v + i, 3 * v + j) for v in range(X.n) for i, j in ((0, 1), (1, 2), (0, 2))]
    for u, v in X.edges():
        edges.append((3 * u + order[u].index(v), 3 * v + order[v].index(u)))
    return Graph(3 * X.n, edges)


def _pm(p: int, xs: Iterable[int]) -> frozenset[int]:
    return frozenset(x % p for x in xs)


@dataclass(frozen=True)
class SymbolMatrix:
    """6x6 array of subsets R[i][j] of Z_p: s_i ~ s_j rho^r for r in R[i][j]."""

    p: int
    entries: tuple[tuple[frozenset[int], ...], ...]

    def __post_init__(self):
        if len(self.entries) != 6 or any(len(r) != 6 for r in self.entries):
            raise GraphError("symbol matrix must be 6x6")
        p = self.p
        for i in range(6):
            for j in range(6):
                R = self.entries[i][j]
                if any(not 0 <= r < p for r in R):
                    raise GraphError(f"R[{i},{j}] has an element outside Z_{p}")
                if R != _pm(p, (-r for r in self.entries[j][i])):
                    raise GraphError(f"R[{j},{i}] != -R[{i},{j}]")
            if 0 in self.entries[i][i]:
                raise GraphError(f"R[{i},{i}] contains 0")

    @classmethod
    def from_upper(cls, p: int, given: dict[tuple[int, int], Iterable[int]]) -> SymbolMatrix:
        """Build from any set of (i, j) entries; missing mirrors come from R[j,i] = -R[i,j]."""
        ent = [[None] * 6 for _ in range(6)]
        for (i, j), R in given.items():
            R = frozenset(R)
            if any(not 0 <= r < p for r in R):
                raise GraphError(f"entry {(i, j)} outside Z_{p}")
            for (a, b), S in (((i, j), R), ((j, i), _pm(p, (-r for r in R)))):
                if ent[a][b] is not None and ent[a][b] != S:
                    raise GraphError(f"conflicting entries for R[{a},{b}]")
                ent[a][b] = S
        ent = [[e if e is not None else frozenset() for e in row] for row in ent]
        return cls(p, tuple(tuple(row) for row in ent))

    def to_graph(self) -> Graph:
        return from_symbol(self)


def from_symbol(sym: SymbolMatrix) -> Graph:
    """Order-6p graph with vertex u_i^a numbered i*p + a."""
    p = sym.p
    edges = []
    for i in range(6):
        for j in range(i, 6):
            for r in sym.entries[i][j]:
                for a in range(p):
                    edges.append((i * p + a, j * p + (a + r) % p))
    return Graph(6 * p, edges)


@dataclass(frozen=True)
class FruchtSpec:
    """m orbits of length n; ``inner[i]`` is the circulant set of orbit i, ``arcs`` are
    (i, k, T) meaning v_i^j ~ v_k^(j+t) for t in T."""

    m: int
    n: int
    inner: tuple[frozenset[int], ...]
    arcs: tuple[tuple[int, int, frozenset[int]], ...] = ()

    def __post_init__(self):
        n = self.n
        if len(self.inner) != self.m:
            raise GraphError("one inner set per orbit required")
        for i, R in enumerate(self.inner):
            if 0 in R or R != _pm(n, (-r for r in R)) or any(not 0 <= r < n for r in R):
                raise GraphError(f"inner set of orbit {i} must be symmetric, in Z_{n}, without 0")
        seen = set()
        for i, k, T in self.arcs:
            if i == k or not (0 <= i < self.m and 0 <= k < self.m):
                raise GraphError(f"bad arc {(i, k)}")
            if any(not 0 <= t < n for t in T):
                raise GraphError(f"arc {(i, k)} label outside Z_{n}")
            if (i, k) in seen:
                raise GraphError(f"duplicate arc {(i, k)}")
            seen.add((i, k))


def from_frucht(spec: FruchtSpec) -> Graph:
    n = spec.n
    edges = []
    for i, R in enumerate(spec.inner):
        edges += [(i * n + j, i * n + (j + r) % n) for j in range(n) for r in R]
    for i, k, T in spec.arcs:
        edges += [(i * n + j, k * n + (j + t) % n) for j in range(n) for t in T]
    return Graph(spec.m * n, edges)


@dataclass(frozen=True)
class BicirculantSymbol:
    n: int
    S: frozenset[int]
    R: frozenset[int]
    T: frozenset[int]

    def __post_init__(self):
        n = self.n
        for name, X in (("S", self.S), ("R", self.R), ("T", self.T)):
            if any(not 0 <= x < n for x in X):
                raise GraphError(f"{name} has an element outside Z_{n}")
        for name, X in (("S", self.S), ("R", self.R)):
            if 0 in X or X != _pm(n, (-x for x in X)):
                raise GraphError(f"{name} must be symmetric and avoid 0")


def bicirculant(sym: BicirculantSymbol) -> Graph:
    """u_a = a, w_a = n + a."""
    n = sym.n
    edges = [(a, (a + s) % n) for a in range(n) for s in sym.S]
    edges += [(n + a, n + (a + r) % n) for a in range(n) for r in sym.R]
    edges += [(a, n + (a + t) % n) for a in range(n) for t in sym.T]
    return Graph(2 * n, edges)


def bicirculant_symbol(X: Graph, rho: Sequence[int], u: int, w: int) -> BicirculantSymbol:
    """[S, R, T] of X relative to a (2,n)-semiregular automorphism and base vertices u, w."""
    n = X.n // 2
    powers = [u]
    wp = [w]
    for _ in range(n - 1):
        powers.append(rho[powers[-1]])
        wp.append(rho[wp[-1]])
    S = frozenset(s for s in range(n) if X.adjacent(u, powers[s]))
    R = frozenset(r for r in range(n) if X.adjacent(w, wp[r]))
    T = frozenset(t for t in range(n) if X.adjacent(u, wp[t]))
    return BicirculantSymbol(n, S, R, T)


def orbit_rotation(m: int, n: int) -> list[int]:
    """The stride-1 rotation a -> a+1 inside each block of n consecutive vertices."""
    return [i * n + (a + 1) % n for i in range(m) for a in range(n)]


PETERSEN_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                  (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                  (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]


def petersen() -> Graph:
    return Graph(10, PETERSEN_EDGES)


def coxeter() -> Graph:
    """Coxeter graph: Frucht form 7/{±1}, 7/{±2}, 7/{±3} plus 7 hub vertices joined to all three."""
    n = 7
    edges = []
    for i, s in enumerate((1, 2, 4)):
        edges += [(i * n + a, i * n + (a + s) % n) for a in range(n)]
        edges += [(i * n + a, 3 * n + a) for a in range(n)]
    return Graph(28, edges)


def named(name: str) -> Graph:
    builders = {
        "petersen": petersen,
        "coxeter": coxeter,
        "K6": lambda: complete(6),
        "K33": lambda: complete_bipartite(3, 3),
        "C6": lambda: cycle(6),
        "prism3": lambda: cartesian(complete(3), complete(2)),
        "K222": lambda: wreath(complete(3), empty(2)),
        "truncated_petersen": lambda: truncation(petersen()),
        "truncated_coxeter": lambda: truncation(coxeter()),
    }
    if name not in builders:
        raise GraphError(f"unknown named graph {name!r}; known: {sorted(builders)}")
    return builders[name]()


NAMED_ORDER6 = ("C6", "prism3", "K33", "K222", "K6")
