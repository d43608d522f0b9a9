"""Exact Hamilton cycle/path search with certificates.

Depth-first extension of a path from a fixed start vertex.  Pruning rules, all of
them necessary conditions (so exhausting the tree is a proof of absence):

* every unvisited vertex keeps at least two usable neighbours (unvisited or a path end);
* the unvisited set stays reachable from the current end;
* the unvisited set plus both ends, closed by an edge between the ends, has no cut vertex;
* the two directions of a cycle are identified by requiring the first step to be the
  smaller of the start's two cycle neighbours.

Path questions reduce to cycles through an added apex vertex.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .graph import Graph, bits, is_two_connected, regular_valency

DEFAULT_BUDGET = 10**8

FOUND = "found"
ABSENT = "proven_absent"
UNKNOWN = "unknown"


@dataclass
class HamiltonResult:
    kind: str
    certificate: list[int] | None = None
    nodes_explored: int = 0
    budget_spent: float = 0.0
    closed: bool = True

    @property
    def found(self) -> bool:
        return self.kind == FOUND

    def to_json(self) -> dict:
        return {"kind": self.kind, "certificate": self.certificate,
                "nodes_explored": self.nodes_explored, "closed": self.closed}


class _OutOfBudget(Exception):
    pass


def _low_cut_free(rows, active: int, c: int, s: int) -> bool:
    """No articulation point in the graph induced on ``active`` with edge c-s added."""
    # iterative Tarjan restricted to the active mask
    root = c
    disc = {root: 0}
    low = {root: 0}
    t = 1
    extra = {c: 1 << s, s: 1 << c}
    def nbrs(v):
        return (rows[v] | extra.get(v, 0)) & active
    stack = [(root, -1, nbrs(root))]
    root_children = 0
    while stack:
        v, parent, rem = stack[-1]
        if rem:
            low_bit = rem & -rem
            w = low_bit.bit_length() - 1
            stack[-1] = (v, parent, rem ^ low_bit)
            if w not in disc:
                disc[w] = low[w] = t
                t += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, nbrs(w)))
            elif w != parent:
                if disc[w] < low[v]:
                    low[v] = disc[w]
            continue
        stack.pop()
        if parent != -1:
            if low[v] < low[parent]:
                low[parent] = low[v]
            if parent != root and low[v] >= disc[parent]:
                return False
    if root_children > 1:
        return False
    return len(disc) == active.bit_count()


class _CycleSearch:
    def __init__(self, rows: list[int], start: int, budget: int, cut_check: bool = True):
        self.rows = rows
        self.s = start
        self.budget = budget
        self.nodes = 0
        self.cut_check = cut_check

    def run(self) -> list[int] | None:
        rows, s = self.rows, self.s
        n = len(rows)
        if n == 1:
            return [s]
        if n == 2:
            return None  # a 2-cycle is not a simple cycle
        full = (1 << n) - 1
        U = full & ~(1 << s)
        for v in bits(U):
            if (rows[v] & full).bit_count() < 2:
                return None
        if (rows[s]).bit_count() < 2:
            return None
        self.path = [s]
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))
        return self.path if self._extend(s, U, 0) else None

    def _extend(self, c: int, U: int, first: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        rows, s = self.rows, self.s
        if not U:
            return bool(rows[c] >> s & 1)
        ends = (1 << c) | (1 << s)
        avail = U | ends
        # the closing neighbour of s must exceed the first step
        if c != s and not (rows[s] & U) >> (first + 1):
            return False
        cand = rows[c] & U
        if not cand:
            return False
        # reachability of U from c
        seen = cand
        frontier = cand
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= rows[v]
            frontier = nxt & U & ~seen
            seen |= frontier
        if seen != U:
            return False
        forced = None
        order = []
        for w in bits(cand):
            d = (rows[w] & avail).bit_count()
            if d < 2:
                return False
            if d == 2 and c != s and U != (1 << w):
                # c is one of w's two usable neighbours; stepping elsewhere strands w
                if forced is not None:
                    return False
                forced = w
            order.append(((rows[w] & U).bit_count(), w))
        if self.cut_check and U.bit_count() > 2 and not _low_cut_free(rows, avail, c, s):
            return False
        if forced is not None:
            order = [(0, forced)]
        else:
            order.sort()
        for _, w in order:
            if c == s:
                # first step: require a larger neighbour of s to remain for closing
                if not (rows[s] & U & ~(1 << w)) >> (w + 1):
                    continue
                f = w
            else:
                f = first
            self.path.append(w)
            if self._extend(w, U & ~(1 << w), f):
                return True
            self.path.pop()
        return False


def _solve_cycle(rows: list[int], start: int, budget: int) -> HamiltonResult:
    search = _CycleSearch(list(rows), start, budget)
    try:
        cyc = search.run()
    except _OutOfBudget:
        return HamiltonResult(UNKNOWN, None, search.nodes, budget)
    if cyc is None:
        return HamiltonResult(ABSENT, None, search.nodes, search.nodes)
    return HamiltonResult(FOUND, list(cyc), search.nodes, search.nodes)


def hamilton_cycle(X: Graph, budget: int = DEFAULT_BUDGET) -> HamiltonResult:
    if X.n == 0:
        return HamiltonResult(ABSENT)
    if X.n <= 2:
        # K1 counts as trivially Hamiltonian; K2 has no simple cycle
        return HamiltonResult(FOUND, [0]) if X.n == 1 else HamiltonResult(ABSENT)
    return _solve_cycle(list(X.rows), 0, budget)


def hamilton_path(X: Graph, budget: int = DEFAULT_BUDGET,
                  endpoints: tuple[int, int] | None = None) -> HamiltonResult:
    n = X.n
    if endpoints is not None:
        a, b = endpoints
        if a == b:
            raise ValueError("endpoints must be distinct")
    if n == 0:
        return HamiltonResult(ABSENT, closed=False)
    if n == 1:
        return HamiltonResult(FOUND, [0], closed=False)
    apex = n
    hub = ((1 << a) | (1 << b)) if endpoints else (1 << n) - 1
    rows = [r | ((1 << apex) if hub >> v & 1 else 0) for v, r in enumerate(X.rows)] + [hub]
    if n == 2:
        ok = X.adjacent(0, 1)
        cert = list(endpoints) if endpoints else [0, 1]
        return HamiltonResult(FOUND if ok else ABSENT, cert if ok else None, closed=False)
    res = _solve_cycle(rows, apex, budget)
    res.closed = False
    if res.found:
        cyc = res.certificate
        assert cyc[0] == apex
        res.certificate = cyc[1:]
        if endpoints and res.certificate[0] != endpoints[0]:
            res.certificate.reverse()
    return res


def is_hamilton_connected(X: Graph, budget: int = DEFAULT_BUDGET) -> bool | None:
    """True iff every vertex pair is joined by a Hamilton path; None if any pair is undecided."""
    unknown = False
    for a in range(X.n):
        for b in range(a + 1, X.n):
            r = hamilton_path(X, budget, (a, b))
            if r.kind == ABSENT:
                return False
            if r.kind == UNKNOWN:
                unknown = True
    return None if unknown else True


def jackson_applies(X: Graph) -> bool:
    """2-connected, regular, valency >= n/3: Hamiltonicity guaranteed by Jackson's theorem."""
    k = regular_valency(X)
    return k is not None and 3 * k >= X.n and is_two_connected(X)


def check_certificate(X: Graph, seq, closed: bool) -> bool:
    """Independent validation of a Hamilton path/cycle given as a vertex sequence."""
    seq = list(seq)
    if sorted(seq) != list(range(X.n)):
        return False
    edges = X.edge_set()

    def adj(u, v):
        return (min(u, v), max(u, v)) in edges

    pairs = list(zip(seq, seq[1:]))
    if closed and X.n >= 3:
        pairs.append((seq[-1], seq[0]))
    elif closed and X.n == 2:
        return False
    return all(adj(u, v) for u, v in pairs)
