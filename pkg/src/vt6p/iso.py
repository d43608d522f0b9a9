"""Isomorphism and automorphism search by colour refinement plus individualization.

Cells are refined against splitter vertex sets by neighbour counts.  Every step is
driven only by graph structure, so two isomorphic graphs refined from corresponding
ordered partitions produce identical traces and cell-wise corresponding partitions.
Target cells are chosen deterministically: first smallest non-singleton cell, lowest
vertex first.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .graph import Graph, bits, components
from .perm import Permutation

DEFAULT_ISO_BUDGET = 10**6


class BudgetExhausted(Exception):
    pass


class _Counter:
    def __init__(self, budget: int):
        self.left = budget

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExhausted


def _mask(cell) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def refine(X: Graph, cells: list[list[int]], splitters: list[int] | None = None):
    """Refine an ordered partition to an equitable one.

    Returns ``(cells, trace)``.  ``splitters`` defaults to every cell.
    """
    cells = [list(c) for c in cells]
    queue = deque(splitters if splitters is not None else [_mask(c) for c in cells])
    trace = []
    rows = X.rows
    while queue:
        w = queue.popleft()
        i = 0
        while i < len(cells):
            c = cells[i]
            if len(c) == 1:
                i += 1
                continue
            groups: dict[int, list[int]] = {}
            for v in c:
                groups.setdefault((rows[v] & w).bit_count(), []).append(v)
            if len(groups) == 1:
                i += 1
                continue
            keys = sorted(groups)
            parts = [groups[k] for k in keys]
            trace.append((i, tuple((k, len(groups[k])) for k in keys)))
            cells[i:i + 1] = parts
            for part in parts:
                queue.append(_mask(part))
            i += len(parts)
    trace.append(tuple(len(c) for c in cells))
    return cells, tuple(trace)


def _individualize(cells: list[list[int]], idx: int, v: int) -> list[list[int]]:
    c = cells[idx]
    rest = [x for x in c if x != v]
    return cells[:idx] + [[v], rest] + cells[idx + 1:]


def _target_cell(cells: list[list[int]]) -> int | None:
    best = None
    for i, c in enumerate(cells):
        if len(c) > 1 and (best is None or len(c) < len(cells[best])):
            best = i
    return best


def _leaf_map(xcells, ycells) -> list[int]:
    perm = [0] * len(xcells)
    for a, b in zip(xcells, ycells):
        perm[a[0]] = b[0]
    return perm


def _maps_onto(X: Graph, Y: Graph, perm: Sequence[int]) -> bool:
    for u in range(X.n):
        img = 0
        for v in bits(X.rows[u]):
            img |= 1 << perm[v]
        if img != Y.rows[perm[u]]:
            return False
    return True


def _initial(X: Graph) -> list[list[int]]:
    return [list(range(X.n))] if X.n else []


def _first_path(X: Graph, cells):
    """Leftmost path of the search tree: list of (cells, trace, target index, chosen vertex)."""
    path = []
    while True:
        t = _target_cell(cells)
        if t is None:
            path.append((cells, None, None))
            return path
        v = min(cells[t])
        path.append((cells, t, v))
        cells, _ = refine(X, _individualize(cells, t, v), [1 << v])


def _match_below(X: Graph, Y: Graph, xpath, level: int, ycells, counter: _Counter):
    """Find a leaf under ``ycells`` equivalent to X's leftmost path from ``level`` on."""
    xcells, t, v = xpath[level]
    if t is None:
        perm = _leaf_map(xcells, ycells)
        return perm if _maps_onto(X, Y, perm) else None
    xnext, xtrace = refine(X, _individualize(xcells, t, v), [1 << v])
    for w in sorted(ycells[t]):
        counter.tick()
        ynext, ytrace = refine(Y, _individualize(ycells, t, w), [1 << w])
        if ytrace != xtrace:
            continue
        found = _match_below(X, Y, xpath, level + 1, ynext, counter)
        if found is not None:
            return found
    return None


def _invariant(X: Graph):
    return (X.n, X.edge_count(), tuple(sorted(X.degrees())))


def find_isomorphism(X: Graph, Y: Graph, budget: int = DEFAULT_ISO_BUDGET) -> list[int] | None:
    """A vertex map carrying X onto Y, or None.  Raises BudgetExhausted when undecided."""
    if _invariant(X) != _invariant(Y):
        return None
    if X.n == 0:
        return []
    xcells, xtrace = refine(X, _initial(X))
    ycells, ytrace = refine(Y, _initial(Y))
    if xtrace != ytrace:
        return None
    xpath = _first_path(X, xcells)
    return _match_below(X, Y, xpath, 0, ycells, _Counter(budget))


def are_isomorphic(X: Graph, Y: Graph, budget: int = DEFAULT_ISO_BUDGET) -> bool:
    return find_isomorphism(X, Y, budget) is not None


def _orbit_closure(n: int, gens: list[list[int]], point: int) -> set[int]:
    seen = {point}
    queue = [point]
    while queue:
        x = queue.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def automorphism_gens(X: Graph, budget: int = DEFAULT_ISO_BUDGET) -> list[Permutation]:
    """Generators of the full automorphism group.

    Walks the leftmost search path bottom-up; at each level every vertex of the target
    cell outside the current orbit of the chosen vertex gets one extension search.
    """
    if X.n == 0:
        return []
    cells, _ = refine(X, _initial(X))
    xpath = _first_path(X, cells)
    counter = _Counter(budget)
    gens: list[list[int]] = []
    for level in range(len(xpath) - 2, -1, -1):
        pcells, t, v = xpath[level]
        fixing = [g for g in gens]  # all found so far fix the earlier base points
        orbit = _orbit_closure(X.n, fixing, v)
        for w in sorted(pcells[t]):
            if w in orbit:
                continue
            counter.tick()
            ycells, ytrace = refine(X, _individualize(pcells, t, w), [1 << w])
            _, xtrace = refine(X, _individualize(pcells, t, v), [1 << v])
            if ytrace != xtrace:
                continue
            perm = _match_below(X, X, xpath, level + 1, ycells, counter)
            if perm is not None:
                gens.append(perm)
                fixing.append(perm)
                orbit = _orbit_closure(X.n, fixing, v)
    return [Permutation(g) for g in gens]


def is_vertex_transitive(X: Graph, budget: int = DEFAULT_ISO_BUDGET) -> bool | None:
    """True/False, or None when the search budget runs out."""
    if X.n <= 1:
        return True
    if len(set(X.degrees())) > 1:
        return False
    cells, _ = refine(X, _initial(X))
    if len(cells) > 1:
        return False
    xpath = _first_path(X, cells)
    counter = _Counter(budget)
    gens: list[list[int]] = []
    v = xpath[0][2]
    orbit = {v}
    try:
        _, xtrace = refine(X, _individualize(cells, 0, v), [1 << v])
        for w in range(X.n):
            if w in orbit:
                continue
            counter.tick()
            ycells, ytrace = refine(X, _individualize(cells, 0, w), [1 << w])
            if ytrace != xtrace:
                return False
            perm = _match_below(X, X, xpath, 1, ycells, counter)
            if perm is None:
                return False
            gens.append(perm)
            orbit = _orbit_closure(X.n, gens, v)
    except BudgetExhausted:
        return None
    return True


def graph_invariant(X: Graph) -> tuple:
    """Isomorphism invariant: sorted per-vertex (degree, triangles, distance profile)."""
    rows = X.rows
    prof = []
    for v in range(X.n):
        tri = sum((rows[v] & rows[w]).bit_count() for w in bits(rows[v])) // 2
        seen = 1 << v
        frontier = seen
        layers = []
        while frontier:
            nxt = 0
            for w in bits(frontier):
                nxt |= rows[w]
            frontier = nxt & ~seen
            seen |= frontier
            if frontier:
                layers.append(frontier.bit_count())
        prof.append((X.degree(v), tri, tuple(layers)))
    return (X.n, X.edge_count(), len(components(X)), tuple(sorted(prof)))
