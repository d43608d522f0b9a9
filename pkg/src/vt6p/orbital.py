"""Generalized orbital graphs (GOGs) of transitive permutation groups.

A *class* is either one self-paired suborbit or an unordered pair of mutually paired
suborbits; a GOG is the edge union of the orbital graphs of a set of classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, is_connected, regular_valency
from .iso import are_isomorphic, graph_invariant
from .perm import GroupError, PermGroup, SuborbitTable, suborbits

MAX_CLASSES = 16


@dataclass(frozen=True)
class OrbitalGraphSet:
    action: PermGroup
    table: SuborbitTable
    classes: tuple[tuple[int, ...], ...]  # suborbit indices per class
    graphs: tuple[Graph, ...]  # one undirected orbital graph per class

    @property
    def degree(self) -> int:
        return self.action.degree

    def class_of(self, suborbit: int) -> int:
        for k, cls in enumerate(self.classes):
            if suborbit in cls:
                return k
        raise KeyError(suborbit)

    def classes_for(self, selection) -> frozenset[int]:
        """Class indices for a pairing-closed suborbit selection."""
        selection = set(selection)
        pairing = self.table.pairing
        if 0 in selection:
            raise GroupError("the trivial suborbit cannot be selected")
        if any(pairing[i] not in selection for i in selection):
            raise GroupError("selection is not closed under pairing")
        return frozenset(self.class_of(i) for i in selection)

    def union(self, class_ids) -> Graph:
        rows = [0] * self.degree
        for k in class_ids:
            for v, r in enumerate(self.graphs[k].rows):
                rows[v] |= r
        return Graph.from_rows(rows)

    def suborbits_of(self, class_ids) -> tuple[int, ...]:
        return tuple(sorted(i for k in class_ids for i in self.classes[k]))


def orbital_graphs(action: PermGroup, base: int = 0) -> OrbitalGraphSet:
    table = suborbits(action, base)
    trans = action.transversal(base)
    classes = []
    for i in table.nontrivial():
        j = table.pairing[i]
        if j >= i:
            classes.append((i,) if i == j else (i, j))
    graphs = []
    n = action.degree
    for cls in classes:
        U = table.suborbits[cls[0]]
        edges = []
        for v, t in trans.items():
            edges.extend((v, t(u)) for u in U)
        graphs.append(Graph(n, edges))
    return OrbitalGraphSet(action, table, tuple(classes), tuple(graphs))


def gog(ogs: OrbitalGraphSet, selection) -> Graph:
    """Edge union of the orbital graphs for a pairing-closed set of suborbit indices."""
    return ogs.union(ogs.classes_for(selection))


@dataclass
class GogClass:
    selection: tuple[int, ...]  # suborbit indices of the representative
    graph: Graph
    count: int  # number of selections isomorphic to the representative


def _selections(ogs: OrbitalGraphSet):
    k = len(ogs.classes)
    if k > MAX_CLASSES:
        raise GroupError(f"{k} orbital classes exceed the enumeration bound {MAX_CLASSES}")
    for size in range(1, k + 1):
        yield from combinations(range(k), size)


def dedupe(graphs, budget: int = 10**5) -> list[tuple[int, list[int]]]:
    """Group indices of ``graphs`` into isomorphism classes: [(rep index, members)]."""
    buckets: dict = {}
    out = []
    for idx, X in enumerate(graphs):
        bucket = buckets.setdefault(graph_invariant(X), [])
        for entry in bucket:
            if are_isomorphic(graphs[entry[0]], X, budget):
                entry[1].append(idx)
                break
        else:
            entry = (idx, [idx])
            bucket.append(entry)
            out.append(entry)
    return out


def connected_gogs(ogs: OrbitalGraphSet, budget: int = 10**5) -> list[GogClass]:
    sels, graphs = [], []
    for sel in _selections(ogs):
        X = ogs.union(sel)
        if is_connected(X):
            sels.append(sel)
            graphs.append(X)
    return [GogClass(ogs.suborbits_of(sels[rep]), graphs[rep], len(members))
            for rep, members in dedupe(graphs, budget)]


def minimal_connected_set(ogs: OrbitalGraphSet) -> list[tuple[tuple[int, ...], Graph]]:
    """Connected GOGs whose class set is inclusion-minimal among connected ones."""
    connected = {frozenset(sel) for sel in _selections(ogs) if is_connected(ogs.union(sel))}
    # adding edges preserves connectivity, so checking one-smaller subsets suffices
    minimal = [s for s in connected if not any(s - {c} in connected for c in s)]
    minimal.sort(key=lambda s: (len(s), sorted(s)))
    return [(ogs.suborbits_of(s), ogs.union(s)) for s in minimal]


def relevant_set(ogs: OrbitalGraphSet) -> list[tuple[tuple[int, ...], Graph]]:
    """Members of the minimal connected set with valency below degree/3."""
    out = []
    for sel, X in minimal_connected_set(ogs):
        k = regular_valency(X)
        if k is not None and 3 * k < ogs.degree:
            out.append((sel, X))
    return out
