"""Quotients by partitions and by semiregular automorphisms, and cycle lifting.

A semiregular automorphism rho with m orbits of length n turns X into a voltage
quotient: orbit i is listed as b_i, b_i rho, b_i rho^2, ... from its base point b_i
(lowest vertex by default) and r is a voltage on the pair i < j iff b_i ~ b_j rho^r.
Traversing a pair from j to i negates the voltage.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Sequence

from .graph import Graph, GraphError
from .perm import Permutation, is_semiregular


class LiftError(ValueError):
    pass


def quotient_graph(X: Graph, parts: Sequence[Sequence[int]]) -> Graph:
    """Simple graph on the parts; two parts adjacent iff some edge of X joins them."""
    where = {}
    for i, part in enumerate(parts):
        for v in part:
            if v in where:
                raise GraphError(f"vertex {v} in two parts")
            where[v] = i
    if set(where) != set(range(X.n)) or any(len(p) == 0 for p in parts):
        raise GraphError("parts do not partition the vertex set")
    edges = {(min(where[u], where[v]), max(where[u], where[v]))
             for u, v in X.edges() if where[u] != where[v]}
    return Graph(len(parts), edges)


@dataclass(frozen=True)
class VoltageQuotient:
    m: int
    n: int
    voltages: dict  # (i, j) with i < j -> frozenset of Z_n, nonempty
    inner: tuple[frozenset[int], ...]
    orbits: tuple[tuple[int, ...], ...]  # orbits[i][k] = b_i rho^k, in the covered graph's labels

    def multiplicity(self, i: int, j: int) -> int:
        return len(self.voltages.get((min(i, j), max(i, j)), ()))

    def base_graph(self) -> Graph:
        return Graph(self.m, self.voltages.keys())

    def step_voltages(self, i: int, j: int) -> list[int]:
        """Voltages available when walking from orbit i to orbit j (sign applied)."""
        if i < j:
            return sorted(self.voltages.get((i, j), ()))
        return sorted((-r) % self.n for r in self.voltages.get((j, i), ()))

    def cover(self) -> Graph:
        """Rebuild the covered graph in its original vertex labels."""
        n, orb = self.n, self.orbits
        edges = []
        for i, R in enumerate(self.inner):
            edges += [(orb[i][a], orb[i][(a + r) % n]) for a in range(n) for r in R]
        for (i, j), R in self.voltages.items():
            edges += [(orb[i][a], orb[j][(a + r) % n]) for a in range(n) for r in R]
        return Graph(self.m * n, edges)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n,
                "voltages": [[i, j, sorted(R)] for (i, j), R in sorted(self.voltages.items())],
                "inner": [sorted(R) for R in self.inner],
                "orbits": [list(o) for o in self.orbits]}


def quotient_voltage(X: Graph, rho: Permutation | Sequence[int],
                     base_points: Sequence[int] | None = None) -> VoltageQuotient:
    rho = rho if isinstance(rho, Permutation) else Permutation(rho)
    if rho.degree != X.n or not X.is_automorphism(rho.images):
        raise LiftError("rho is not an automorphism of X")
    lengths = set(rho.cycle_type())
    if len(lengths) != 1:
        raise LiftError("rho is not semiregular")
    n = lengths.pop()
    m = X.n // n
    if not is_semiregular(rho, m, n):
        raise LiftError("rho is not semiregular")
    cycles = sorted(rho.cycles(include_fixed=True), key=min)
    if base_points is None:
        base_points = [min(c) for c in cycles]
    orbits = []
    for i, c in enumerate(cycles):
        b = base_points[i]
        if b not in c:
            raise LiftError(f"base point {b} is not on orbit {i}")
        orb = [b]
        for _ in range(n - 1):
            orb.append(rho(orb[-1]))
        orbits.append(tuple(orb))
    inner = []
    volt = {}
    for i in range(m):
        bi = orbits[i][0]
        inner.append(frozenset(r for r in range(1, n) if X.adjacent(bi, orbits[i][r])))
        for j in range(i + 1, m):
            R = frozenset(r for r in range(n) if X.adjacent(bi, orbits[j][r]))
            if R:
                volt[(i, j)] = R
    return VoltageQuotient(m, n, volt, tuple(inner), tuple(orbits))


def symbol_rotation(p: int) -> Permutation:
    """The built-in (6,p)-semiregular rotation of a symbol graph."""
    return Permutation(i * p + (a + 1) % p for i in range(6) for a in range(p))


@dataclass
class LiftResult:
    kind: str  # "full_cycle" | "disjoint_cycles"
    sigma: int
    cycles: list[list[int]]

    @property
    def cycle(self) -> list[int]:
        return self.cycles[0]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "cycle": self.cycles[0], "sigma": self.sigma}
        if self.kind == "disjoint_cycles":
            out["cycles"] = self.cycles
        return out


def lift_cycle(q: VoltageQuotient, cycle: Sequence[int], choice: Sequence[int]) -> LiftResult:
    """Lift a closed walk of orbits using one chosen (stored, unsigned) voltage per step.

    ``cycle`` lists k orbits; step t runs from cycle[t] to cycle[t+1 mod k].  k = 1 walks
    an inner circulant edge, k = 2 needs two distinct voltages on the same pair, k >= 3
    needs distinct orbits.
    """
    k = len(cycle)
    n = q.n
    if len(choice) != k:
        raise LiftError("one voltage per step required")
    if k >= 3 and len(set(cycle)) != k:
        raise LiftError("quotient cycle must visit distinct orbits")
    if k == 2 and (cycle[0] == cycle[1] or choice[0] == choice[1]):
        raise LiftError("a 2-step walk needs two distinct voltages between distinct orbits")
    steps = []
    for t in range(k):
        i, j = cycle[t], cycle[(t + 1) % k]
        r = choice[t]
        if k == 1:
            if r not in q.inner[i]:
                raise LiftError(f"voltage {r} not in the inner set of orbit {i}")
            steps.append(r % n)
            continue
        stored = q.voltages.get((min(i, j), max(i, j)), frozenset())
        if r not in stored:
            raise LiftError(f"voltage {r} not available between orbits {i} and {j}")
        steps.append(r % n if i < j else (-r) % n)
    sigma = sum(steps) % n
    period = n // gcd(sigma, n)  # rounds until the walk returns to its starting vertex
    cycles = []
    covered = set()
    for a0 in range(n):
        if (cycle[0], a0) in covered:
            continue
        seq = []
        a = a0
        for _ in range(period):
            for t in range(k):
                seq.append(q.orbits[cycle[t]][a])
                covered.add((cycle[t], a))
                a = (a + steps[t]) % n
        cycles.append(seq)
    kind = "full_cycle" if period == n else "disjoint_cycles"
    return LiftResult(kind, sigma, cycles)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _nonzero_choice(n: int, options: list[list[int]], signs: list[int]) -> list[int] | None:
    """Pick one stored voltage per step so the signed sum is nonzero mod n."""
    choice = [opt[0] for opt in options]
    total = sum(s * c for s, c in zip(signs, choice)) % n
    if total:
        return choice
    for t, opt in enumerate(options):
        if len(opt) > 1:
            choice[t] = opt[1]
            return choice
    return None


def quotient_hamilton_cycles(q: VoltageQuotient):
    """All Hamilton cycles of the base graph, each once (start at 0, second < last)."""
    m = q.m
    G = q.base_graph()
    for rest in permutations(range(1, m)):
        if m > 2 and rest[0] > rest[-1]:
            continue
        cyc = (0,) + rest
        if all(G.adjacent(cyc[t], cyc[(t + 1) % m]) for t in range(m)):
            yield list(cyc)


def hamilton_via_lift(q: VoltageQuotient) -> list[int] | None:
    """A Hamilton cycle of the covered graph obtained by lifting a quotient cycle."""
    if not _is_prime(q.n):
        raise LiftError(f"orbit length {q.n} is not prime")
    if q.m == 1:
        r = min(q.inner[0], default=None)
        return lift_cycle(q, [0], [r]).cycle if r is not None else None
    if q.m == 2:
        R = sorted(q.voltages.get((0, 1), ()))
        return lift_cycle(q, [0, 1], R[:2]).cycle if len(R) >= 2 else None
    for cyc in quotient_hamilton_cycles(q):
        options, signs = [], []
        for t in range(q.m):
            i, j = cyc[t], cyc[(t + 1) % q.m]
            options.append(sorted(q.voltages[(min(i, j), max(i, j))]))
            signs.append(1 if i < j else -1)
        choice = _nonzero_choice(q.n, options, signs)
        if choice is not None:
            res = lift_cycle(q, cyc, choice)
            assert res.kind == "full_cycle"
            return res.cycle
    return None
