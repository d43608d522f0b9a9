"""Permutations and small permutation groups.

Points are 0-based.  Products compose left to right, so ``(p * q)(x) == q(p(x))``,
matching the right-action convention ``x^(pq) = (x^p)^q``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

MAX_ENUMERATION = 10**6
EXHAUSTIVE_SEMIREGULAR = 10**4
DEFAULT_SEMIREGULAR_BUDGET = 10**5


class GroupError(ValueError):
    pass


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise GroupError(f"not a bijection: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for i, a in enumerate(cyc):
                if not 0 <= a < degree:
                    raise GroupError(f"point {a} out of range for degree {degree}")
                if a in seen:
                    raise GroupError(f"point {a} repeated in cycles")
                seen.add(a)
                img[a] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        o = other.images
        return Permutation._raw(tuple(o[a] for a in self.images))

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for a, b in enumerate(self.images):
            inv[b] = a
        return Permutation._raw(tuple(inv))

    @classmethod
    def _raw(cls, images: tuple) -> Permutation:
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(a == b for a, b in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> list[int]:
        return sorted(len(c) for c in self.cycles(include_fixed=True))

    def order(self) -> int:
        return lcm(*self.cycle_type()) if self.degree else 1

    def image_set(self, points: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[x] for x in points)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return f"Permutation(id, degree={self.degree})"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def is_semiregular(p: Permutation, m: int, n: int) -> bool:
    """True iff ``p`` consists of exactly ``m`` cycles, all of length ``n``."""
    return p.cycle_type() == [n] * m


@dataclass(frozen=True)
class BlockSystem:
    degree: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        sizes = {len(b) for b in self.blocks}
        covered = set().union(*self.blocks) if self.blocks else set()
        if len(sizes) > 1 or covered != set(range(self.degree)) or \
                sum(len(b) for b in self.blocks) != self.degree:
            raise GroupError("blocks must be equal-sized and partition the domain")

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def block_of(self, x: int) -> frozenset[int]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def is_invariant(self, gens: Iterable[Permutation]) -> bool:
        bset = set(self.blocks)
        return all(g.image_set(b) in bset for g in gens for b in self.blocks)

    def key(self) -> frozenset[frozenset[int]]:
        return frozenset(self.blocks)


@dataclass(frozen=True)
class SuborbitTable:
    base_point: int
    suborbits: tuple[frozenset[int], ...]  # index 0 is the trivial suborbit {base}
    pairing: tuple[int, ...]

    @property
    def self_paired(self) -> tuple[bool, ...]:
        return tuple(self.pairing[i] == i for i in range(len(self.suborbits)))

    @property
    def lengths(self) -> list[int]:
        return [len(s) for s in self.suborbits]

    def nontrivial(self) -> list[int]:
        return list(range(1, len(self.suborbits)))

    def suborbit_of(self, x: int) -> int:
        for i, s in enumerate(self.suborbits):
            if x in s:
                return i
        raise KeyError(x)


@dataclass(frozen=True, eq=False)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.degree != self.degree:
                raise GroupError(f"generator {g} has degree {g.degree}, expected {self.degree}")

    @classmethod
    def from_cycles(cls, degree: int, gens: Iterable[Iterable[Sequence[int]]]) -> PermGroup:
        return cls(degree, tuple(Permutation.from_cycles(degree, g) for g in gens))

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def orbit(self, point: int) -> frozenset[int]:
        if not 0 <= point < self.degree:
            raise GroupError(f"point {point} out of range for degree {self.degree}")
        seen = {point}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def orbit_partition(self) -> list[frozenset[int]]:
        out, seen = [], set()
        for x in range(self.degree):
            if x not in seen:
                o = self.orbit(x)
                seen |= o
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def transversal(self, point: int) -> dict[int, Permutation]:
        """Map each point y of the orbit of ``point`` to some element carrying point to y."""
        trans = {point: self.identity()}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g.images[x]
                if y not in trans:
                    trans[y] = trans[x] * g
                    queue.append(y)
        return trans

    def stabilizer_generators(self, point: int) -> list[Permutation]:
        """Schreier generators of the point stabilizer (deduplicated, identity dropped)."""
        trans = self.transversal(point)
        out = set()
        for x, t in trans.items():
            for g in self.generators:
                s = t * g * trans[g.images[x]].inverse()
                if not s.is_identity():
                    out.add(s)
        return sorted(out, key=lambda p: p.images)

    def stabilizer(self, point: int) -> PermGroup:
        return PermGroup(self.degree, tuple(self.stabilizer_generators(point)))

    # -- exhaustive enumeration (desk-scale groups only) --

    def elements(self, limit: int = MAX_ENUMERATION) -> frozenset[Permutation]:
        if "elements" in self._cache:
            return self._cache["elements"]
        ident = self.identity()
        els = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in self.generators:
                    c = a * g
                    if c not in els:
                        els.add(c)
                        nxt.append(c)
                        if len(els) > limit:
                            raise GroupError(f"group order exceeds enumeration limit {limit}")
            frontier = nxt
        result = frozenset(els)
        self._cache["elements"] = result
        return result

    def order(self, limit: int = MAX_ENUMERATION) -> int:
        return len(self.elements(limit))

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        if p.is_identity():
            return True
        return p in self.elements()

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)


def coset_action(group: PermGroup, subgroup_gens: Sequence[Permutation],
                 max_index: int = 200) -> tuple[PermGroup, list[Permutation]]:
    """Action of ``group`` on the right cosets of ``<subgroup_gens>`` by right multiplication.

    Returns the action (one generator image per generator of ``group``) and a list of
    coset representatives indexed by point; point 0 is the subgroup itself.
    """
    elements = group.elements()
    for h in subgroup_gens:
        if h not in elements:
            raise GroupError(f"subgroup generator {h} is not in the group")
    sub = PermGroup(group.degree, tuple(subgroup_gens)).elements()
    index, rem = divmod(len(elements), len(sub))
    assert rem == 0
    if index > max_index:
        raise GroupError(f"index {index} exceeds bound {max_index}")

    coset_id: dict[Permutation, int] = {}
    reps: list[Permutation] = []

    def label(g: Permutation) -> int:
        if g in coset_id:
            return coset_id[g]
        k = len(reps)
        reps.append(g)
        for h in sub:
            coset_id[h * g] = k
        return k

    label(group.identity())
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for x in group.generators:
            before = len(reps)
            label(reps[k] * x)
            if len(reps) > before:
                queue.append(len(reps) - 1)
    assert len(reps) == index
    action_gens = [Permutation(coset_id[reps[k] * x] for k in range(index))
                   for x in group.generators]
    return PermGroup(index, tuple(action_gens)), reps


def action_on_sets(gens: Sequence[Permutation], sets: Sequence[frozenset[int]]) -> PermGroup:
    """Induced action of point permutations on a family of point sets closed under them."""
    index = {s: i for i, s in enumerate(sets)}
    out = []
    for g in gens:
        out.append(Permutation(index[g.image_set(s)] for s in sets))
    return PermGroup(len(sets), tuple(out))


def _finest_block_containing(group: PermGroup, a: int, b: int) -> list[int]:
    """Union-find closure: the finest invariant partition with a and b in one part.

    Returns a parent array (roots label parts).
    """
    n = group.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque()

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return
        if rx > ry:
            rx, ry = ry, rx
        parent[ry] = rx
        queue.append((x, y))

    union(a, b)
    while queue:
        x, y = queue.popleft()
        for g in group.generators:
            union(g.images[x], g.images[y])
    return [find(x) for x in range(n)]


def block_systems(group: PermGroup) -> list[BlockSystem]:
    """All minimal nontrivial block systems of a transitive group (empty iff primitive)."""
    if not group.is_transitive():
        raise GroupError("block systems require a transitive group")
    n = group.degree
    found: dict[frozenset, BlockSystem] = {}
    for b in range(1, n):
        roots = _finest_block_containing(group, 0, b)
        parts: dict[int, set[int]] = {}
        for x, r in enumerate(roots):
            parts.setdefault(r, set()).add(x)
        if len(parts) == 1:
            continue
        bs = BlockSystem(n, tuple(sorted((frozenset(p) for p in parts.values()), key=min)))
        found.setdefault(bs.key(), bs)
    systems = list(found.values())

    def refines(fine: BlockSystem, coarse: BlockSystem) -> bool:
        return fine.block_size < coarse.block_size and \
            all(any(f <= c for c in coarse.blocks) for f in fine.blocks)

    minimal = [s for s in systems if not any(refines(t, s) for t in systems if t is not s)]
    return sorted(minimal, key=lambda s: (s.block_size, sorted(map(sorted, s.blocks))))


def suborbits(group: PermGroup, base: int = 0) -> SuborbitTable:
    """Orbits of the stabilizer of ``base`` together with the orbital pairing."""
    if not 0 <= base < group.degree:
        raise GroupError(f"base {base} out of range")
    if not group.is_transitive():
        raise GroupError("suborbits require a transitive group")
    stab = group.stabilizer(base)
    orbs = [o for o in stab.orbit_partition() if base not in o]
    orbs.sort(key=lambda o: (len(o), min(o)))
    subs = [frozenset([base])] + orbs
    where = {}
    for i, s in enumerate(subs):
        for x in s:
            where[x] = i
    trans = group.transversal(base)
    pairing = []
    for s in subs:
        u = min(s)
        # (base, u)^(t^-1) = (base^(t^-1), base), with t carrying base to u
        pairing.append(where[trans[u].inverse().images[base]])
    return SuborbitTable(base, tuple(subs), tuple(pairing))


def find_semiregular(group: PermGroup, m: int, n: int, budget: int = DEFAULT_SEMIREGULAR_BUDGET,
                     seed: int = 0) -> Permutation | None:
    """Search for an element with exactly m cycles of length n; None means not found."""
    if m * n != group.degree:
        raise GroupError(f"m*n = {m * n} differs from degree {group.degree}")
    try:
        elements = group.elements(limit=EXHAUSTIVE_SEMIREGULAR)
    except GroupError:
        elements = None
    if elements is not None:
        for g in sorted(elements, key=lambda p: p.images):
            if is_semiregular(g, m, n):
                return g
        return None

    rng = random.Random(seed)
    gens = list(group.generators)
    current = group.identity()
    for _ in range(budget):
        # random walk on the group; power each visited element down to order n
        current = current * rng.choice(gens)
        if rng.random() < 0.5:
            current = current * rng.choice(gens) * rng.choice(gens)
        o = current.order()
        if o % n == 0:
            cand = current ** (o // n)
            if is_semiregular(cand, m, n):
                return cand
    return None
