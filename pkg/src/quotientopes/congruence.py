"""
Lattice congruences of the weak order from upper ideals of shards.

Two adjacent chambers are glued exactly when the shard carrying their common
wall is outside the ideal; the congruence classes are the connected components
of that gluing.
"""
from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field

from .braid import Wall, separating_wall
from .permutations import (
    Permutation,
    ScaleGuardError,
    adjacent_pairs,
    all_permutations,
    identity,
    inversion_set,
    longest,
    meet_join_tables,
    weak_leq,
)
from .shards import (
    Shard,
    ShardIdeal,
    all_shards,
    basic_shards,
    is_upper_ideal,
    missing_forcer,
    upward_closure,
)

MAX_REWRITING_N = 7
MAX_CONGRUENCE_ORACLE_N = 4


class NotAnIdealError(ValueError):
    """Raised when a shard set is not closed under forcing.

    ``member`` is in the set while ``forcer`` forces it but is absent.
    """

    def __init__(self, member: Shard, forcer: Shard):
        super().__init__(f"{forcer} forces {member} but is missing from the ideal")
        self.member = member
        self.forcer = forcer


@dataclass(frozen=True)
class Congruence:
    ideal: ShardIdeal

    def __post_init__(self):
        witness = missing_forcer(self.ideal.members, self.ideal.n)
        if witness is not None:
            raise NotAnIdealError(*witness)

    @property
    def n(self) -> int:
        return self.ideal.n

    @property
    def is_essential(self) -> bool:
        return self.ideal.is_essential

    def separates(self, wall: Wall) -> bool:
        return wall.shard in self.ideal


@dataclass(frozen=True)
class ClassPartition:
    """Congruence classes of S_n.

    Classes are sorted by their weak-order minimum, which serves as the class
    representative; each class lists its permutations in lexicographic order.
    """

    n: int
    classes: tuple[tuple[Permutation, ...], ...]
    class_of: dict[Permutation, int] = field(compare=False, repr=False)

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "ClassPartition":
        blocks = [tuple(sorted(b)) for b in blocks if b]
        blocks.sort(key=lambda b: _minimum(b).word)
        class_of = {p: k for k, b in enumerate(blocks) for p in b}
        return cls(n, tuple(blocks), class_of)

    def __len__(self) -> int:
        return len(self.classes)

    def representative(self, index: int) -> Permutation:
        return _minimum(self.classes[index])

    def maximum(self, index: int) -> Permutation:
        return _maximum(self.classes[index])

    def as_sets(self) -> set[frozenset[Permutation]]:
        return {frozenset(c) for c in self.classes}


def _minimum(block) -> Permutation:
    return min(block, key=lambda p: (len(inversion_set(p)), p.word))


def _maximum(block) -> Permutation:
    return max(block, key=lambda p: (len(inversion_set(p)), p.word))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self):
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@functools.lru_cache(maxsize=None)
def walls(n: int) -> tuple[Wall, ...]:
    """All walls of the braid fan, one per cover relation of the weak order."""
    return tuple(separating_wall(a, b) for a, b in adjacent_pairs(n))


def classes_from_ideal(c: Congruence) -> ClassPartition:
    """
    >>> len(classes_from_ideal(sylvester_ideal(4)))
    14
    """
    uf = _UnionFind(all_permutations(c.n))
    for w in walls(c.n):
        if not c.separates(w):
            uf.union(w.lower, w.upper)
    return ClassPartition.from_blocks(c.n, uf.groups())


@dataclass(frozen=True)
class QuotientPoset:
    """Hasse diagram of the quotient of the weak order on class indices."""

    partition: ClassPartition
    cover_edges: frozenset[tuple[int, int]]
    wall_shards: dict[tuple[int, int], Shard] = field(compare=False)

    @property
    def elements(self) -> range:
        return range(len(self.partition))

    @property
    def bottom(self) -> int:
        return self.partition.class_of[identity(self.partition.n)]

    @property
    def top(self) -> int:
        return self.partition.class_of[longest(self.partition.n)]


def quotient_covers(p: ClassPartition) -> QuotientPoset:
    edges: dict[tuple[int, int], Shard] = {}
    for w in walls(p.n):
        x, y = p.class_of[w.lower], p.class_of[w.upper]
        if x != y and (x, y) not in edges:
            edges[(x, y)] = w.shard
    return QuotientPoset(p, frozenset(edges), edges)


def sylvester_ideal(n: int) -> Congruence:
    """Shards whose arcs pass above every dot between their endpoints."""
    return Congruence(
        ShardIdeal(n, frozenset(s for s in all_shards(n) if s.above == s.interior))
    )


def anti_sylvester_ideal(n: int) -> Congruence:
    """Shards whose arcs pass below every dot between their endpoints."""
    return Congruence(upward_closure((s for s in all_shards(n) if not s.above), n))


def full_ideal(n: int) -> Congruence:
    return Congruence(ShardIdeal(n, frozenset(all_shards(n))))


def cube_ideal(n: int) -> Congruence:
    return Congruence(ShardIdeal(n, frozenset(basic_shards(n))))


PRESETS = {
    "full": full_ideal,
    "sylvester": sylvester_ideal,
    "anti-sylvester": anti_sylvester_ideal,
    "cube": cube_ideal,
}


def preset(name: str, n: int) -> Congruence:
    try:
        return PRESETS[name](n)
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def sylvester_classes_rewriting(n: int) -> ClassPartition:
    """Sylvester classes as components of the rewriting ``UacVbW ~ UcaVbW`` (a < b < c).

    >>> len(sylvester_classes_rewriting(4))
    14
    """
    if n > MAX_REWRITING_N:
        raise ScaleGuardError(f"rewriting closure is limited to n <= {MAX_REWRITING_N}")
    perms = all_permutations(n)
    seen: set[Permutation] = set()
    blocks = []
    for start in perms:
        if start in seen:
            continue
        block = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for q in _sylvester_moves(p):
                if q not in seen:
                    seen.add(q)
                    block.append(q)
                    queue.append(q)
        blocks.append(block)
    return ClassPartition.from_blocks(n, blocks)


def _sylvester_moves(p: Permutation):
    w = p.word
    for pos in range(1, p.n):
        lo, hi = sorted((w[pos - 1], w[pos]))
        if any(lo < b < hi for b in w[pos + 1:]):
            yield p.swap(pos)


def is_lattice_congruence_oracle(p: ClassPartition) -> bool:
    """Check meet and join compatibility of a partition by exhaustive scan.

    For every pair of classes X, Y all meets x ^ y (x in X, y in Y) must share
    a class, and likewise all joins; this is the compatibility condition
    quantified over every quadruple x, x' in X and y, y' in Y.
    """
    return congruence_oracle_witness(p) is None


def congruence_oracle_witness(p: ClassPartition):
    """A violating quadruple ``(x, x', y, y')`` or None."""
    if p.n > MAX_CONGRUENCE_ORACLE_N:
        raise ScaleGuardError(f"congruence oracle is limited to n <= {MAX_CONGRUENCE_ORACLE_N}")
    perms = all_permutations(p.n)
    index = {q: k for k, q in enumerate(perms)}
    meet, join = meet_join_tables(p.n)
    cls = [p.class_of[q] for q in perms]
    blocks = [[index[q] for q in c] for c in p.classes]
    for X, Y in itertools.product(blocks, repeat=2):
        for table in (meet, join):
            first: dict[int, tuple[int, int]] = {}
            for x in X:
                for y in Y:
                    k = cls[table[x][y]]
                    first.setdefault(k, (x, y))
                    if len(first) > 1:
                        (x0, y0), (x1, y1) = list(first.values())[:2]
                        return perms[x0], perms[x1], perms[y0], perms[y1]
    return None


def is_interval(p: ClassPartition, index: int) -> bool:
    """Whether a class equals the weak-order interval between its min and max."""
    block = set(p.classes[index])
    lo, hi = p.representative(index), p.maximum(index)
    if not all(weak_leq(lo, q) and weak_leq(q, hi) for q in block):
        return False
    between = {q for q in all_permutations(p.n) if weak_leq(lo, q) and weak_leq(q, hi)}
    return between == block


def arc_diagram_of_class(c: Congruence, p: ClassPartition, index: int) -> frozenset[Shard]:
    """Shards carrying the walls from a class down to the classes it covers."""
    members = set(p.classes[index])
    return frozenset(
        w.shard
        for w in walls(c.n)
        if w.upper in members and w.lower not in members
    )


def arcs_conflict(a: Shard, b: Shard) -> bool:
    """Whether two arcs cross or share a left or a right endpoint.

    The arcs are drawn between dots on a line, above the dots of their
    above-set and below the other interior dots. On each dot of the common
    stretch where their relative height is forced, record which arc is higher;
    they cross when both orders occur.

    >>> arcs_conflict(Shard(1, 3), Shard(2, 4))
    True
    >>> arcs_conflict(Shard(1, 3, {2}), Shard(2, 4))
    False
    >>> arcs_conflict(Shard(1, 4, {2}), Shard(2, 3))
    True
    """
    if a == b:
        return False
    if a.i == b.i or a.j == b.j:
        return True
    lo, hi = max(a.i, b.i), min(a.j, b.j)
    if lo >= hi:
        return False
    signs = set()
    for d in range(lo, hi + 1):
        a_end, b_end = d in (a.i, a.j), d in (b.i, b.j)
        if a_end and b_end:
            continue
        # +1 when b is higher than a at dot d.
        if a_end:
            signs.add(1 if d in b.above else -1)
        elif b_end:
            signs.add(-1 if d in a.above else 1)
        else:
            a_up, b_up = d in a.above, d in b.above
            if a_up != b_up:
                signs.add(1 if b_up else -1)
    return len(signs) == 2


def is_noncrossing(arcs) -> bool:
    return not any(arcs_conflict(a, b) for a, b in itertools.combinations(arcs, 2))


def refines(fine: ClassPartition, coarse: ClassPartition) -> bool:
    """Whether each class of ``fine`` lies inside a class of ``coarse``."""
    return all(len({coarse.class_of[q] for q in block}) == 1 for block in fine.classes)


def ideal_from_partition(p: ClassPartition) -> ShardIdeal:
    """Shards carrying walls between distinct classes."""
    members = frozenset(
        w.shard for w in walls(p.n) if p.class_of[w.lower] != p.class_of[w.upper]
    )
    return ShardIdeal(p.n, members)


def load_congruence(members, n: int) -> Congruence:
    members = frozenset(members)
    if not is_upper_ideal(members, n):
        raise NotAnIdealError(*missing_forcer(members, n))
    return Congruence(ShardIdeal(n, members))
