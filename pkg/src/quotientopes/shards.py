"""
Shards of the braid arrangement and the forcing order.

The shard ``Shard(i, j, S)`` is the piece of the hyperplane x_i = x_j on which
x_k <= x_i for k in S and x_k >= x_i for the other k strictly between i and j.
In arc notation it is an arc from dot i to dot j passing above the dots of S
and below the remaining dots in between.

Lattice congruences of the weak order correspond to upper ideals of the
forcing order, represented here by :class:`ShardIdeal`.
"""
from __future__ import annotations

import functools
import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .permutations import MAX_N, ScaleGuardError

MAX_ENUMERATE_N = 4


@dataclass(frozen=True)
class Shard:
    """The shard with endpoints ``i < j`` and above-set ``above`` within ]i, j[.

    >>> Shard(1, 4, {2})
    Shard(1, 4, {2})
    >>> Shard(1, 3, {3})
    Traceback (most recent call last):
    ...
    ValueError: above-set {3} is not inside ]1,3[
    """

    i: int
    j: int
    above: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "above", frozenset(self.above))
        if not 1 <= self.i < self.j:
            raise ValueError(f"shard endpoints must satisfy 1 <= i < j, got ({self.i}, {self.j})")
        if not self.above <= self.interior:
            raise ValueError(
                f"above-set {format_set(self.above)} is not inside ]{self.i},{self.j}["
            )

    @property
    def interior(self) -> frozenset[int]:
        return frozenset(range(self.i + 1, self.j))

    @property
    def below(self) -> frozenset[int]:
        return self.interior - self.above

    @property
    def span(self) -> int:
        return self.j - self.i

    @property
    def is_basic(self) -> bool:
        return self.j == self.i + 1

    def sort_key(self) -> tuple[int, int, int]:
        return (self.i, self.j, sum(1 << (k - 1) for k in self.above))

    def __lt__(self, other: "Shard") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Shard({self.i}, {self.j}, {format_set(self.above)})"

    def __str__(self) -> str:
        return format_shard(self)


def format_set(s: Iterable[int]) -> str:
    """
    >>> format_set({3, 1}), format_set(())
    ('{1,3}', '{}')
    """
    return "{" + ",".join(map(str, sorted(s))) + "}"


def parse_set(text: str) -> frozenset[int]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"malformed subset: {text!r}")
    body = text[1:-1].strip()
    return frozenset(int(t) for t in body.split(",")) if body else frozenset()


_SHARD_RE = re.compile(r"^\s*(\d+)-(\d+):\[([\d,\s]*)\]\s*$")


def format_shard(shard: Shard) -> str:
    """Canonical text form ``"i-j:[s1,s2,...]"``.

    >>> format_shard(Shard(1, 4, {2}))
    '1-4:[2]'
    """
    return f"{shard.i}-{shard.j}:[" + ",".join(map(str, sorted(shard.above))) + "]"


def parse_shard(text: str) -> Shard:
    """
    >>> parse_shard("2-3:[]")
    Shard(2, 3, {})
    """
    m = _SHARD_RE.match(text)
    if not m:
        raise ValueError(f"malformed shard text: {text!r}")
    body = m.group(3).strip()
    above = [int(t) for t in body.split(",")] if body else []
    if len(set(above)) != len(above):
        raise ValueError(f"repeated dot in shard text: {text!r}")
    return Shard(int(m.group(1)), int(m.group(2)), frozenset(above))


def parse_shard_list(text: str) -> list[Shard]:
    """Parse whitespace- or semicolon-separated shard texts."""
    found = re.findall(r"\d+-\d+:\[[^\]]*\]", text)
    rest = re.sub(r"\d+-\d+:\[[^\]]*\]", "", text)
    if rest.strip(" ;\t\n"):
        raise ValueError(f"malformed shard list: {text!r}")
    return [parse_shard(t) for t in found]


def _check_n(n: int) -> None:
    if not 2 <= n <= MAX_N:
        raise ScaleGuardError(f"n must lie in [2, {MAX_N}], got {n}")


@functools.lru_cache(maxsize=None)
def all_shards(n: int) -> tuple[Shard, ...]:
    """All shards of the braid arrangement in R^n, in canonical order.

    >>> [len(all_shards(n)) for n in (2, 3, 4, 5)]
    [1, 4, 11, 26]
    """
    _check_n(n)
    out = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        interior = range(i + 1, j)
        for r in range(len(interior) + 1):
            for above in itertools.combinations(interior, r):
                out.append(Shard(i, j, frozenset(above)))
    return tuple(sorted(out))


def basic_shards(n: int) -> tuple[Shard, ...]:
    return tuple(Shard(i, i + 1) for i in range(1, n))


def forces(a: Shard, b: Shard) -> bool:
    """True when ``a`` forces ``b`` (reflexive).

    ``Shard(i, j, S)`` forces ``Shard(k, l, T)`` when k <= i < j <= l and
    S = T restricted to ]i, j[.

    >>> forces(Shard(2, 3), Shard(1, 4, {2}))
    True
    >>> forces(Shard(1, 3), Shard(1, 3, {2}))
    False
    """
    return b.i <= a.i and a.j <= b.j and a.above == (b.above & a.interior)


def strictly_forces(a: Shard, b: Shard) -> bool:
    return a != b and forces(a, b)


@functools.lru_cache(maxsize=None)
def forcers(n: int) -> dict[Shard, tuple[Shard, ...]]:
    """Map each shard to the shards that strictly force it."""
    shards = all_shards(n)
    return {b: tuple(a for a in shards if strictly_forces(a, b)) for b in shards}


@functools.lru_cache(maxsize=None)
def forced_by(n: int) -> dict[Shard, tuple[Shard, ...]]:
    """Map each shard to the shards it strictly forces."""
    shards = all_shards(n)
    return {a: tuple(b for b in shards if strictly_forces(a, b)) for a in shards}


@dataclass(frozen=True)
class ShardIdeal:
    """An upper ideal of the forcing order on the shards of R^n."""

    n: int
    members: frozenset[Shard]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        for s in self.members:
            if s.j > self.n:
                raise ValueError(f"shard {s} does not live in R^{self.n}")

    def __contains__(self, shard: Shard) -> bool:
        return shard in self.members

    def __iter__(self) -> Iterator[Shard]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "ShardIdeal") -> bool:
        return self.n == other.n and self.members <= other.members

    @property
    def is_essential(self) -> bool:
        return all(b in self.members for b in basic_shards(self.n))

    def sort_key(self) -> tuple:
        return (len(self.members), [s.sort_key() for s in sorted(self.members)])

    def __str__(self) -> str:
        return " ".join(format_shard(s) for s in self)


def missing_forcer(members: Iterable[Shard], n: int) -> tuple[Shard, Shard] | None:
    """Return ``(member, forcer)`` with the forcer absent, or None for an upper ideal."""
    members = frozenset(members)
    table = forcers(n)
    for b in sorted(members):
        for a in table[b]:
            if a not in members:
                return b, a
    return None


def is_upper_ideal(members: Iterable[Shard], n: int) -> bool:
    """
    >>> is_upper_ideal({Shard(1, 3, {2})}, 3)
    False
    >>> is_upper_ideal(all_shards(3), 3)
    True
    """
    return missing_forcer(members, n) is None


def upward_closure(generators: Iterable[Shard], n: int) -> ShardIdeal:
    """Smallest upper ideal containing ``generators``.

    >>> sorted(upward_closure({Shard(1, 3, {2})}, 3).members)
    [Shard(1, 2, {}), Shard(1, 3, {2}), Shard(2, 3, {})]
    """
    table = forcers(n)
    members = set()
    stack = list(generators)
    while stack:
        s = stack.pop()
        if s in members:
            continue
        if s not in table:
            raise ValueError(f"shard {s} does not live in R^{n}")
        members.add(s)
        stack.extend(table[s])
    return ShardIdeal(n, frozenset(members))


def enumerate_upper_ideals(
    n: int, essential_only: bool = False, limit: int | None = None
) -> Iterator[ShardIdeal]:
    """Every upper ideal of the forcing order, each exactly once.

    Ideals come sorted by cardinality, then by their sorted shard lists. Full
    enumeration is restricted to ``n <= 4``; ``n = 5`` needs an explicit
    ``limit`` and then yields the first ``limit`` ideals of the search.

    >>> sum(1 for _ in enumerate_upper_ideals(4, essential_only=True))
    47
    """
    _check_n(n)
    if n > MAX_ENUMERATE_N and (n > MAX_ENUMERATE_N + 1 or limit is None):
        raise ScaleGuardError(
            f"full ideal enumeration is limited to n <= {MAX_ENUMERATE_N}; "
            "n = 5 requires an explicit limit"
        )
    found = list(itertools.islice(_search_ideals(n, essential_only), limit))
    found.sort(key=ShardIdeal.sort_key)
    return iter(found)


def _search_ideals(n: int, essential_only: bool) -> Iterator[ShardIdeal]:
    # Strict forcers always have smaller span, so deciding shards by increasing
    # span lets each decision check its forcers, all of which are already fixed.
    order = sorted(all_shards(n), key=lambda s: (s.span, s.sort_key()))
    table = forcers(n)
    chosen: set[Shard] = set()

    def recurse(k: int) -> Iterator[ShardIdeal]:
        if k == len(order):
            yield ShardIdeal(n, frozenset(chosen))
            return
        s = order[k]
        can_include = all(a in chosen for a in table[s])
        must_include = essential_only and s.is_basic
        if can_include:
            chosen.add(s)
            yield from recurse(k + 1)
            chosen.discard(s)
        if not must_include:
            yield from recurse(k + 1)

    yield from recurse(0)


def sample_upper_ideals(
    n: int, count: int, seed: int | None = None, essential_only: bool = True
) -> list[ShardIdeal]:
    """Random upper ideals generated as closures of random shard subsets."""
    rng = random.Random(seed)
    shards = all_shards(n)
    out = []
    for _ in range(count):
        density = rng.random()
        gens = [s for s in shards if rng.random() < density]
        if essential_only:
            gens.extend(basic_shards(n))
        out.append(upward_closure(gens, n))
    return out


def _reverse_shard(s: Shard, n: int) -> Shard:
    return Shard(n + 1 - s.j, n + 1 - s.i, frozenset(n + 1 - k for k in s.above))


def _flip_shard(s: Shard) -> Shard:
    return Shard(s.i, s.j, s.interior - s.above)


def symmetry_images(ideal: ShardIdeal) -> list[ShardIdeal]:
    """Images of an ideal under reversal of [n] and above/below exchange.

    Both maps preserve the forcing order, so the images are upper ideals.
    """
    n = ideal.n
    out = []
    for rev, flip in itertools.product((False, True), repeat=2):
        members = ideal.members
        if rev:
            members = frozenset(_reverse_shard(s, n) for s in members)
        if flip:
            members = frozenset(_flip_shard(s) for s in members)
        out.append(ShardIdeal(n, members))
    return out


def count_up_to_symmetry(ideals: Iterable[ShardIdeal]) -> int:
    """Number of orbits of the given ideals under :func:`symmetry_images`.

    >>> count_up_to_symmetry(enumerate_upper_ideals(4, essential_only=True))
    20
    """
    seen: set[frozenset] = set()
    orbits = 0
    for ideal in ideals:
        if ideal.members in seen:
            continue
        orbits += 1
        seen.update(img.members for img in symmetry_images(ideal))
    return orbits


def check_forcing_dominant(
    weights: Mapping[Shard, Fraction], n: int, per_ideal: ShardIdeal | None = None
) -> bool:
    """Whether every weight outweighs the total of the shards it strictly forces.

    In per-ideal mode only shards of the ideal are tested and only forced
    shards inside the ideal are summed.
    """
    return dominance_witness(weights, n, per_ideal) is None


def dominance_witness(
    weights: Mapping[Shard, Fraction], n: int, per_ideal: ShardIdeal | None = None
) -> Shard | None:
    """First shard (canonical order) at which forcing dominance fails, else None."""
    scope = all_shards(n) if per_ideal is None else sorted(per_ideal.members)
    for s in scope:
        if s not in weights:
            raise KeyError(f"missing weight for shard {s}")
        if weights[s] <= 0:
            raise ValueError(f"weight of shard {s} is not positive: {weights[s]}")
    table = forced_by(n)
    for s in scope:
        below = table[s]
        if per_ideal is not None:
            below = [t for t in below if t in per_ideal]
        if not weights[s] > sum((weights[t] for t in below), Fraction(0)):
            return s
    return None
