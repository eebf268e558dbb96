"""
Permutations of [n] = {1, ..., n} and the weak order.

Permutations are written in one-line notation with 1-indexed values, and the
weak order compares inversion sets, stored as pairs of values ``(b, a)`` with
``b > a`` appearing in that order.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_N = 10
MAX_ORACLE_N = 6


class ScaleGuardError(ValueError):
    """Raised when a brute-force operation is asked for too large an ``n``."""


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of [n] in one-line notation.

    >>> Permutation.parse("312")
    Permutation('312')
    >>> Permutation((3, 1, 2)).n
    3
    """

    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of [n]: {word}")
        if len(word) > MAX_N:
            raise ScaleGuardError(f"n = {len(word)} exceeds the supported maximum {MAX_N}")

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",")))
        return cls(tuple(int(c) for c in text))

    @property
    def n(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __getitem__(self, position: int) -> int:
        """Value at 1-indexed ``position``."""
        return self.word[position - 1]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.word))
        return ",".join(map(str, self.word))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def prefix(self, k: int) -> frozenset[int]:
        """The set of the first ``k`` values."""
        return frozenset(self.word[:k])

    def reverse(self) -> "Permutation":
        return Permutation(self.word[::-1])

    def swap(self, position: int) -> "Permutation":
        """Exchange the values at 1-indexed positions ``position`` and ``position + 1``."""
        w = list(self.word)
        w[position - 1], w[position] = w[position], w[position - 1]
        return Permutation(tuple(w))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    """The decreasing permutation, top of the weak order."""
    return Permutation(tuple(range(n, 0, -1)))


def all_permutations(n: int) -> list[Permutation]:
    """All of S_n in lexicographic order."""
    if not 1 <= n <= MAX_N:
        raise ScaleGuardError(f"n must lie in [1, {MAX_N}], got {n}")
    return [Permutation(w) for w in itertools.permutations(range(1, n + 1))]


def as_permutation(p: Permutation | str | Sequence[int]) -> Permutation:
    if isinstance(p, Permutation):
        return p
    if isinstance(p, str):
        return Permutation.parse(p)
    return Permutation(tuple(p))


def inversion_set(sigma: Permutation) -> frozenset[tuple[int, int]]:
    """Value pairs ``(sigma(i), sigma(j))`` with ``i < j`` and ``sigma(i) > sigma(j)``.

    >>> sorted(inversion_set(Permutation.parse("312")))
    [(3, 1), (3, 2)]
    """
    sigma = as_permutation(sigma)
    w = sigma.word
    return frozenset(
        (w[i], w[j]) for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j]
    )


def _check_same_n(sigma: Permutation, tau: Permutation) -> None:
    if sigma.n != tau.n:
        raise ValueError(f"size mismatch: {sigma.n} != {tau.n}")


def weak_leq(sigma: Permutation, tau: Permutation) -> bool:
    """Weak order comparison by inclusion of inversion sets.

    >>> weak_leq(Permutation.parse("213"), Permutation.parse("231"))
    True
    """
    sigma, tau = as_permutation(sigma), as_permutation(tau)
    _check_same_n(sigma, tau)
    return inversion_set(sigma) <= inversion_set(tau)


def covers(sigma: Permutation) -> list[Permutation]:
    """Upper covers of ``sigma``: swap each ascent at adjacent positions."""
    sigma = as_permutation(sigma)
    w = sigma.word
    return [sigma.swap(p) for p in range(1, sigma.n) if w[p - 1] < w[p]]


def adjacent_pairs(n: int) -> Iterator[tuple[Permutation, Permutation]]:
    """Every cover relation ``(lower, upper)`` of the weak order on S_n."""
    for sigma in all_permutations(n):
        for tau in covers(sigma):
            yield sigma, tau


def are_adjacent(sigma: Permutation, tau: Permutation) -> bool:
    """True when the two words differ by exchanging two consecutive positions."""
    if sigma.n != tau.n:
        return False
    diff = [k for k in range(sigma.n) if sigma.word[k] != tau.word[k]]
    return (
        len(diff) == 2
        and diff[1] == diff[0] + 1
        and sigma.word[diff[0]] == tau.word[diff[1]]
        and sigma.word[diff[1]] == tau.word[diff[0]]
    )


@functools.lru_cache(maxsize=None)
def _oracle_tables(n: int) -> tuple[tuple[Permutation, ...], dict[Permutation, int], list[frozenset]]:
    perms = tuple(all_permutations(n))
    index = {p: k for k, p in enumerate(perms)}
    return perms, index, [inversion_set(p) for p in perms]


def lattice_meet_join_oracle(sigma: Permutation, tau: Permutation) -> tuple[Permutation, Permutation]:
    """Meet and join in the weak order, found by scanning all of S_n.

    >>> lattice_meet_join_oracle(Permutation.parse("213"), Permutation.parse("132"))
    (Permutation('123'), Permutation('321'))
    """
    sigma, tau = as_permutation(sigma), as_permutation(tau)
    _check_same_n(sigma, tau)
    if sigma.n > MAX_ORACLE_N:
        raise ScaleGuardError(f"oracle supports n <= {MAX_ORACLE_N}, got {sigma.n}")
    perms, index, inv = _oracle_tables(sigma.n)
    a, b = inv[index[sigma]], inv[index[tau]]
    lower = [k for k in range(len(perms)) if inv[k] <= a and inv[k] <= b]
    upper = [k for k in range(len(perms)) if a <= inv[k] and b <= inv[k]]
    meets = [k for k in lower if all(inv[m] <= inv[k] for m in lower)]
    joins = [k for k in upper if all(inv[k] <= inv[m] for m in upper)]
    if len(meets) != 1 or len(joins) != 1:
        raise AssertionError("weak order failed to be a lattice")
    return perms[meets[0]], perms[joins[0]]


@functools.lru_cache(maxsize=None)
def meet_join_tables(n: int) -> tuple[list[list[int]], list[list[int]]]:
    """Meet and join tables of S_n indexed by position in :func:`all_permutations`."""
    perms, index, _ = _oracle_tables(n)
    size = len(perms)
    meet = [[0] * size for _ in range(size)]
    join = [[0] * size for _ in range(size)]
    for x in range(size):
        for y in range(x, size):
            m, j = lattice_meet_join_oracle(perms[x], perms[y])
            meet[x][y] = meet[y][x] = index[m]
            join[x][y] = join[y][x] = index[j]
    return meet, join


def parse_permutations(texts: Iterable[str]) -> list[Permutation]:
    return [Permutation.parse(t) for t in texts]
