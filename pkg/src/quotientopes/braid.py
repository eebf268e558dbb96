"""
Rays, chambers and walls of the braid fan.

The chamber of a permutation sigma is {x_sigma(1) <= ... <= x_sigma(n)} inside
the hyperplane sum(x) = 0. Its rays are indexed by the prefix sets
sigma([k]) for 0 < k < n, and the ray of a proper nonempty subset R is
represented by the integer vector |R| * 1 - n * chi_R.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .permutations import Permutation, are_adjacent, as_permutation, inversion_set
from .shards import Shard

Subset = frozenset[int]


class NotAdjacentError(ValueError):
    """Raised when two permutations do not differ by one adjacent swap."""


def subset(elements: Iterable[int] = ()) -> Subset:
    return frozenset(elements)


def proper_subsets(n: int) -> list[Subset]:
    """All proper nonempty subsets of [n], ordered by bitmask value."""
    return [
        frozenset(k + 1 for k in range(n) if mask >> k & 1) for mask in range(1, (1 << n) - 1)
    ]


def ray_vector(R: Iterable[int], n: int) -> tuple[int, ...]:
    """Integer representative of the ray of R; zero for the empty set and [n].

    >>> ray_vector({1, 3}, 4)
    (-2, 2, -2, 2)
    >>> ray_vector(set(), 4)
    (0, 0, 0, 0)
    """
    R = frozenset(R)
    if not R or len(R) == n:
        return (0,) * n
    size = len(R)
    return tuple(size - n if k in R else size for k in range(1, n + 1))


def chamber_rays(sigma: Permutation) -> list[Subset]:
    """Prefix sets sigma([1]), ..., sigma([n-1]) labelling the rays of a chamber.

    >>> chamber_rays(Permutation.parse("312"))
    [frozenset({3}), frozenset({1, 3})]
    """
    sigma = as_permutation(sigma)
    return [sigma.prefix(k) for k in range(1, sigma.n)]


@dataclass(frozen=True)
class Wall:
    """The common facet of two adjacent chambers.

    ``lower`` is covered by ``upper`` in the weak order. ``R`` and ``Rp`` are the
    rays of the two chambers off the wall, with R minus {k} equal to Rp minus
    {kp} and k < kp.
    """

    lower: Permutation
    upper: Permutation
    R: Subset
    Rp: Subset
    k: int
    kp: int
    position: int

    @property
    def shard(self) -> Shard:
        between = frozenset(range(self.k + 1, self.kp))
        return Shard(self.k, self.kp, self.R & self.Rp & between)

    @property
    def meet_set(self) -> Subset:
        return self.R & self.Rp

    @property
    def join_set(self) -> Subset:
        return self.R | self.Rp


def separating_wall(sigma: Permutation, sigma_p: Permutation) -> Wall:
    """The wall between two adjacent chambers, oriented by the weak order.

    >>> separating_wall(Permutation.parse("4132"), Permutation.parse("4312")).shard
    Shard(1, 3, {})
    """
    sigma, sigma_p = as_permutation(sigma), as_permutation(sigma_p)
    if not are_adjacent(sigma, sigma_p):
        raise NotAdjacentError(f"{sigma} and {sigma_p} are not adjacent")
    if len(inversion_set(sigma)) > len(inversion_set(sigma_p)):
        sigma, sigma_p = sigma_p, sigma
    i = next(p for p in range(1, sigma.n) if sigma[p] != sigma_p[p])
    R, Rp = sigma.prefix(i), sigma_p.prefix(i)
    (a,) = R - Rp
    (b,) = Rp - R
    if a < b:
        return Wall(sigma, sigma_p, R, Rp, a, b, i)
    return Wall(sigma, sigma_p, Rp, R, b, a, i)


def check_linear_dependence(sigma: Permutation, sigma_p: Permutation) -> bool:
    """Check r(R) + r(R') = r(R & R') + r(R | R') across the wall of two chambers.

    >>> check_linear_dependence(Permutation.parse("123"), Permutation.parse("213"))
    True
    """
    w = separating_wall(sigma, sigma_p)
    n = w.lower.n
    lhs = [a + b for a, b in zip(ray_vector(w.R, n), ray_vector(w.Rp, n))]
    rhs = [a + b for a, b in zip(ray_vector(w.meet_set, n), ray_vector(w.join_set, n))]
    return lhs == rhs


def ray_in_shard(R: Iterable[int], shard: Shard) -> bool:
    """Whether the ray of R lies in the shard.

    >>> ray_in_shard({4}, Shard(1, 3)), ray_in_shard({2}, Shard(1, 3))
    (True, False)
    """
    R = frozenset(R)
    ends = {shard.i, shard.j}
    inside = shard.interior & R
    if ends <= R:
        return shard.above <= inside
    if not ends & R:
        return inside <= shard.above
    return False
