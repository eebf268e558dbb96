"""
Heights, vertices and the polytope realizing a quotient fan.

Given an upper ideal of shards and positive forcing-dominant shard weights f,
the height of a proper nonempty subset R is the total weight of the ideal
shards contributing to R, and the polytope is

    { x : <r(R), x> <= h(R) for every proper nonempty R },

whose normal fan is the quotient fan of the congruence.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .braid import Subset, chamber_rays, proper_subsets, ray_vector, separating_wall
from .congruence import (
    ClassPartition,
    Congruence,
    QuotientPoset,
    classes_from_ideal,
    quotient_covers,
)
from .linalg import Vector, affine_dimension, dot, rank, solve_linear_system
from .permutations import Permutation, as_permutation, identity, longest
from .shards import Shard, all_shards, dominance_witness


class DominanceError(ValueError):
    """Raised when weights carry no valid forcing-dominance certificate."""


class VerificationError(RuntimeError):
    """Raised when a built polytope fails one of its geometric checks."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateOrientationError(VerificationError):
    pass


@dataclass(frozen=True)
class WeightFunction:
    """Positive rational shard weights with their dominance certificate.

    ``certificate`` is ``"global"`` when dominance holds over all shards,
    ``"per-ideal"`` when it was only checked inside one ideal, else None.
    """

    n: int
    values: Mapping[Shard, Fraction] = field(compare=True)
    certificate: str | None = None
    source: str = "custom"

    def __getitem__(self, shard: Shard) -> Fraction:
        return self.values[shard]

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.values.items())), self.certificate))

    @classmethod
    def certify(cls, n: int, values: Mapping[Shard, Fraction], source: str = "custom") -> "WeightFunction":
        """Attach the global certificate when it holds, otherwise none."""
        values = {s: Fraction(v) for s, v in values.items()}
        for s, v in values.items():
            if v <= 0:
                raise ValueError(f"weight of {s} is not positive: {v}")
        cert = None
        if all(s in values for s in all_shards(n)) and dominance_witness(values, n) is None:
            cert = "global"
        return cls(n, values, cert, source)


def default_weights(n: int) -> WeightFunction:
    """f(Shard(i, j, S)) = n ** -((j - i) ** 2).

    >>> default_weights(3)[Shard(1, 2)]
    Fraction(1, 3)
    """
    values = {s: Fraction(1, n ** (s.span ** 2)) for s in all_shards(n)}
    return WeightFunction.certify(n, values, source="default")


def constant_weights(n: int, value=1) -> WeightFunction:
    return WeightFunction.certify(n, {s: Fraction(value) for s in all_shards(n)})


def contribution(shard: Shard, R: Iterable[int]) -> int:
    """1 when R holds exactly one endpoint and meets ]i, j[ in the above-set.

    >>> contribution(Shard(1, 2), {1}), contribution(Shard(1, 3, {2}), {1})
    (1, 0)
    """
    R = frozenset(R)
    if len(R & {shard.i, shard.j}) == 1 and R & shard.interior == shard.above:
        return 1
    return 0


@dataclass(frozen=True)
class HeightFunction:
    """Exact heights h(R) for every proper nonempty subset R of [n]."""

    n: int
    values: Mapping[Subset, Fraction]

    def __call__(self, R: Iterable[int]) -> Fraction:
        R = frozenset(R)
        if not R or len(R) == self.n:
            return Fraction(0)
        return self.values[R]

    def __hash__(self):
        return hash((self.n, tuple(sorted((tuple(sorted(k)), v) for k, v in self.values.items()))))

    def with_value(self, R: Iterable[int], value) -> "HeightFunction":
        values = dict(self.values)
        values[frozenset(R)] = Fraction(value)
        return HeightFunction(self.n, values)


def _ensure_certified(c: Congruence, f: WeightFunction) -> None:
    missing = [s for s in c.ideal.members if s not in f.values]
    if missing:
        raise KeyError(f"missing weight for shard {min(missing)}")
    if f.certificate == "global":
        return
    if dominance_witness(f.values, c.n, per_ideal=c.ideal) is None:
        warnings.warn(
            "weights are forcing dominant only within this ideal", stacklevel=3
        )
        return
    raise DominanceError("weights are not forcing dominant, globally or within the ideal")


def heights(c: Congruence, f: WeightFunction) -> HeightFunction:
    """
    >>> from quotientopes.congruence import sylvester_ideal
    >>> h = heights(sylvester_ideal(3), default_weights(3))
    >>> h({1}), h({1, 2}), h({2})
    (Fraction(1, 3), Fraction(28, 81), Fraction(2, 3))
    """
    _ensure_certified(c, f)
    members = sorted(c.ideal.members)
    values = {
        R: sum((f[s] for s in members if contribution(s, R)), Fraction(0))
        for R in proper_subsets(c.n)
    }
    return HeightFunction(c.n, values)


class WallCheck(enum.Enum):
    STRICT = "strict"
    EQUAL = "equal"
    VIOLATED = "violated"


def check_wall_inequality(
    c: Congruence, h: HeightFunction, sigma: Permutation, sigma_p: Permutation
) -> WallCheck:
    """Compare h(R) + h(R') with h(R & R') + h(R | R') across a wall."""
    w = separating_wall(sigma, sigma_p)
    lhs = h(w.R) + h(w.Rp)
    rhs = h(w.meet_set) + h(w.join_set)
    if lhs > rhs:
        return WallCheck.STRICT
    if lhs == rhs:
        return WallCheck.EQUAL
    return WallCheck.VIOLATED


def alpha(n: int) -> tuple[int, ...]:
    """The direction (-n+1, -n+3, ..., n-3, n-1).

    >>> alpha(4)
    (-3, -1, 1, 3)
    """
    return tuple(2 * k - n - 1 for k in range(1, n + 1))


def chamber_vertex(h: HeightFunction, sigma: Permutation) -> Vector:
    """Point where the inequalities of the rays of a chamber are tight, inside sum(x) = 0."""
    sigma = as_permutation(sigma)
    n = sigma.n
    rays = chamber_rays(sigma)
    A = [ray_vector(R, n) for R in rays] + [(1,) * n]
    b = [h(R) for R in rays] + [Fraction(0)]
    return solve_linear_system(A, b)


def class_vertex(p: ClassPartition, h: HeightFunction, index: int, representative: Permutation | None = None) -> Vector:
    """Vertex of a congruence class, solved from one of its chambers.

    >>> from quotientopes.congruence import sylvester_ideal
    >>> c = sylvester_ideal(3)
    >>> p = classes_from_ideal(c)
    >>> class_vertex(p, heights(c, default_weights(3)), 0)
    (Fraction(-1, 9), Fraction(-1, 243), Fraction(28, 243))
    """
    block = p.classes[index]
    if not block:
        raise ValueError("empty class")
    sigma = p.representative(index) if representative is None else representative
    if sigma not in block:
        raise ValueError(f"{sigma} is not in class {index}")
    return chamber_vertex(h, sigma)


def tight_sets(h: HeightFunction, v: Vector) -> frozenset[Subset]:
    return frozenset(R for R in proper_subsets(h.n) if dot(ray_vector(R, h.n), v) == h(R))


def class_ray_sets(p: ClassPartition, index: int) -> frozenset[Subset]:
    """Union of the chamber-ray labels over the chambers of a class."""
    return frozenset(R for sigma in p.classes[index] for R in chamber_rays(sigma))


@dataclass(frozen=True)
class Quotientope:
    """The realized polytope of a congruence.

    Vertices, tight sets and edges are indexed by class position in
    ``partition``. ``orientation_sign`` is ``"-"`` when edges point towards
    decreasing <alpha, x>, which puts the identity class at the source.
    """

    congruence: Congruence
    weights: WeightFunction = field(compare=False)
    heights: HeightFunction
    partition: ClassPartition
    poset: QuotientPoset = field(compare=False, repr=False)
    vertices: tuple[Vector, ...]
    tight_sets: tuple[frozenset[Subset], ...] = field(repr=False)
    facet_normals: tuple[Subset, ...]
    edges: tuple[tuple[int, int], ...]
    dimension: int
    orientation_sign: str

    @property
    def n(self) -> int:
        return self.congruence.n

    def vertex_of(self, sigma: Permutation) -> Vector:
        return self.vertices[self.partition.class_of[as_permutation(sigma)]]

    def facet_vertices(self, R: Subset) -> list[int]:
        return [k for k, T in enumerate(self.tight_sets) if R in T]

    def contains(self, x: Vector) -> bool:
        """Whether ``x`` (in the sum-zero hyperplane) satisfies every inequality."""
        if sum(x) != 0:
            return False
        return all(dot(ray_vector(R, self.n), x) <= self.heights(R) for R in proper_subsets(self.n))


def build_quotientope(c: Congruence, f: WeightFunction | None = None, h: HeightFunction | None = None) -> Quotientope:
    """Build the polytope of a congruence and certify its inequalities at every vertex.

    ``h`` overrides the heights computed from ``f``; a vertex violating an
    inequality raises :class:`VerificationError`.

    >>> from quotientopes.congruence import sylvester_ideal
    >>> q = build_quotientope(sylvester_ideal(4))
    >>> len(q.vertices), len(q.edges), len(q.facet_normals)
    (14, 21, 9)
    """
    n = c.n
    if f is None:
        f = default_weights(n)
    if h is None:
        h = heights(c, f)
    p = classes_from_ideal(c)
    poset = quotient_covers(p)
    vertices = tuple(class_vertex(p, h, k) for k in range(len(p)))
    subsets = proper_subsets(n)
    rays = {R: ray_vector(R, n) for R in subsets}
    tight = []
    for k, v in enumerate(vertices):
        T = set()
        for R in subsets:
            value = dot(rays[R], v)
            if value > h(R):
                raise VerificationError(
                    f"vertex of class {p.representative(k)} violates the inequality of {sorted(R)}",
                    witness=(p.representative(k), R),
                )
            if value == h(R):
                T.add(R)
        tight.append(frozenset(T))
    dimension = affine_dimension(vertices)

    facets = []
    for R in subsets:
        on = [vertices[k] for k in range(len(vertices)) if R in tight[k]]
        if on and affine_dimension(on) == dimension - 1:
            facets.append(R)

    edges = tuple(sorted(poset.cover_edges))
    for x, y in edges:
        common = tight[x] & tight[y]
        if rank([rays[R] for R in common]) != n - 2:
            raise VerificationError(
                f"classes {p.representative(x)} and {p.representative(y)} do not span an edge",
                witness=(x, y),
            )
    sign = _orientation_sign(n, vertices, edges, p)
    return Quotientope(
        congruence=c,
        weights=f,
        heights=h,
        partition=p,
        poset=poset,
        vertices=vertices,
        tight_sets=tuple(tight),
        facet_normals=tuple(facets),
        edges=edges,
        dimension=dimension,
        orientation_sign=sign,
    )


def _orientation_sign(n, vertices, edges, p: ClassPartition) -> str:
    a = alpha(n)
    values = [dot(a, v) for v in vertices]
    for x, y in edges:
        if values[x] == values[y]:
            raise DegenerateOrientationError(
                f"edge {p.representative(x)} - {p.representative(y)} is orthogonal to alpha",
                witness=(x, y),
            )
    source = p.class_of[identity(n)]
    if all(values[source] > values[k] for k in range(len(vertices)) if k != source):
        return "-"
    if all(values[source] < values[k] for k in range(len(vertices)) if k != source):
        return "+"
    raise DegenerateOrientationError("identity class is not extreme in direction alpha")


@dataclass
class OrientedGraph:
    """Polytope edges oriented along alpha and its match with the quotient poset."""

    arcs: frozenset[tuple[int, int]]
    sign: str
    sources: list[int]
    sinks: list[int]
    isomorphic: bool
    mapping: dict[int, int]


def oriented_graph(q: Quotientope) -> OrientedGraph:
    """Orient the polytope graph along alpha and compare it with the quotient Hasse diagram.

    The isomorphism witness is the identity map on class indices, since the
    vertices are indexed by their classes.
    """
    a = alpha(q.n)
    values = [dot(a, v) for v in q.vertices]
    arcs = set()
    for x, y in q.edges:
        if values[x] == values[y]:
            raise DegenerateOrientationError("tie along alpha on an edge", witness=(x, y))
        # "-" orients from larger to smaller <alpha, x>.
        if (values[x] > values[y]) == (q.orientation_sign == "-"):
            arcs.add((x, y))
        else:
            arcs.add((y, x))
    arcs = frozenset(arcs)
    k = len(q.vertices)
    sources = [v for v in range(k) if not any(t == v for _, t in arcs)]
    sinks = [v for v in range(k) if not any(s == v for s, _ in arcs)]
    iso = (
        arcs == q.poset.cover_edges
        and sources == [q.poset.bottom]
        and sinks == [q.poset.top]
    )
    return OrientedGraph(arcs, q.orientation_sign, sources, sinks, iso, {v: v for v in range(k)})


@dataclass
class NormalFanReport:
    failures: list[tuple[Permutation, Subset, str]]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_normal_fan(q: Quotientope) -> NormalFanReport:
    """Check every inequality at every vertex, with equality exactly on the class rays."""
    failures = []
    n = q.n
    for k, v in enumerate(q.vertices):
        expected = class_ray_sets(q.partition, k)
        rep = q.partition.representative(k)
        for R in proper_subsets(n):
            value, bound = dot(ray_vector(R, n), v), q.heights(R)
            if value > bound:
                failures.append((rep, R, "violated"))
            elif (value == bound) != (R in expected):
                failures.append((rep, R, "tight" if value == bound else "slack"))
    return NormalFanReport(failures)


def vertex_consistency(q: Quotientope, representatives: Iterable[Permutation] | None = None) -> list[Permutation]:
    """Chambers whose own solved vertex differs from their class vertex."""
    chambers = (
        [s for block in q.partition.classes for s in block]
        if representatives is None
        else list(representatives)
    )
    return [s for s in chambers if chamber_vertex(q.heights, s) != q.vertex_of(s)]


def euler_characteristic(q: Quotientope) -> int:
    """V - E + F for a 3-dimensional quotientope."""
    return len(q.vertices) - len(q.edges) + len(q.facet_normals)


def top_vertex(q: Quotientope) -> Vector:
    return q.vertex_of(longest(q.n))
