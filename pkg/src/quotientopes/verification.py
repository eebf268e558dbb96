"""
Certificate suite for one congruence.

Each check yields a :class:`CheckResult` with a pass flag and, on failure, a
witness. Checks never raise on a mathematical failure; they report it.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Any

from .braid import chamber_rays, check_linear_dependence, ray_in_shard
from .congruence import (
    MAX_CONGRUENCE_ORACLE_N,
    Congruence,
    arc_diagram_of_class,
    congruence_oracle_witness,
    is_interval,
    is_noncrossing,
    walls,
)
from .quotientope import (
    DominanceError,
    HeightFunction,
    VerificationError,
    WallCheck,
    WeightFunction,
    build_quotientope,
    check_wall_inequality,
    default_weights,
    euler_characteristic,
    heights,
    oriented_graph,
    verify_normal_fan,
    vertex_consistency,
)
from .shards import dominance_witness, format_set

LEVELS = ("all", "fast", "off")


@dataclass
class CheckResult:
    check: str
    passed: bool
    detail: str = ""
    witness: Any = None


@dataclass
class Report:
    n: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, check: str, passed: bool, detail: str = "", witness=None) -> None:
        self.results.append(CheckResult(check, bool(passed), detail, witness))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "checks": [asdict(r) for r in self.results],
        }


def _wall_text(w) -> list[str]:
    return [str(w.lower), str(w.upper)]


def verify_congruence(
    c: Congruence,
    f: WeightFunction | None = None,
    h: HeightFunction | None = None,
    level: str = "all",
    seed: int | None = None,
    sample: int = 200,
) -> Report:
    """Run the certificate suite on one congruence.

    ``h`` replaces the heights derived from ``f``. With ``level="fast"`` the
    brute-force oracles are skipped; for n >= 5 vertex consistency is checked
    on ``sample`` chambers drawn with ``seed``.
    """
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    n = c.n
    report = Report(n)
    if level == "off":
        return report
    f = default_weights(n) if f is None else f
    all_walls = walls(n)

    bad = next((w for w in all_walls if not check_linear_dependence(w.lower, w.upper)), None)
    report.add("ray-linear-dependence", bad is None, witness=bad and _wall_text(bad))

    bad = None
    for w in all_walls:
        shared = [R for R in chamber_rays(w.lower) if R in set(chamber_rays(w.upper))]
        if not all(ray_in_shard(R, w.shard) for R in shared):
            bad = w
            break
    report.add("wall-rays-in-shard", bad is None, witness=bad and _wall_text(bad))

    witness = dominance_witness(f.values, n, per_ideal=None if f.certificate == "global" else c.ideal)
    report.add(
        "forcing-dominance",
        witness is None,
        detail=f.certificate or "per-ideal",
        witness=witness and str(witness),
    )

    if h is None:
        try:
            h = heights(c, f)
        except DominanceError as e:
            report.add("heights", False, detail=str(e))
            return report
    failures = []
    for w in all_walls:
        status = check_wall_inequality(c, h, w.lower, w.upper)
        expected = WallCheck.STRICT if w.shard in c.ideal else WallCheck.EQUAL
        if status is not expected:
            failures.append(_wall_text(w) + [status.value, expected.value])
    report.add(
        "wall-inequality",
        not failures,
        detail=f"{len(all_walls)} walls",
        witness=failures[0] if failures else None,
    )

    try:
        q = build_quotientope(c, f, h=h)
    except VerificationError as e:
        report.add("build", False, detail=str(e), witness=_jsonable(e.witness))
        return report
    report.add("build", True, detail=f"{len(q.vertices)} vertices, dimension {q.dimension}")

    if n >= 5 and level == "all":
        rng = random.Random(seed)
        chambers = [s for block in q.partition.classes for s in block]
        picked = rng.sample(chambers, min(sample, len(chambers)))
        bad_chambers = vertex_consistency(q, picked)
    elif level == "all" or n <= 4:
        bad_chambers = vertex_consistency(q)
    else:
        bad_chambers = []
    report.add("vertex-consistency", not bad_chambers, witness=[str(s) for s in bad_chambers[:1]] or None)

    nf = verify_normal_fan(q)
    report.add(
        "normal-fan",
        nf.passed,
        witness=[str(nf.failures[0][0]), format_set(nf.failures[0][1]), nf.failures[0][2]] if nf.failures else None,
    )

    try:
        g = oriented_graph(q)
        report.add(
            "oriented-graph",
            g.isomorphic,
            detail=f"orientation sign {g.sign}",
            witness=None if g.isomorphic else {"sources": g.sources, "sinks": g.sinks},
        )
    except VerificationError as e:
        report.add("oriented-graph", False, detail=str(e), witness=_jsonable(e.witness))

    if q.dimension == 3:
        report.add("euler", euler_characteristic(q) == 2, detail=f"V-E+F = {euler_characteristic(q)}")

    if level == "all" and n <= MAX_CONGRUENCE_ORACLE_N:
        bad = congruence_oracle_witness(q.partition)
        report.add("lattice-congruence-oracle", bad is None, witness=bad and [str(s) for s in bad])
        bad_class = next((k for k in range(len(q.partition)) if not is_interval(q.partition, k)), None)
        report.add(
            "classes-are-intervals",
            bad_class is None,
            witness=None if bad_class is None else str(q.partition.representative(bad_class)),
        )
        bad_class = next(
            (
                k
                for k in range(len(q.partition))
                if not is_noncrossing(arc_diagram_of_class(c, q.partition, k))
            ),
            None,
        )
        report.add(
            "noncrossing-arc-diagrams",
            bad_class is None,
            witness=None if bad_class is None else str(q.partition.representative(bad_class)),
        )
    return report


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(e) for e in x]
    if isinstance(x, frozenset):
        return format_set(x)
    if isinstance(x, (int, str)) or x is None:
        return x
    return str(x)
