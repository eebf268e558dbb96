"""
File formats: ideal, weight, height, partition and quotientope JSON, plus the
OFF and csv2d display exports.

JSON outputs are exact (rationals as ``"p/q"`` strings); OFF and csv2d render
decimals for external viewers only.
"""
from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .braid import Subset, ray_vector
from .congruence import ClassPartition, Congruence, NotAnIdealError
from .linalg import dot, format_rational, parse_rational, sub
from .permutations import Permutation
from .quotientope import (
    HeightFunction,
    Quotientope,
    WeightFunction,
    build_quotientope,
    default_weights,
)
from .shards import Shard, ShardIdeal, format_set, is_upper_ideal, missing_forcer, parse_set, upward_closure


class FormatError(ValueError):
    pass


def shard_to_dict(s: Shard) -> dict:
    return {"i": s.i, "j": s.j, "above": sorted(s.above)}


def shard_from_dict(d: dict) -> Shard:
    try:
        return Shard(int(d["i"]), int(d["j"]), frozenset(int(k) for k in d.get("above", [])))
    except KeyError as e:
        raise FormatError(f"shard record lacks {e}") from None


def ideal_to_dict(ideal: ShardIdeal) -> dict:
    return {"n": ideal.n, "shards": [shard_to_dict(s) for s in ideal]}


@dataclass
class LoadedIdeal:
    """An ideal read from JSON, closed under forcing.

    ``was_closed`` records whether the file already listed an upper ideal;
    otherwise ``witness`` holds a ``(member, missing forcer)`` pair.
    """

    ideal: ShardIdeal
    was_closed: bool
    witness: tuple[Shard, Shard] | None


def ideal_from_dict(d: dict) -> LoadedIdeal:
    n = int(d["n"])
    shards = [shard_from_dict(s) for s in d["shards"]]
    for s in shards:
        if s.j > n:
            raise FormatError(f"shard {s} does not live in R^{n}")
    witness = missing_forcer(shards, n)
    return LoadedIdeal(upward_closure(shards, n), witness is None, witness)


def load_ideal(path, require_closed: bool = False) -> LoadedIdeal:
    loaded = ideal_from_dict(_read_json(path))
    if require_closed and not loaded.was_closed:
        raise NotAnIdealError(*loaded.witness)
    return loaded


def save_ideal(ideal: ShardIdeal, path) -> None:
    _write_json(ideal_to_dict(ideal), path)


def weights_to_dict(f: WeightFunction) -> dict:
    return {
        "n": f.n,
        "weights": [
            {**shard_to_dict(s), "f": format_rational(v)} for s, v in sorted(f.values.items())
        ],
    }


def weights_from_dict(d: dict) -> WeightFunction:
    n = int(d["n"])
    values = {shard_from_dict(r): parse_rational(str(r["f"])) for r in d["weights"]}
    return WeightFunction.certify(n, values, source="file")


def load_weights(path) -> WeightFunction:
    return weights_from_dict(_read_json(path))


def heights_to_dict(h: HeightFunction) -> dict:
    items = sorted(h.values.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    return {"n": h.n, "heights": {format_set(R): format_rational(v) for R, v in items}}


def heights_from_dict(d: dict) -> HeightFunction:
    n = int(d["n"])
    values = {parse_set(k): parse_rational(str(v)) for k, v in d["heights"].items()}
    expected = 2 ** n - 2
    if len(values) != expected:
        raise FormatError(f"expected {expected} heights, found {len(values)}")
    return HeightFunction(n, values)


def load_heights(path) -> HeightFunction:
    return heights_from_dict(_read_json(path))


def partition_to_dict(p: ClassPartition) -> dict:
    return {"n": p.n, "classes": [[str(s) for s in block] for block in p.classes]}


def partition_from_dict(d: dict) -> ClassPartition:
    n = int(d["n"])
    return ClassPartition.from_blocks(n, [[Permutation.parse(t) for t in b] for b in d["classes"]])


def quotientope_to_dict(q: Quotientope) -> dict:
    p = q.partition
    reprs = [str(p.representative(k)) for k in range(len(p))]
    return {
        "n": q.n,
        "dimension": q.dimension,
        "vertices": {reprs[k]: [format_rational(x) for x in v] for k, v in enumerate(q.vertices)},
        "facets": [format_set(R) for R in q.facet_normals],
        "edges": [[reprs[x], reprs[y]] for x, y in q.edges],
        "orientation_sign": q.orientation_sign,
        "weights": q.weights.source if q.weights.source in ("default", "file") else "file",
        "essential": q.congruence.is_essential,
        "ideal": [shard_to_dict(s) for s in q.congruence.ideal],
        "classes": partition_to_dict(p)["classes"],
        "heights": heights_to_dict(q.heights)["heights"],
    }


def quotientope_from_dict(d: dict, weights: WeightFunction | None = None) -> Quotientope:
    """Rebuild a quotientope from JSON and check it against the stored data.

    The ideal and heights are read back, the polytope is reconstructed, and
    every stored vertex, facet and edge must agree exactly.
    """
    n = int(d["n"])
    ideal = ShardIdeal(n, frozenset(shard_from_dict(s) for s in d["ideal"]))
    if not is_upper_ideal(ideal.members, n):
        raise NotAnIdealError(*missing_forcer(ideal.members, n))
    h = heights_from_dict({"n": n, "heights": d["heights"]})
    f = weights if weights is not None else default_weights(n)
    q = build_quotientope(Congruence(ideal), f, h=h)
    stored = quotientope_to_dict(q)
    for key in ("dimension", "vertices", "facets", "edges", "orientation_sign"):
        if stored[key] != d[key]:
            raise FormatError(f"stored {key!r} disagrees with the rebuilt polytope")
    return q


def save_quotientope(q: Quotientope, path) -> None:
    _write_json(quotientope_to_dict(q), path)


def load_quotientope(path, weights: WeightFunction | None = None) -> Quotientope:
    return quotientope_from_dict(_read_json(path), weights)


def _read_json(path) -> Any:
    with open(path) as fh:
        return json.load(fh)


def _write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


# Display exports.


def _helmert_basis(n: int) -> list[list[float]]:
    # Orthonormal basis of sum(x) = 0: (1,-1,0,..)/sqrt2, (1,1,-2,0,..)/sqrt6, ...
    basis = []
    for k in range(1, n):
        row = [1.0] * k + [-float(k)] + [0.0] * (n - k - 1)
        norm = math.sqrt(k * (k + 1))
        basis.append([x / norm for x in row])
    return basis


def project(v, n: int) -> list[float]:
    """Coordinates of a sum-zero point in the orthonormal basis of that hyperplane."""
    return [sum(b * float(x) for b, x in zip(row, v)) for row in _helmert_basis(n)]


def _decimal(x: float) -> str:
    text = f"{x:.12g}"
    return "0" if text in ("-0", "0") else text


def csv2d(q: Quotientope) -> str:
    """Planar picture of an n = 3 quotientope: one ``class,x,y`` line per vertex."""
    if q.n != 3:
        raise ValueError("csv2d export needs n = 3")
    lines = ["class,x,y"]
    for k, v in enumerate(q.vertices):
        x, y = project(v, 3)
        lines.append(f"{q.partition.representative(k)},{_decimal(x)},{_decimal(y)}")
    return "\n".join(lines) + "\n"


def _half(x: Fraction, y: Fraction) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi).
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def facet_cycle(q: Quotientope, R: Subset) -> list[int]:
    """Vertices of a facet of a 3-dimensional quotientope in cyclic order.

    The order is an exact angular sort around the facet centroid, oriented
    counterclockwise when seen from outside (along the outer normal r(R)).
    """
    idx = q.facet_vertices(R)
    pts = [q.vertices[k] for k in idx]
    m = len(pts)
    centroid = tuple(sum(c) / m for c in zip(*pts))
    d = [sub(p, centroid) for p in pts]
    e1 = d[0]
    e1e1 = dot(e1, e1)
    w = next(x for x in d if _nonparallel(x, e1))
    e2 = tuple(a - dot(w, e1) / e1e1 * b for a, b in zip(w, e1))
    coords = [(dot(x, e1), dot(x, e2)) for x in d]

    def cmp(a, b):
        ha, hb = _half(*coords[a]), _half(*coords[b])
        if ha != hb:
            return ha - hb
        cross = coords[a][0] * coords[b][1] - coords[a][1] * coords[b][0]
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    order = sorted(range(m), key=functools.cmp_to_key(cmp))
    # The cycle runs from e1 towards e2; keep it if (e1, e2, r(R), 1) is positively oriented.
    normal = ray_vector(R, q.n)
    if _det4([e1, e2, normal, (1,) * q.n]) < 0:
        order = order[:1] + order[1:][::-1]
    return [idx[k] for k in order]


def _nonparallel(x, y) -> bool:
    return any(x[a] * y[b] != x[b] * y[a] for a in range(len(x)) for b in range(a + 1, len(x)))


def _det4(rows) -> Fraction:
    work = [[Fraction(a) for a in r] for r in rows]
    det = Fraction(1)
    size = len(work)
    for c in range(size):
        p = next((k for k in range(c, size) if work[k][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            work[c], work[p] = work[p], work[c]
            det = -det
        det *= work[c][c]
        for k in range(c + 1, size):
            factor = work[k][c] / work[c][c]
            work[k] = [a - factor * b for a, b in zip(work[k], work[c])]
    return det


def export_off(q: Quotientope) -> str:
    """OFF text of a 3-dimensional quotientope, vertices rendered to 12 significant digits."""
    if q.dimension != 3 or q.n != 4:
        raise ValueError(f"OFF export needs a 3-dimensional quotientope with n = 4, got dimension {q.dimension}")
    lines = ["OFF", f"{len(q.vertices)} {len(q.facet_normals)} {len(q.edges)}"]
    for v in q.vertices:
        lines.append(" ".join(_decimal(x) for x in project(v, q.n)))
    for R in q.facet_normals:
        cycle = facet_cycle(q, R)
        lines.append(" ".join(map(str, [len(cycle)] + cycle)))
    return "\n".join(lines) + "\n"


def parse_off(text: str) -> tuple[list[list[float]], list[list[int]], int]:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if lines[0] != ["OFF"]:
        raise FormatError("missing OFF header")
    nv, nf, ne = map(int, lines[1])
    verts = [list(map(float, ln)) for ln in lines[2 : 2 + nv]]
    faces = [list(map(int, ln[1:])) for ln in lines[2 + nv : 2 + nv + nf]]
    for ln, face in zip(lines[2 + nv :], faces):
        if int(ln[0]) != len(face):
            raise FormatError("face length mismatch")
    return verts, faces, ne


def check_off_faces(q: Quotientope, faces: list[list[int]]) -> list[str]:
    """Problems with OFF face cycles: wrong vertex sets, non-edges, edges not on two faces."""
    problems = []
    edge_set = {frozenset(e) for e in q.edges}
    counts: dict[frozenset, int] = {}
    for R, face in zip(q.facet_normals, faces):
        if sorted(face) != q.facet_vertices(R):
            problems.append(f"face of {format_set(R)} visits the wrong vertices")
        for a, b in zip(face, face[1:] + face[:1]):
            e = frozenset((a, b))
            if e not in edge_set:
                problems.append(f"face of {format_set(R)} uses non-edge {sorted(e)}")
            counts[e] = counts.get(e, 0) + 1
    for e in edge_set:
        if counts.get(e, 0) != 2:
            problems.append(f"edge {sorted(e)} lies on {counts.get(e, 0)} faces")
    return problems
