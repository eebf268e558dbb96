"""
Command line interface.

    quotientopes build --n 4 --preset sylvester --format off --out asso.json
    quotientopes enumerate --n 4 --essential --out ideals.json
    quotientopes verify --n 4 --ideal my_ideal.json --out report.json

Exit codes: 0 success, 2 validation failure, 3 verification failure,
4 scale guard.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import io
from .congruence import PRESETS, Congruence, NotAnIdealError, preset
from .permutations import ScaleGuardError
from .quotientope import DominanceError, VerificationError, build_quotientope, default_weights
from .shards import enumerate_upper_ideals, parse_shard_list, sample_upper_ideals, upward_closure
from .verification import verify_congruence

log = logging.getLogger("quotientopes")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3
EXIT_SCALE = 4

MAX_BUILD_N = 7


class CliError(Exception):
    def __init__(self, code: int, stage: str, message: str, witness=None):
        super().__init__(message)
        self.code = code
        self.stage = stage
        self.witness = witness


def _add_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS))
    src.add_argument("--ideal", type=Path, help="ideal JSON file")
    src.add_argument("--generators", help='shard arcs such as "1-3:[2] 2-4:[]"; closed under forcing')
    p.add_argument("--weights", default="default", help="'default' or a weights JSON file")
    p.add_argument("--verify", choices=("all", "fast", "off"), default="fast")
    p.add_argument("--seed", type=int, default=None, help="seed for sampled checks at n >= 5")
    p.add_argument("--out", type=Path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quotientopes", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build a quotientope and write it to files")
    _add_source_args(b)
    b.add_argument("--format", choices=("auto", "json", "off", "csv2d"), default="auto")

    e = sub.add_parser("enumerate", parents=[common], help="list upper ideals with per-congruence statistics")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--essential", action="store_true")
    e.add_argument("--sample", type=int, default=None, help="random ideals to draw (needed for n = 5)")
    e.add_argument("--seed", type=int, default=None)
    e.add_argument("--out", type=Path)

    v = sub.add_parser("verify", parents=[common], help="run the certificate suite and write a report")
    _add_source_args(v)
    v.add_argument("--heights", type=Path, help="heights JSON replacing the computed heights")
    return parser


def _congruence(args, require_closed: bool) -> tuple[Congruence, dict]:
    n = args.n
    if not 2 <= n <= MAX_BUILD_N:
        raise CliError(EXIT_SCALE, "load", f"n must lie in [2, {MAX_BUILD_N}]")
    meta: dict = {}
    try:
        if args.preset:
            meta["source"] = f"preset:{args.preset}"
            return preset(args.preset, n), meta
        if args.generators:
            gens = parse_shard_list(args.generators)
            meta["source"] = "generators"
            return Congruence(upward_closure(gens, n)), meta
        loaded = io.load_ideal(args.ideal)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        raise CliError(EXIT_VALIDATION, "load", str(e)) from None
    if loaded.ideal.n != n:
        raise CliError(EXIT_VALIDATION, "load", f"ideal file is for n = {loaded.ideal.n}, not {n}")
    if not loaded.was_closed:
        member, forcer = loaded.witness
        if require_closed:
            raise CliError(
                EXIT_VALIDATION,
                "load",
                f"not an upper ideal: {forcer} forces {member} but is missing",
                witness={"member": str(member), "missing_forcer": str(forcer)},
            )
        log.warning("ideal file is not closed under forcing; using its closure")
    meta["source"] = str(args.ideal)
    meta["closed_on_load"] = not loaded.was_closed
    return Congruence(loaded.ideal), meta


def _weights(args, n: int):
    if args.weights == "default":
        return default_weights(n)
    try:
        f = io.load_weights(args.weights)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        raise CliError(EXIT_VALIDATION, "weights", str(e)) from None
    if f.n != n:
        raise CliError(EXIT_VALIDATION, "weights", f"weights file is for n = {f.n}, not {n}")
    return f


def _emit(obj, path: Path | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def cmd_build(args) -> int:
    c, meta = _congruence(args, require_closed=False)
    f = _weights(args, c.n)
    fmt = args.format
    if fmt == "off" and (c.n != 4 or not c.is_essential):
        raise CliError(EXIT_VALIDATION, "export", "OFF export needs an essential congruence with n = 4")
    if fmt == "csv2d" and c.n != 3:
        raise CliError(EXIT_VALIDATION, "export", "csv2d export needs n = 3")
    try:
        q = build_quotientope(c, f)
    except DominanceError as e:
        raise CliError(EXIT_VALIDATION, "weights", str(e)) from None
    except VerificationError as e:
        raise CliError(EXIT_VERIFICATION, "build", str(e), witness=str(e.witness)) from None

    out = args.out or Path(f"quotientope_n{c.n}.json")
    data = io.quotientope_to_dict(q)
    data.update(meta)
    _emit(data, out)
    written = [out]
    if fmt == "off" or (fmt == "auto" and c.n == 4 and q.dimension == 3):
        path = out.with_suffix(".off")
        path.write_text(io.export_off(q))
        written.append(path)
    if fmt == "csv2d" or (fmt == "auto" and c.n == 3):
        path = out.with_suffix(".csv")
        path.write_text(io.csv2d(q))
        written.append(path)

    print(
        f"{len(q.vertices)} vertices, {len(q.edges)} edges, {len(q.facet_normals)} facets, "
        f"dimension {q.dimension}; wrote " + ", ".join(map(str, written))
    )
    report = verify_congruence(c, f, level=args.verify, seed=args.seed)
    for r in report.results:
        log.info("%s %s %s", "PASS" if r.passed else "FAIL", r.check, r.detail)
    if not report.passed:
        failed = [r.check for r in report.results if not r.passed]
        raise CliError(EXIT_VERIFICATION, "verify", "failed checks: " + ", ".join(failed))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    n = args.n
    try:
        if args.sample is not None:
            if n > 5:
                raise ScaleGuardError("sampling is limited to n <= 5")
            ideals = sample_upper_ideals(n, args.sample, seed=args.seed, essential_only=args.essential)
        else:
            ideals = list(enumerate_upper_ideals(n, essential_only=args.essential))
    except ScaleGuardError as e:
        raise CliError(EXIT_SCALE, "enumerate", str(e)) from None
    entries = []
    for k, ideal in enumerate(ideals):
        q = build_quotientope(Congruence(ideal))
        entries.append(
            {
                "index": k,
                **io.ideal_to_dict(ideal),
                "essential": ideal.is_essential,
                "classes": len(q.partition),
                "vertices": len(q.vertices),
                "edges": len(q.edges),
                "facets": len(q.facet_normals),
                "dimension": q.dimension,
            }
        )
    _emit(entries, args.out)
    if args.out is not None:
        print(f"{len(entries)} congruences written to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    c, meta = _congruence(args, require_closed=True)
    f = _weights(args, c.n)
    h = None
    if args.heights:
        try:
            with open(args.heights) as fh:
                data = json.load(fh)
            h = io.heights_from_dict({"n": data["n"], "heights": data["heights"]})
        except (ValueError, KeyError, OSError) as e:
            raise CliError(EXIT_VALIDATION, "heights", str(e)) from None
        if h.n != c.n:
            raise CliError(EXIT_VALIDATION, "heights", f"heights file is for n = {h.n}")
    report = verify_congruence(c, f, h=h, level=args.verify, seed=args.seed)
    result = report.to_dict()
    result.update(meta)
    _emit(result, args.out)
    for r in report.results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.check}" + (f" ({r.detail})" if r.detail else ""), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    handler = {"build": cmd_build, "enumerate": cmd_enumerate, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except CliError as e:
        err = {"error": str(e), "stage": e.stage, "exit_code": e.code}
        if e.witness is not None:
            err["witness"] = e.witness
        sys.stderr.write(json.dumps(err) + "\n")
        return e.code
    except NotAnIdealError as e:
        sys.stderr.write(json.dumps({"error": str(e), "stage": "load", "exit_code": EXIT_VALIDATION}) + "\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
