"""Command-line front end.

Exit status: 0 on success (and when every exact comparison matches), 1 when a
verification finds a mismatch, 2 on usage errors such as a non-coprime pair.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .ansatzfit import (
    AnsatzViolation,
    FitMode,
    FitSpec,
    InsufficientData,
    MomentCache,
    collect_moment_data,
    fit_polynomial,
    fit_report,
    pair_schedule,
)
from .cache import PolynomialCache
from .exactmath import RadicalNumber, format_rational
from .limitdist import compare_limits, z_moments
from .moments import MomentSet, moment_set, raw_moments, verify_theorem
from .partitions import CorePair, NotCoprimeError, enumerate_st_cores
from .pathdp import (
    DEFAULT_CANDIDATES,
    CalibrationError,
    coprime_pairs,
    size_generating_polynomial,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("simcore")


class UsageError(Exception):
    pass


# -- helpers ----------------------------------------------------------------------


def _pair(args) -> CorePair:
    return CorePair(args.s, args.t)


def _num(value, args) -> str:
    if isinstance(value, RadicalNumber):
        text = str(value)
    else:
        text = format_rational(Fraction(value))
    if getattr(args, "float", False):
        text += f"  (~{float(value):.10g}, display only)"
    return text


def _map(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _cache(args):
    return PolynomialCache(args.cache) if args.cache else None


def _moments_for(pair: CorePair, R: int, engine: str, cache) -> MomentSet:
    if cache is not None and engine in ("dp", "brute"):
        poly = cache.genpoly(pair, engine)
        return MomentSet.from_raw(int(poly.value_at_one()), raw_moments(poly, R))
    return moment_set(pair, R, engine)


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _read_pairs(path: str) -> list[CorePair]:
    text = Path(path).read_text().strip()
    if text.startswith("["):
        raw = json.loads(text)
    else:
        raw = [line.replace(",", " ").split() for line in text.splitlines() if line.strip()]
    return sorted((CorePair(int(s), int(t)) for s, t in raw), key=lambda p: (p.s + p.t, p.s))


# -- subcommands --------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    cores = enumerate_st_cores(_pair(args))
    if args.format == "json":
        _emit_json([list(p.parts) for p in cores])
    else:
        for p in cores:
            print(p)
    return EXIT_OK


def cmd_genpoly(args) -> int:
    pair = _pair(args)
    cache = _cache(args)
    poly = cache.genpoly(pair, args.engine) if cache else size_generating_polynomial(pair, args.engine)
    if args.format == "json":
        _emit_json({"s": pair.s, "t": pair.t, "poly": poly.to_json()})
    else:
        print(poly)
    return EXIT_OK


def _csv_rows(pair: CorePair, ms: MomentSet, R: int):
    for r in range(1, R + 1):
        v = ms.raw[1] if r == 1 else ms.central[r]
        yield [pair.s, pair.t, r, v.numerator, v.denominator]


def cmd_moments(args) -> int:
    pair = _pair(args)
    R = args.max
    if R < 1:
        raise UsageError("--max must be at least 1")
    ms = _moments_for(pair, R, args.engine, _cache(args))
    if args.csv or args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["s", "t", "r", "value_num", "value_den"])
        w.writerows(_csv_rows(pair, ms, R))
    elif args.format == "json":
        _emit_json({
            "s": pair.s,
            "t": pair.t,
            "count": ms.total_count,
            "raw": [[v.numerator, v.denominator] for v in ms.raw],
            "central": [[v.numerator, v.denominator] for v in ms.central],
            "standardized": {str(k): v.to_json() for k, v in ms.standardized.items()},
        })
    else:
        print(f"count = {ms.total_count}")
        print(f"mean = {_num(ms.mean, args)}")
        for r in range(2, R + 1):
            print(f"m{r} = {_num(ms.central[r], args)}")
        for r, a in ms.standardized.items():
            print(f"alpha{r} = {_num(a, args)}")
    return EXIT_OK


def _verify_pairs(args) -> list[CorePair]:
    if args.pairs:
        return _read_pairs(args.pairs)
    if args.range is None:
        raise UsageError("verify needs --pairs FILE or --range MAX")
    if args.theorem >= 7:
        return [CorePair(s, s + 1) for s in range(1, args.range)]
    return coprime_pairs(args.range)


def cmd_verify(args) -> int:
    if not 1 <= args.theorem <= 9:
        raise UsageError("--theorem must be in 1..9")
    pairs = _verify_pairs(args)
    if args.theorem >= 7 and any(p.t != p.s + 1 for p in pairs):
        raise UsageError(f"theorem {args.theorem} only covers pairs (s, s+1)")
    cache = _cache(args)
    R = max(args.theorem, 2)
    sets = _map(lambda p: _moments_for(p, R, args.engine, cache), pairs, args.jobs)
    report = verify_theorem(args.theorem, pairs, args.engine, dict(zip(pairs, sets)))
    if args.format == "json":
        _emit_json([
            {"s": c.pair.s, "t": c.pair.t, "computed": str(c.computed),
             "expected": str(c.expected), "match": c.match}
            for c in report.checks
        ])
    else:
        for line in report.lines():
            print(line)
    return EXIT_OK if report.all_match else EXIT_MISMATCH


def cmd_fit(args) -> int:
    mode = FitMode(args.mode)
    spec = FitSpec(args.moment, args.degree, args.symmetry and mode is FitMode.BIVARIATE, mode)
    if args.max_st:
        if mode is FitMode.UNIVARIATE_T_EQ_S_PLUS_1:
            pairs = [CorePair(s, s + 1) for s in range(1, args.max_st)]
        else:
            pairs = coprime_pairs(args.max_st)
    else:
        pairs = pair_schedule(spec.required_points(), mode)
    mcache = MomentCache(PolynomialCache(args.cache).moments_path()) if args.cache else None
    if args.jobs > 1:
        chunks = _map(lambda p: collect_moment_data(args.moment, [p], args.engine, mode), pairs, args.jobs)
        data = [row for chunk in chunks for row in chunk]
    else:
        data = collect_moment_data(args.moment, pairs, args.engine, mode, mcache)
    try:
        result = fit_polynomial(spec, data)
    except (AnsatzViolation, InsufficientData) as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    report = fit_report(result, args.reference)
    if args.format == "json":
        payload = report.to_json()
        payload["data_points_used"] = result.data_points_used
        payload["residual_check"] = result.residual_check
        payload["json"] = result.polynomial.to_json()
        _emit_json(payload)
    else:
        print(f"data points: {result.data_points_used} (basis {len(spec.basis())})")
        for line in report.lines():
            print(line)
    ok = result.residual_check and report.matches_reference is not False
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_limit(args) -> int:
    if args.max < 3:
        raise UsageError("--max must be at least 3")
    zm = z_moments(args.max)
    if args.format == "json":
        _emit_json({
            "mgf": [[c.numerator, c.denominator] for c in zm.mgf_coeffs.coeffs],
            "straight": [[v.numerator, v.denominator] for v in zm.straight],
            "central": [[v.numerator, v.denominator] for v in zm.central],
            "standardized": {str(k): v.to_json() for k, v in zm.standardized.items()},
        })
        return EXIT_OK
    for k, v in enumerate(zm.straight):
        print(f"E[Z^{k}] = {_num(v, args)}")
    for k, v in enumerate(zm.central):
        if k >= 2:
            print(f"m{k} = {_num(v, args)}")
    for k, v in zm.standardized.items():
        print(f"alpha{k} = {_num(v, args)}")
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.max < 3:
        raise UsageError("--max must be at least 3")
    cmp = compare_limits(args.max)
    if args.format == "json":
        _emit_json([
            {"r": row.r, "combinatorial": row.combinatorial.to_json() if row.combinatorial else None,
             "limiting": row.limiting.to_json(), "equal": row.equal}
            for row in cmp.rows
        ])
    else:
        for row in cmp.rows:
            print(row.line())
    return EXIT_OK if cmp.all_equal else EXIT_MISMATCH


def cmd_calibrate(args) -> int:
    from .pathdp import calibrate_conventions

    try:
        result = calibrate_conventions(args.candidates or DEFAULT_CANDIDATES, args.max_t)
    except CalibrationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MISMATCH
    if args.output:
        result.write(args.output)
    _emit_json(result.to_json())
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", metavar="DIR", help="persist polynomials and moment data here")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for independent pairs")
    common.add_argument("--float", action="store_true", help="also show decimal approximations")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="simcore", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_args(p):
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list all (s,t)-core partitions")
    pair_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("genpoly", parents=[common], help="size generating polynomial")
    pair_args(p)
    p.add_argument("--engine", choices=("dp", "dp-faithful", "brute"), default="dp")
    p.set_defaults(func=cmd_genpoly)

    p = sub.add_parser("moments", parents=[common], help="exact moments of the size")
    pair_args(p)
    p.add_argument("--max", type=int, default=6)
    p.add_argument("--engine", choices=("dp", "brute", "jet"), default="dp")
    p.add_argument("--csv", action="store_true", help="CSV rows s,t,r,value_num,value_den")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("verify", parents=[common], help="check a closed form on many pairs")
    p.add_argument("--theorem", type=int, required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--pairs", metavar="FILE", help="JSON [[s,t],...] or one 's t' per line")
    grp.add_argument("--range", type=int, metavar="MAX", help="all coprime s < t <= MAX")
    p.add_argument("--engine", choices=("dp", "brute", "jet"), default="dp")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fit", parents=[common], help="rediscover a moment polynomial")
    p.add_argument("--moment", type=int, required=True)
    p.add_argument("--mode", choices=("biv", "succ"), default="biv")
    p.add_argument("--degree", type=int)
    p.add_argument("--max-st", type=int, help="use every coprime pair up to this bound")
    p.add_argument("--reference", type=int, help="compare with closed form K")
    p.add_argument("--no-symmetry", dest="symmetry", action="store_false")
    p.add_argument("--engine", choices=("dp", "brute", "jet"), default="dp")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("limit", parents=[common], help="moments of the limiting distribution")
    p.add_argument("--max", type=int, default=9)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("compare", parents=[common], help="combinatorial vs limiting standardized moments")
    p.add_argument("--max", type=int, default=9)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("calibrate", parents=[common], help="resolve the DP label conventions")
    p.add_argument("--max-t", type=int, default=8)
    p.add_argument("--candidates", nargs="+", metavar="EXPR")
    p.add_argument("--output", metavar="FILE", help="write the calibration report here")
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except NotCoprimeError as exc:
        print(f"simcore {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"simcore {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
