"""Command-line front end.

Subcommands: ``scan``, ``factor``, ``degeneracy``, ``ghost``, ``scaling``.
Exit codes: 0 success (also when no factor is found), 2 usage or
configuration error, 3 internal computation error.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
import time
from pathlib import Path
from typing import Optional

from gaussfactor import __version__, config, export
from gaussfactor.errors import InvalidArgumentError, RangeError
from gaussfactor.kernel import TruncationPolicy, default_random_m_max
from gaussfactor.rational import ReducedFraction, check_n, grid, grid_by_index
from gaussfactor.strategies import (
    degeneracy_profile,
    detect_periods,
    ghost_analysis,
    integer_scan,
    period_generators,
    rational_search,
    scaling_experiment,
    search_grid,
    spectrum,
)

log = logging.getLogger("gaussfactor")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3

_RULE_ALIASES = {
    "quartic": ("fourth-root", 2),
    "fourth-root": ("fourth-root", 2),
    "cubic": ("power-rule", 3),
    "power": ("power-rule", None),
    "power-rule": ("power-rule", None),
    "random": ("log-random", 2),
    "log-random": ("log-random", 2),
}


class UsageError(Exception):
    pass


# -- argument helpers ----------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _range_pair(text: str) -> tuple[str, str]:
    lo, sep, hi = text.partition(":")
    if not sep or not lo or not hi:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    return lo, hi


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _policy(args, default: TruncationPolicy) -> TruncationPolicy:
    if getattr(args, "m", None) is not None:
        return TruncationPolicy.explicit(args.m)
    rule = getattr(args, "rule", None)
    if rule is None:
        return default
    variant, j = _RULE_ALIASES[rule]
    j = args.j if j is None else j
    return TruncationPolicy(variant, c=args.c, j=j)


def _add_policy_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=_positive_int, help="explicit number of terms M")
    p.add_argument("--rule", choices=sorted(_RULE_ALIASES), help="derive M from N by a growth rule")
    p.add_argument("--c", type=float, help="constant of the growth rule")
    p.add_argument("--j", type=int, default=3, help="power for power-rule sums (default 3)")


def _add_output_flags(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("-o", "--output", help="output file (default: standard output)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes; 0 uses every CPU")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussfactor", description="Factor integers with truncated Gauss sums."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="evaluate a spectrum over a grid of arguments")
    p.add_argument("n", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--integer", action="store_true", help="integer trial factors --min..--max")
    mode.add_argument("--continuous", action="store_true", help="weighted continuous sum")
    p.add_argument("--s0", type=_positive_int, help="grid step denominator")
    p.add_argument("--xi", type=_range_pair, help="argument range LO:HI, LO exclusive")
    p.add_argument("--min", type=_positive_int, default=2, dest="l_min")
    p.add_argument("--max", type=_positive_int, dest="l_max")
    p.add_argument("--variant", choices=("truncated", "exponential", "random"), default="truncated")
    p.add_argument("--dm", type=float, default=10.0, help="Gaussian weight width")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-max", type=_positive_int, dest="m_max", help="random index range")
    _add_policy_flags(p)
    _add_output_flags(p, "csv")

    p = sub.add_parser("factor", help="search for factors of N")
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=("integer", "rational"), default="rational")
    p.add_argument("--s0", type=_positive_int, default=10)
    _add_policy_flags(p)
    _add_output_flags(p, "json")

    p = sub.add_parser("degeneracy", help="degeneracy-of-ratios profile and its periods")
    p.add_argument("n", type=int)
    p.add_argument("--smax", type=_positive_int, dest="s_max")
    _add_output_flags(p, "json")

    p = sub.add_parser("ghost", help="ghost factors against the number of terms")
    p.add_argument("n", type=int)
    p.add_argument("--m", type=_range_pair, default=("1", "8"), dest="m_range")
    _add_output_flags(p, "csv")

    p = sub.add_parser("scaling", help="minimal sufficient M across a list of semiprimes")
    p.add_argument("--rule", choices=sorted(_RULE_ALIASES), default="quartic")
    p.add_argument("--ns", type=_int_list, required=True)
    p.add_argument("--c", type=float)
    p.add_argument("--j", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p, "csv")
    return parser


# -- output --------------------------------------------------------------------


def resolve_output(path: Optional[str]) -> Optional[Path]:
    """Output path, relative paths anchored at the environment's default directory."""
    if path is None:
        return None
    out = Path(path)
    base = os.environ.get(config.OUTPUT_DIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    parent = out.parent if str(out.parent) else Path(".")
    if not parent.is_dir() or not os.access(parent, os.W_OK):
        raise UsageError(f"cannot write to {out}")
    if out.exists() and (out.is_dir() or not os.access(out, os.W_OK)):
        raise UsageError(f"cannot write to {out}")
    return out


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write to {out}: {exc}") from exc


# -- commands ------------------------------------------------------------------


def cmd_scan(args, out: Optional[Path]) -> int:
    n = check_n(args.n)
    m = _policy(args, TruncationPolicy.explicit(8)).resolve(n)
    header = {"n": n, "m": m}
    if args.integer:
        if args.l_max is None:
            args.l_max = math.isqrt(n)
        points = grid_by_index(1, args.l_min, args.l_max)
        variant = args.variant
        header.update(s0=1, variant=variant)
        if variant == "exponential":
            header["j"] = args.j
        if variant == "random":
            m_max = args.m_max or default_random_m_max(n)
            header.update(seed=args.seed, m_max=m_max)
    elif args.continuous:
        s0 = args.s0 or 100
        lo, hi = args.xi or ("1", "16")
        points = grid(s0, ReducedFraction.parse(lo), ReducedFraction.parse(hi))
        variant = "continuous"
        header = {"n": n, "m": None, "s0": s0, "variant": variant, "dm": args.dm}
    else:
        if args.variant != "truncated":
            raise UsageError("--variant exponential/random needs --integer")
        s0 = args.s0 or 10
        if args.xi:
            lo, hi = args.xi
            points = grid(s0, ReducedFraction.parse(lo), ReducedFraction.parse(hi))
        else:
            points = search_grid(n, s0)
        variant = "truncated"
        header.update(s0=s0, variant=variant)
    samples = spectrum(
        n,
        points,
        variant,
        m=m,
        j=args.j,
        seed=args.seed,
        m_max=args.m_max,
        width=args.dm,
        jobs=args.jobs,
    )
    _emit(export.format_spectrum(samples, export.make_header(**header), args.format), out)
    return EXIT_OK


def cmd_factor(args, out: Optional[Path]) -> int:
    n = check_n(args.n)
    started = time.perf_counter()
    if args.method == "integer":
        policy = _policy(args, TruncationPolicy.fourth_root())
        report = integer_scan(n, policy, jobs=args.jobs)
        header = export.make_header(n=n, method=report.method, m=report.m_used)
    else:
        policy = _policy(args, TruncationPolicy.fourth_root())
        report = rational_search(n, args.s0, policy, jobs=args.jobs)
        header = export.make_header(n=n, method=report.method, m=report.m_used, s0=args.s0)
    elapsed = time.perf_counter() - started
    body = export.report_dict(report, wall_time=elapsed)
    if args.format == "json":
        _emit(export.format_json(header, report=body), out)
    else:
        row = {
            "n": n,
            "method": report.method,
            "factors": " ".join(map(str, report.factors)),
            "samples_evaluated": report.samples_evaluated,
            "m_used": report.m_used,
            "ghost_candidates": report.ghost_candidates,
        }
        _emit(export.format_csv([row], list(row)), out)
    return EXIT_OK


def cmd_degeneracy(args, out: Optional[Path]) -> int:
    n = check_n(args.n, cap=config.MAX_DIVISOR_N)
    s_max = args.s_max or n
    profile = degeneracy_profile(n, s_max)
    generators = period_generators(profile)
    factors = detect_periods(profile)
    rows = [
        {"value_num": v.numerator, "value_den": v.denominator, "D": d} for v, d in profile.rows()
    ]
    if args.format == "json":
        header = export.make_header(n=n, s_max=s_max, families=list(profile.families))
        report = {"generators": generators, "factors": factors}
        _emit(export.format_json(header, rows=rows, report=report), out)
    else:
        _emit(export.format_csv(rows, export.DEGENERACY_COLUMNS), out)
        print(f"factors: {' '.join(map(str, factors))}", file=sys.stderr)
    return EXIT_OK


def cmd_ghost(args, out: Optional[Path]) -> int:
    n = check_n(args.n)
    try:
        m_lo, m_hi = int(args.m_range[0]), int(args.m_range[1])
    except ValueError:
        raise UsageError(f"--m expects integers LO:HI, got {':'.join(args.m_range)}")
    table = ghost_analysis(n, m_lo, m_hi, jobs=args.jobs)
    rows = [
        {"M": r.m, "max_nonfactor_mag": r.max_nonfactor_mag, "ghost_count": r.ghost_count}
        for r in table
    ]
    if args.format == "json":
        header = export.make_header(n=n, m_lo=m_lo, m_hi=m_hi)
        _emit(export.format_json(header, rows=rows), out)
    else:
        _emit(export.format_csv(rows, export.GHOST_COLUMNS), out)
    return EXIT_OK


def cmd_scaling(args, out: Optional[Path]) -> int:
    variant, j = _RULE_ALIASES[args.rule]
    rule = TruncationPolicy(variant, c=args.c, j=args.j if j is None else j)
    table = scaling_experiment(rule, args.ns, seed=args.seed, jobs=args.jobs)
    rows = [
        {"N": r.n, "M_min": r.m_min, "ratio": None if math.isnan(r.ratio) else r.ratio}
        for r in table
    ]
    if args.format == "json":
        header = export.make_header(rule=rule.variant, j=rule.j, c=rule.c, seed=args.seed)
        _emit(export.format_json(header, rows=rows), out)
    else:
        _emit(export.format_csv(rows, export.SCALING_COLUMNS), out)
    return EXIT_OK


COMMANDS = {
    "scan": cmd_scan,
    "factor": cmd_factor,
    "degeneracy": cmd_degeneracy,
    "ghost": cmd_ghost,
    "scaling": cmd_scaling,
}


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "jobs", 1) < 0:
            raise UsageError("--jobs must be non-negative")
        out = resolve_output(args.output)
        return COMMANDS[args.command](args, out)
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK
    except (UsageError, InvalidArgumentError, RangeError) as exc:
        print(f"gaussfactor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - mapped to the internal-error exit code
        log.exception("internal error: %s", exc)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
