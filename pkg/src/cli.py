"""
Command-line interface for permanental ideal computations.
Subcommands: gens, signed-sets, min-primes, reduce, verify.
"""

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from src.binomial_algebra import format_polynomial, hyper_ring, parse_monomial
from src.config import IDEAL_KINDS, OUTPUT_FORMATS, VERIFY_LEVELS, RunConfig, Settings, settings
from src.errors import CapExceededError, PermanentalError, ParseError
from src.exports import (
    format_point_set,
    parse_point_set_text,
    render_discrepancies,
    render_family,
    render_point_sets,
    render_presentations,
)
from src.hyperlattice import Point, Shape, parse_point, varname
from src.ideal_generators import (
    FamilyKind,
    G_set,
    GeneratorFamily,
    checkJ_ideal,
    hatJ_ideal,
    hatJ_monomial_form,
    slice_ideal,
)
from src.prime_structure import minimal_primes, normal_form
from src.signed_sets import (
    PointSet,
    enumerate_t_signed,
    maximal_t_signed,
    maximality_discrepancies,
    set_maximal_t_signed,
)
from src.verification import run_verification


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_VERIFY = 4

PRIME_IDEALS = ("cj", "hatj", "checkj")

_INLINE_POINT_RE = re.compile(r"\([^()]*\)")


def _axis_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Malformed axis list: {text!r}") from None


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--shape", required=True, help='Radices, e.g. "2,2,3"')
    common.add_argument("--t", type=int, required=True, help="Slice parameter, 1 <= t <= n")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="Output format")
    common.add_argument("--cap-points", type=int, default=None, help="Largest |N| to enumerate")
    common.add_argument("--cap-degree", type=int, default=None, help="Oracle degree cap")
    common.add_argument("--workers", type=int, default=None, help="Processes for enumeration")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="permideal",
        description="2x2 permanental ideals of hypermatrices: generators, signed sets, primes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gens = sub.add_parser("gens", parents=[common], help="Print a generator family")
    gens.add_argument("--ideal", choices=IDEAL_KINDS, default="cj")
    gens.add_argument("--axes", type=_axis_list, default=None, help="L for gset, e.g. 1,2")
    gens.add_argument("--switch", type=_axis_list, default=None, help="K for gset, e.g. 1")

    signed = sub.add_parser("signed-sets", parents=[common], help="Enumerate t-signed sets")
    which = signed.add_mutually_exclusive_group()
    which.add_argument("--maximal", action="store_true", help="Only sets with minimal Q-ideals")
    which.add_argument("--set-maximal", action="store_true", help="Only inclusion-maximal sets")
    which.add_argument(
        "--discrepancies",
        action="store_true",
        help="Sets maximal under one notion (Q-ideal or inclusion) but not the other",
    )

    primes = sub.add_parser("min-primes", parents=[common], help="Minimal primes")
    primes.add_argument("--ideal", choices=PRIME_IDEALS, default="cj")

    reduce_ = sub.add_parser("reduce", parents=[common], help="Signed normal form modulo Q_S")
    reduce_.add_argument("--set", required=True, dest="point_set", help="@file or inline points")
    reduce_.add_argument("--monomial", required=True, help='e.g. "(1,1,1)(2,2,1)"')

    verify = sub.add_parser("verify", parents=[common], help="Run the invariant suites")
    verify.add_argument("--level", choices=VERIFY_LEVELS, default=None)
    verify.add_argument("--ideal", choices=PRIME_IDEALS, default="cj")
    return parser


def _configure_logging(level_name: Optional[str]) -> None:
    source = Settings(log_level=level_name) if level_name else settings
    logging.basicConfig(
        level=source.get_log_level(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _run_config(args: argparse.Namespace) -> RunConfig:
    shape = Shape.parse(args.shape, args.t)
    overrides = {
        "cap_points": args.cap_points,
        "cap_degree": args.cap_degree,
        "output_format": args.format,
        "workers": args.workers,
        "level": getattr(args, "level", None),
    }
    fields = {k: v for k, v in overrides.items() if v is not None}
    ideal = getattr(args, "ideal", None)
    if ideal is not None:
        fields["ideal"] = ideal
    return RunConfig(radices=list(shape.radices), t=shape.t, **fields)


def _family(config: RunConfig, args: argparse.Namespace) -> GeneratorFamily:
    shape = config.shape()
    if config.ideal == "ci":
        return slice_ideal(shape, FamilyKind.I_T)
    if config.ideal == "cj":
        return slice_ideal(shape, FamilyKind.J_T)
    if config.ideal == "hatj":
        return hatJ_monomial_form(shape)
    if config.ideal == "hatj-binomial":
        return hatJ_ideal(shape)
    if config.ideal == "checkj":
        return checkJ_ideal(shape)
    if args.axes is None or args.switch is None:
        raise ParseError("--ideal gset needs both --axes and --switch")
    return G_set(shape, args.axes, args.switch)


def cmd_gens(config: RunConfig, args: argparse.Namespace) -> int:
    family = _family(config, args)
    print(render_family(config.shape(), family.elements, config.output_format))
    return EXIT_OK


def cmd_signed_sets(config: RunConfig, args: argparse.Namespace) -> int:
    shape = config.shape()
    fmt = "text" if config.output_format == "m2" else config.output_format
    if args.discrepancies:
        ideal_only, set_only = maximality_discrepancies(shape, config.cap_points)
        print(render_discrepancies(shape, ideal_only, set_only, fmt))
        if fmt == "text":
            print(f"count: {len(ideal_only)} ideal-only, {len(set_only)} set-only")
        return EXIT_OK
    if args.maximal:
        sets = maximal_t_signed(shape, config.cap_points, config.workers)
    elif args.set_maximal:
        sets = set_maximal_t_signed(shape, config.cap_points)
    else:
        sets = enumerate_t_signed(shape, config.cap_points, config.workers)
    print(render_point_sets(shape, sets, fmt))
    if fmt == "text":
        print(f"count: {len(sets)}")
    return EXIT_OK


def cmd_min_primes(config: RunConfig, args: argparse.Namespace) -> int:
    shape = config.shape()
    primes = minimal_primes(shape, config.ideal, config.cap_points)
    print(render_presentations(shape, primes, config.output_format))
    if config.output_format == "text":
        print(f"count: {len(primes)}")
    elif config.output_format == "m2":
        print(f"-- count: {len(primes)}")
    return EXIT_OK


def read_point_set(source: str) -> List[Point]:
    """Points from "@path" (one point per line) or an inline list like "(1,1,1),(2,1,1)"."""
    if source.startswith("@"):
        path = Path(source[1:])
        if not path.is_file():
            raise ParseError(f"Point-set file not found: {path}")
        return parse_point_set_text(path.read_text(encoding="utf-8"))
    points = [parse_point(m.group(0)) for m in _INLINE_POINT_RE.finditer(source)]
    if not points and source.strip():
        raise ParseError(f"No points found in {source!r}")
    return points


def cmd_reduce(config: RunConfig, args: argparse.Namespace) -> int:
    shape = config.shape()
    S = PointSet(shape, read_point_set(args.point_set))
    m = parse_monomial(args.monomial)
    for p in m.points:
        shape.validate_point(p)
    sign, nf = normal_form(m, S)
    if config.output_format == "json":
        points = [list(p) for p in reversed(nf.points)] if nf is not None else None
        print(json.dumps({"sign": sign if nf is not None else 0, "monomial": points}))
    elif nf is None:
        print("0")
    elif config.output_format == "m2":
        prefix = "-" if sign == -1 else ""
        print(prefix + "*".join(varname(p) for p in reversed(nf.points)))
    else:
        hr = hyper_ring(shape)
        print(format_polynomial(hr, sign * hr.monomial(nf)))
    logger.info("Reduced %s modulo Q of %s", m, format_point_set(S))
    return EXIT_OK


def cmd_verify(config: RunConfig, args: argparse.Namespace) -> int:
    report = run_verification(
        config.shape(),
        config.level,
        config.ideal,
        config.cap_points,
        config.workers,
        config.cap_degree,
    )
    print(report.render())
    if not report.passed:
        for failure in report.failures:
            print(f"failed: {failure.name}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {
    "gens": cmd_gens,
    "signed-sets": cmd_signed_sets,
    "min-primes": cmd_min_primes,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and map errors to exit codes.

    Returns:
        0 on success, 2 for usage errors, 3 when the enumeration cap is hit,
        4 when verification fails
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _configure_logging(args.log_level)
        config = _run_config(args)
        return COMMANDS[args.command](config, args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValidationError as exc:
        messages = "; ".join(err["msg"] for err in exc.errors())
        print(f"error: {messages}", file=sys.stderr)
        return EXIT_USAGE
    except (PermanentalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
