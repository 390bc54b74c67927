"""Command-line surface.

Every subcommand reads versioned JSON object files, writes one JSON
document to stdout (or --out FILE), and prints a short human summary to
stderr.  Exit codes: 0 every check passed, 1 a definite failure, 2 blocked
short of a definite answer (prime-field evidence only, or a resource cap),
3 usage or malformed input.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Optional

from .cohomology import CohomologyError, cohomology_table, line_splitting
from .fields import QQ, BadPrimeError, ScalarFormatError, validate_prime
from .frames import GammaPoint, gamma_to_net, misp_verify
from .nets import QuadricNet, WrongRankError, barth_verify, presentation
from .plane import (
    PlaneError,
    SigmaPoint,
    fiber_report,
    mx_verify,
    phi_restrict,
    plane_net_of_sigma,
    psi_project,
)
from .serialize import SchemaError, dumps, load_file, object_to_jsonable
from .slices import BarthOctuple, BlockMismatchError, a_of_octuple, gamma_conditions
from .workbench import SearchConfig, dims_report, orbit_test, search_gamma_points

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_BLOCKED = 2
EXIT_USAGE = 3


class UsageError(Exception):
    """Bad flags or bad input files; always exits 3."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on its own; route through UsageError for exit 3
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monadforge",
                     description="Exact linear algebra for quadric-net "
                                 "monads and their plane reductions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", metavar="FILE",
                       help="write the JSON document here instead of stdout")

    p = sub.add_parser("dims", help="closed-form dimension table")
    p.add_argument("--n", type=int, required=True, metavar="N")
    add_out(p)

    p = sub.add_parser("verify", help="run the verdict suite on an object")
    p.add_argument("subject", choices=("net", "octuple", "gamma", "plane"))
    p.add_argument("file")
    p.add_argument("--mode", choices=("exact", "fast"), default="exact")
    p.add_argument("--prime", type=int, default=None)
    add_out(p)

    p = sub.add_parser("cohomology", help="twist table of the middle bundle")
    p.add_argument("file")
    p.add_argument("--twists", required=True, metavar="A..B")
    add_out(p)

    p = sub.add_parser("restrict", help="drop to the plane: net -> plane "
                                        "net, octuple -> sigma point")
    p.add_argument("file")
    add_out(p)

    p = sub.add_parser("split-line", help="splitting degree on the line "
                                          "through two points")
    p.add_argument("file")
    p.add_argument("--p1", required=True, metavar="C1,C2,...")
    p.add_argument("--p2", required=True, metavar="C1,C2,...")
    add_out(p)

    p = sub.add_parser("fiber", help="solve the plane-to-space fiber system")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=0, metavar="K")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=None)
    add_out(p)

    p = sub.add_parser("search", help="randomized campaign for verified "
                                      "octuples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--ansatz", choices=("dense", "diagonal"), default="dense")
    p.add_argument("--mode", choices=("exact", "fast"), default="fast")
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--full-cap", type=int, default=48,
                   help="max hits re-verified over the rationals")
    add_out(p)

    p = sub.add_parser("orbit-test", help="check invariance under a random "
                                          "group element")
    p.add_argument("file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "fast"), default="fast")
    p.add_argument("--prime", type=int, default=None)
    add_out(p)

    return parser


# --------------------------------------------------------------- plumbing


def _emit(data: dict, out: Optional[str]) -> None:
    text = dumps(data)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _note(*lines: str) -> None:
    for line in lines:
        print(line, file=sys.stderr)


def _check_prime(prime: Optional[int]) -> Optional[int]:
    if prime is not None:
        try:
            validate_prime(prime)
        except BadPrimeError as exc:
            raise UsageError(str(exc)) from None
    return prime


def _load(path: str):
    try:
        return load_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _kind(obj) -> str:
    if isinstance(obj, QuadricNet):
        return "plane net" if obj.ambient == 3 else "net"
    if isinstance(obj, BarthOctuple):
        return "octuple"
    if isinstance(obj, GammaPoint):
        return "gamma point"
    return "sigma point"


def _net_of(obj) -> QuadricNet:
    """Coerce any object file to the quadric net it presents.

    Octuples must satisfy the closed identities (otherwise no net exists);
    sigma points must have symmetric C.  Both failures are mathematical,
    not usage, and surface as exit 1.
    """
    if isinstance(obj, QuadricNet):
        return obj
    if isinstance(obj, GammaPoint):
        return gamma_to_net(obj)
    if isinstance(obj, BarthOctuple):
        net, _ = a_of_octuple(obj, strict=True)
        return net
    return plane_net_of_sigma(obj)


def _parse_twists(window: str) -> tuple[int, int]:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", window)
    if m is None:
        raise UsageError(f"--twists wants A..B, got {window!r}")
    t_min, t_max = int(m.group(1)), int(m.group(2))
    if t_min > t_max:
        raise UsageError(f"empty twist window {window!r}")
    return t_min, t_max


def _parse_point(raw: str, flag: str) -> list:
    coords = []
    for i, chunk in enumerate(raw.split(",")):
        try:
            coords.append(QQ.from_str(chunk.strip()))
        except ScalarFormatError as exc:
            raise UsageError(f"{flag}[{i}]: {exc}") from None
    return coords


# ------------------------------------------------------------- subcommands


def _cmd_dims(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    rows = dims_report(args.n)
    _emit({"rows": [row.to_jsonable() for row in rows]}, args.out)
    _note(f"dims: {len(rows)} rows")
    return EXIT_PASS


def _cmd_verify(args) -> int:
    prime = _check_prime(args.prime)
    obj = _load(args.file)
    subject = args.subject
    if subject == "net":
        if not isinstance(obj, QuadricNet) or obj.ambient != 4:
            raise UsageError(f"verify net wants a 4-variable net file, "
                             f"got a {_kind(obj)}")
        report = barth_verify(obj, mode=args.mode, prime=prime)
    elif subject == "plane":
        if not isinstance(obj, QuadricNet) or obj.ambient != 3:
            raise UsageError(f"verify plane wants a 3-variable net file, "
                             f"got a {_kind(obj)}")
        report = mx_verify(obj, mode=args.mode, prime=prime)
    elif subject == "octuple":
        if not isinstance(obj, BarthOctuple):
            raise UsageError(f"verify octuple wants an octuple file, "
                             f"got a {_kind(obj)}")
        report = gamma_conditions(obj, mode=args.mode, prime=prime)
    else:
        if not isinstance(obj, GammaPoint):
            raise UsageError(f"verify gamma wants a gamma file, "
                             f"got a {_kind(obj)}")
        report = misp_verify(obj, mode=args.mode, prime=prime)
    _emit(report.to_jsonable(), args.out)
    _note(*report.summary_lines())
    return report.exit_code


def _cmd_cohomology(args) -> int:
    t_min, t_max = _parse_twists(args.twists)
    net = _net_of(_load(args.file))
    table = cohomology_table(presentation(net), t_min, t_max)
    _emit(table.to_jsonable(), args.out)
    _note(f"cohomology: n={table.n} ambient={table.ambient} "
          f"twists {t_min}..{t_max}")
    return EXIT_PASS


def _cmd_restrict(args) -> int:
    obj = _load(args.file)
    if isinstance(obj, BarthOctuple):
        result = psi_project(obj)
    elif isinstance(obj, GammaPoint):
        result = phi_restrict(gamma_to_net(obj))
    elif isinstance(obj, QuadricNet):
        if obj.ambient != 3:
            result = phi_restrict(obj)
        else:
            raise UsageError("the net is already a plane net")
    else:
        raise UsageError("a sigma point is already plane-level data")
    _emit(object_to_jsonable(result), args.out)
    _note(f"restrict: {_kind(obj)} -> {_kind(result)}")
    return EXIT_PASS


def _cmd_split_line(args) -> int:
    net = _net_of(_load(args.file))
    p1 = _parse_point(args.p1, "--p1")
    p2 = _parse_point(args.p2, "--p2")
    try:
        d = line_splitting(presentation(net), p1, p2)
    except CohomologyError as exc:
        # bad points (wrong length, proportional), not a math failure
        raise UsageError(str(exc)) from None
    _emit({"n": net.n, "ambient": net.ambient,
           "p1": [QQ.to_str(x) for x in p1],
           "p2": [QQ.to_str(x) for x in p2],
           "splitting_degree": d, "trivial": d == 0}, args.out)
    _note(f"split-line: degree {d}" + ("" if d else " (non-jumping)"))
    return EXIT_PASS


def _cmd_fiber(args) -> int:
    prime = _check_prime(args.prime)
    obj = _load(args.file)
    if isinstance(obj, BarthOctuple):
        sigma = psi_project(obj)
    elif isinstance(obj, SigmaPoint):
        sigma = obj
    else:
        raise UsageError(f"fiber wants a sigma or octuple file, "
                         f"got a {_kind(obj)}")
    report = fiber_report(sigma, samples=args.samples, seed=args.seed,
                          prime=prime)
    _emit(report.to_jsonable(), args.out)
    _note(f"fiber: rank {report.rank}, "
          + (f"dim {report.measured_dim} (claim {report.claimed_dim})"
             if report.consistent else "inconsistent system"))
    return EXIT_PASS if report.consistent else EXIT_FAIL


def _cmd_search(args) -> int:
    prime = _check_prime(args.prime)
    try:
        cfg = SearchConfig(n=args.n, seed=args.seed, trials=args.trials,
                           ansatz=args.ansatz, mode=args.mode, prime=prime,
                           full_cap=args.full_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = search_gamma_points(cfg)
    data = report.stats_jsonable()
    data["hits"] = [{"trial": h.trial, "escalated": h.escalated,
                     "overall": h.report.overall} for h in report.hits]
    _emit(data, args.out)
    _note(f"search: {len(report.hits)} hits from {report.trials_run} trials"
          + (f" ({report.note})" if report.note else ""))
    return EXIT_PASS


def _cmd_orbit_test(args) -> int:
    prime = _check_prime(args.prime)
    obj = _load(args.file)
    report = orbit_test(obj, args.seed, mode=args.mode, prime=prime)
    _emit(report.to_jsonable(), args.out)
    verdict = "invariant" if report.matched else "NOT invariant"
    _note(f"orbit-test: {report.subject} {verdict}")
    return EXIT_PASS if report.matched else EXIT_FAIL


_COMMANDS = {
    "dims": _cmd_dims,
    "verify": _cmd_verify,
    "cohomology": _cmd_cohomology,
    "restrict": _cmd_restrict,
    "split-line": _cmd_split_line,
    "fiber": _cmd_fiber,
    "search": _cmd_search,
    "orbit-test": _cmd_orbit_test,
}


# Values like "-6..2" or "-1,0,0,0" look like flags to argparse; glue them
# to their option so twist windows and point coordinates may be negative.
_VALUE_FLAGS = ("--twists", "--p1", "--p2")


def _normalize(argv: list) -> list:
    out = []
    it = iter(argv)
    for token in it:
        if token in _VALUE_FLAGS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_normalize(list(argv)))
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    except SchemaError as exc:
        _note(f"error: malformed input at {exc}")
        return EXIT_USAGE
    except BadPrimeError as exc:
        # MONADFORGE_PRIME itself can be bad; surfaced on first use
        _note(f"error: {exc}")
        return EXIT_USAGE
    except (WrongRankError, BlockMismatchError, PlaneError) as exc:
        _note(f"failed: {exc}")
        return EXIT_FAIL
    except CohomologyError as exc:
        _note(f"blocked: {exc}")
        return EXIT_BLOCKED


if __name__ == "__main__":
    sys.exit(main())
