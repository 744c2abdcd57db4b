"""Command line: ``otrl dist | map | verify | schema``.

Exit codes: 0 success (or all checks passed), 1 some check failed,
2 configuration or input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from .errors import OTRLError
from .jsonio import SCHEMAS, dumps, read_measure, read_space, write_measure
from .maps import map_by_name
from .ot import solve_exact
from .rigidity import GROUPS, VerifyConfig, run_group

SEED_ENV = "OTRL_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="otrl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    dist = sub.add_parser("dist", help="Wasserstein distance between two measures")
    dist.add_argument("--space", help="GroundSpace as inline JSON or a file path")
    dist.add_argument("--mu", required=True)
    dist.add_argument("--nu", required=True)
    dist.add_argument("--p", type=float, default=1.0)
    dist.add_argument("--out", help="write JSON here instead of standard output")

    mp = sub.add_parser("map", help="apply a measure map")
    mp.add_argument("--name", required=True, help="trivial:id | trivial:r | flip | kloeckner:<theta> | project")
    mp.add_argument("--mu", required=True)
    mp.add_argument("--space")
    mp.add_argument("--out")

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("group", choices=sorted(GROUPS))
    ver.add_argument("--D", type=float, default=10.0)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--samples", type=int, default=200)
    ver.add_argument("--workers", type=int, default=1)
    ver.add_argument("--json", dest="json_path")
    ver.add_argument("--quiet", action="store_true")

    sch = sub.add_parser("schema", help="print JSON schemas")
    sch.add_argument("name", nargs="?", choices=sorted(SCHEMAS))
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _cmd_dist(args) -> int:
    if not args.p >= 1:
        raise OTRLError("p must be ≥ 1")
    space = read_space(args.space) if args.space else None
    mu = read_measure(args.mu, space)
    nu = read_measure(args.nu, space)
    res = solve_exact(mu, nu, args.p)
    out = {
        "distance": res.distance,
        "cost": res.cost,
        "plan": [[i, j, w] for i, j, w in res.plan.entries()],
    }
    _emit(dumps(out), args.out)
    return 0


def _cmd_map(args) -> int:
    space = read_space(args.space) if args.space else None
    mu = read_measure(args.mu, space)
    image = map_by_name(args.name)(mu)
    _emit(write_measure(image), args.out)
    return 0


def _cmd_verify(args) -> int:
    seed = args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise OTRLError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    config = VerifyConfig(D=args.D, seed=seed, samples=args.samples, workers=args.workers)
    report = run_group(args.group, config)
    text = dumps(report.to_dict())
    if args.json_path:
        Path(args.json_path).write_text(text + "\n")
    if not args.quiet:
        for suite in report.suites:
            print("\n".join(suite.summary_lines()))
        print(f"{'PASS' if report.passed else 'FAIL'}: {args.group} (D={config.D!r}, seed={config.seed})")
    return 0 if report.passed else 1


def _cmd_schema(args) -> int:
    print(dumps({args.name: SCHEMAS[args.name]} if args.name else SCHEMAS))
    return 0


def run_cli(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"otrl: error: {exc}", file=sys.stderr)
        return 2
    handler = {"dist": _cmd_dist, "map": _cmd_map, "verify": _cmd_verify, "schema": _cmd_schema}[args.command]
    try:
        return handler(args)
    except OTRLError as exc:
        print(f"otrl: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
