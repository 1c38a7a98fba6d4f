"""Command line entry point: ``moea-lab run`` and ``moea-lab list-variants``."""

from __future__ import annotations

import argparse
import logging
import sys

from moea_lab.engines import Mutation
from moea_lab.harness.runner import execute, prepare_output, write_outputs
from moea_lab.harness.spec import SpecError, load_spec, with_seed
from moea_lab.selection import SelectionScheme

log = logging.getLogger("moea_lab")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moea-lab", description="NSGA-II, SEMO and GSEMO experiments.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment spec file")
    run.add_argument("--spec", required=True, help="key = value experiment file")
    run.add_argument("--out", default="results", help="output directory (default: results)")
    run.add_argument("--threads", type=int, default=1, help="worker threads for run dispatch")
    run.add_argument("--seed", type=int, default=None, help="base seed, overrides the spec file")
    run.add_argument(
        "--override", action="append", default=[], metavar="KEY=VALUE", help="override one spec field (repeatable)"
    )
    run.add_argument("--plot", action="store_true", help="also render a PNG figure next to the CSVs")

    sub.add_parser("list-variants", help="print the eight scheme/mutation variants")
    return parser


def _list_variants() -> None:
    for scheme in SelectionScheme:
        for mutation in Mutation:
            print(f"{scheme.letter}{mutation.letter}\t{scheme.value}\t{mutation.value}")


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "list-variants":
        _list_variants()
        return 0
    try:
        if args.threads < 1:
            raise SpecError("--threads must be at least 1")
        spec = load_spec(args.spec, args.override)
        if args.seed is not None:
            spec = with_seed(spec, args.seed)
        prepare_output(args.out)
        result = execute(spec, threads=args.threads)
        written = write_outputs(result, args.out, plot=args.plot)
    except ValueError as exc:
        print(f"moea-lab: invalid spec: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"moea-lab: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
