"""Command line: ``snapstream run``.

Exit codes: 0 success, 1 malformed config or flags, 2 malformed input
record, 3 pipeline contract violation, 4 a law check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import laws
from .errors import ContractViolation
from .jsonio import to_json
from .pipeline import ConfigError, InputError, Pipeline, output_records, read_events
from .time import FiniteDomain



def _error(msg: str, *args) -> None:
    print("snapstream: " + (msg % args if args else msg), file=sys.stderr)

EXIT_OK, EXIT_CONFIG, EXIT_INPUT, EXIT_CONTRACT, EXIT_LAWS = 0, 1, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snapstream", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="evaluate a pipeline or run the law suites")
    run.add_argument("--pipeline", help="pipeline config (JSON)")
    run.add_argument("--input", help="input events (JSONL)")
    run.add_argument("--from", dest="first", type=int, help="first tick of the domain")
    run.add_argument("--to", dest="last", type=int, help="last tick of the domain")
    run.add_argument("--output", help="output file (default: stdout)")
    run.add_argument("--policy", choices=("strict", "skip"), default="skip",
                     help="default selection policy for pattern stages")
    run.add_argument("--check-laws", metavar="SUITE",
                     help=f"comma-separated law suites ({', '.join(laws.SUITES)}) or 'all'")
    return parser


def _open_out(path: str | None):
    return sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8", newline="\n")


def check_laws(selection: str, out) -> int:
    names = list(laws.SUITES) if selection == "all" else [n.strip() for n in selection.split(",") if n.strip()]
    ok = True
    try:
        for rec in laws.run_suites(names):
            ok &= rec["passed"]
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    except ValueError as exc:
        _error("%s", exc)
        return EXIT_CONFIG
    return EXIT_OK if ok else EXIT_LAWS


def run_pipeline(args) -> int:
    missing = [flag for flag, v in (("--pipeline", args.pipeline), ("--input", args.input),
                                    ("--from", args.first), ("--to", args.last)) if v is None]
    if missing:
        _error("missing %s", ", ".join(missing))
        return EXIT_CONFIG
    try:
        with open(args.pipeline, encoding="utf-8") as fh:
            cfg = json.load(fh)
        pipeline = Pipeline.from_json(cfg)
        domain = FiniteDomain(args.first, args.last)
    except (OSError, json.JSONDecodeError, ConfigError, ValueError) as exc:
        _error("config: %s", exc)
        return EXIT_CONFIG
    try:
        with open(args.input, encoding="utf-8") as fh:
            events = read_events(fh)
    except InputError as exc:
        _error("input: %s", exc)
        return EXIT_INPUT
    except OSError as exc:
        _error("input: %s", exc)
        return EXIT_CONFIG

    try:
        sink = pipeline.build(events, domain, args.policy)
        lines = [json.dumps({"t": to_json(t), "out": to_json(c)}, sort_keys=True)
                 for t, c in output_records(sink)]
    except ContractViolation as exc:
        _error("contract violation: %s", exc)
        return EXIT_CONTRACT
    except ValueError as exc:
        _error("config: %s", exc)
        return EXIT_CONFIG
    except (TypeError, KeyError, IndexError, AttributeError, ZeroDivisionError) as exc:
        # a named function does not fit the payloads it was given
        _error("contract violation: stage function failed on input: %r", exc)
        return EXIT_CONTRACT

    out = _open_out(args.output)
    try:
        for line in lines:
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.check_laws:
        out = _open_out(args.output)
        try:
            return check_laws(args.check_laws, out)
        finally:
            if out is not sys.stdout:
                out.close()
    return run_pipeline(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
