"""Command-line interface.

    qclocksim run CONFIG [--out-dir DIR] [--format csv|json|both]
                         [--threads N] [--strict-regime]
                         [--tolerance KEY=VALUE ...]
    qclocksim validate CONFIG
    qclocksim kinds

Exit codes: 0 all checks passed, 1 at least one tolerance check failed,
2 configuration problem, 3 engine failure.  Result files are byte-stable
across repeated runs; anything nondeterministic (wall-clock timings) goes
to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .config import PARAM_SCHEMAS, TOLERANCE_DEFAULTS, load_config
from .errors import ConfigError
from .runners import run_config

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_ENGINE = 3


def _parse_tolerance(text: str) -> tuple:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise ConfigError(f"--tolerance expects KEY=VALUE, got {text!r}")
    try:
        return key, float(value)
    except ValueError as exc:
        raise ConfigError(f"--tolerance {key}: {value!r} is not a number") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qclocksim",
        description=(
            "Simulate composite particles whose internal energy gravitates "
            "into their mass: twin-paradox boost sequences, quantum time "
            "dilation, pointer-clock degradation, and trapped-ion clock shifts."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run every scenario in a JSON config")
    run.add_argument("config", help="path to the JSON run configuration")
    run.add_argument(
        "--out-dir",
        default=None,
        help="directory for per-run result files (created if missing); "
        "omit to print summaries only",
    )
    run.add_argument(
        "--format",
        choices=("csv", "json", "both"),
        default="both",
        help="which result files to write (default: both)",
    )
    run.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker threads for independent runs (default: 1)",
    )
    run.add_argument(
        "--strict-regime",
        action="store_true",
        help="escalate soft regime warnings during the run to hard errors",
    )
    run.add_argument(
        "--tolerance",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a named tolerance for every scenario that has it "
        "(repeatable)",
    )

    validate = sub.add_parser("validate", help="validate a config and exit")
    validate.add_argument("config", help="path to the JSON run configuration")

    sub.add_parser("kinds", help="list scenario kinds, parameters, and defaults")
    return parser


def _cmd_kinds() -> int:
    listing = {}
    for kind in sorted(PARAM_SCHEMAS):
        listing[kind] = {
            "parameters": {
                key: {"default": spec.default, "sweepable": spec.sweepable}
                for key, spec in sorted(PARAM_SCHEMAS[kind].items())
            },
            "tolerances": dict(sorted(TOLERANCE_DEFAULTS[kind].items())),
        }
    print(json.dumps(listing, sort_keys=True, indent=2))
    return EXIT_OK


def _cmd_validate(path: str) -> int:
    config = load_config(path)
    total = sum(len(spec.expand()) for spec in config.scenarios)
    print(f"{path}: valid ({len(config.scenarios)} scenario(s), {total} run(s))")
    return EXIT_OK


def _cmd_run(args) -> int:
    config = load_config(args.config)
    if args.threads < 1:
        raise ConfigError(f"--threads must be at least 1, got {args.threads}")
    overrides = dict(_parse_tolerance(item) for item in args.tolerance)
    started = time.perf_counter()
    reports = run_config(
        config,
        threads=args.threads,
        tolerance_overrides=overrides,
        strict_regime=args.strict_regime,
    )
    elapsed = time.perf_counter() - started

    out_dir = None
    if args.out_dir is not None:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
    for report in reports:
        for line in report.summary_lines():
            print(line)
        if out_dir is not None:
            if args.format in ("csv", "both"):
                report.write_csv(out_dir / f"{report.name}.csv")
            if args.format in ("json", "both"):
                report.write_json(out_dir / f"{report.name}.json")

    failed = sum(1 for r in reports if not r.passed)
    if failed:
        print(f"{failed} of {len(reports)} run(s) had failing checks")
    else:
        print(f"all {len(reports)} run(s) passed")
    print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "kinds":
            return _cmd_kinds()
        if args.command == "validate":
            return _cmd_validate(args.config)
        return _cmd_run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # engine failures: report, do not traceback-spam
        print(f"engine error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
