#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
parity-psi entry point.
Builds the nearby-cycles complexes for a chosen n, runs the verification
suites and prints complexes, tables and ledgers.

Exit codes: 0 when every statement holds, 1 when a statement fails, 2 on a
usage error.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field

from config import (
    APP_TITLE,
    APP_VERSION,
    COMMANDS,
    DEFAULT_FORMAT,
    DEFAULT_MODE,
    DEFAULT_RING,
    FORMATS,
    LOG_FORMAT,
    LOG_LEVEL,
    MAX_N,
    MODES,
    SUITES,
    WORKER_THREADS,
)
from controllers.report_controller import ReportController
from models.scalar import BaseRing, scalar_ring

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    """One command-line invocation."""

    command: str
    n: int
    ring: str = DEFAULT_RING
    fmt: str = DEFAULT_FORMAT
    mode: str = DEFAULT_MODE
    suites: list = field(default_factory=list)
    export: bool = False
    untwisted: bool = False
    workers: int = WORKER_THREADS

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command {self.command!r}")
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n must lie in [1, {MAX_N}], got {self.n}")
        if self.fmt not in FORMATS:
            raise ValueError(f"Unknown format {self.fmt!r}")
        if self.mode not in MODES:
            raise ValueError(f"Unknown mode {self.mode!r}")
        for suite in self.suites:
            if suite not in SUITES:
                raise ValueError(f"Unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        BaseRing.parse(self.ring)


def _dump(data):
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, default=str)


def _results_dict(results):
    return [r.to_dict() for r in results]


def _status(results):
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def run_verify(config, controller):
    certificate = controller.verify(config.suites or None)
    if config.fmt == "json":
        print(_dump(controller.certificate_to_dict(certificate)))
    else:
        print(controller.certificate_text(certificate))
    if config.export:
        for path in controller.export_certificate(certificate):
            print(f"Wrote {path}")
    return EXIT_OK if certificate["passed"] else EXIT_FAILED


def run_psi(config, controller):
    complex_ = controller.nearby.build_Z() if config.untwisted else controller.psi()
    output = controller.render(complex_, config.fmt)
    print(output, end="" if output.endswith("\n") else "\n")
    return EXIT_OK


def run_grm(config, controller):
    tables = controller.grm()
    if config.fmt == "json":
        print(
            _dump(
                {
                    "n": tables["n"],
                    "gr": tables["gr"].to_dict(),
                    "psi": tables["psi"].to_dict(),
                    "matches_closed_form": tables["matches_closed_form"],
                }
            )
        )
    else:
        print(f"gr_k of Z for n = {config.n} (rows |I|, columns k)")
        print(tables["gr"].to_text())
        print()
        print("Psi = Z<-1> (columns k - 1)")
        print(tables["psi"].to_text())
        print()
        print("closed form: " + ("matches" if tables["matches_closed_form"] else "DIFFERS"))
    if config.export:
        for path in controller.export_tables(tables):
            print(f"Wrote {path}")
    return EXIT_OK if tables["matches_closed_form"] else EXIT_FAILED


def run_weyl(config, controller):
    results = controller.weyl.verify()
    report = controller.weyl.report()
    if config.fmt == "json":
        report["results"] = _results_dict(results)
        print(_dump(report))
    else:
        for row in report["translations"]:
            print(f"t^{row['i']} = {row['word']}")
        for row in report["admissible"]:
            print(f"w_{tuple(row['I'])} = {row['word']}  (length {row['length']})")
        for result in results:
            print(result)
    return _status(results)


def run_chart(config, controller):
    results = controller.geometry.verify()
    report = controller.geometry.report()
    if config.fmt == "json":
        report["results"] = _results_dict(results)
        print(_dump(report))
    else:
        print(f"f = {report['f']}")
        for k, line in enumerate(report["lines"], start=1):
            print(f"u_{k} = [{' : '.join(line)}]")
        for result in results:
            print(result)
    return _status(results)


def run_usage(config, controller):
    report = controller.usage()
    results = report["results"]
    if config.fmt == "json":
        data = {key: value for key, value in report.items() if key not in ("ledger", "results")}
        data["ledger"] = report["ledger"].to_dict()
        data["results"] = _results_dict(results)
        print(_dump(data))
    else:
        print(f"unit-sum uses for n = {config.n}, mode {config.mode}")
        print(f"  subsets: {report['subsets']}")
        print(f"  max |I| = {report['max_size']}, bound {report['bound']}")
        for result in results:
            if not result.passed:
                print(result)
    return _status(results)


HANDLERS = {
    "verify": run_verify,
    "psi": run_psi,
    "grm": run_grm,
    "weyl": run_weyl,
    "chart": run_chart,
    "usage": run_usage,
}


def run(config):
    """Run one configured command and return its exit code."""
    sring = scalar_ring(config.n, BaseRing.parse(config.ring))
    controller = ReportController(sring, mode=config.mode, workers=config.workers)
    logger.info("Running %s for n=%d over %s", config.command, config.n, config.ring)
    return HANDLERS[config.command](config, controller)


def build_parser():
    parser = argparse.ArgumentParser(
        prog=APP_TITLE,
        description="Exact verification of nearby cycles of parity sheaves.",
    )
    parser.add_argument("--version", action="version", version=f"{APP_TITLE} {APP_VERSION}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int, required=True, help="rank n (affine n-space, PGL_n)")
    parser.add_argument("--ring", default=DEFAULT_RING, help="z, q or gf:P")
    parser.add_argument("--format", dest="fmt", default=DEFAULT_FORMAT, choices=FORMATS)
    parser.add_argument("--mode", default=DEFAULT_MODE, choices=MODES)
    parser.add_argument("--suite", dest="suites", action="append", default=[], help="repeatable; verify only")
    parser.add_argument("--export", action="store_true", help="write certificate or tables to the export directory")
    parser.add_argument("--untwisted", action="store_true", help="psi only: print Z instead of Z<-1>")
    parser.add_argument("--threads", dest="workers", type=int, default=WORKER_THREADS)
    return parser


def main(argv=None):
    logging.basicConfig(level=getattr(logging, LOG_LEVEL, logging.WARNING), format=LOG_FORMAT)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        config = RunConfig(
            command=args.command,
            n=args.n,
            ring=args.ring,
            fmt=args.fmt,
            mode=args.mode,
            suites=args.suites,
            export=args.export,
            untwisted=args.untwisted,
            workers=max(1, args.workers),
        )
        return run(config)
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.exception("Run failed")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
