"""Command-line entry point.

    bohmrotor run --config scenario.yaml [--preset fig2] [--out DIR] [--seed N]
    bohmrotor presets
    bohmrotor version

`run` needs a config file, a preset name, or both; with both, the file's
keys override the named preset. Exit codes: 0 success, 1 configuration
or validation failure, 2 numerical failure (band truncation, node
proximity, step underflow).
"""
from __future__ import annotations

import argparse
import sys

import yaml

from ._version import __version__
from .config import config_from_mapping
from .errors import ConfigError, NumericalError, ValidationError
from .presets import list_presets
from .runner import run_scenario


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; keep 2 for numerical
    # failures and report usage problems as validation failures instead
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(1)


def _build_parser():
    parser = _Parser(prog="bohmrotor",
                     description="Kicked-rotor pilot-wave simulations")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a scenario")
    run.add_argument("--config", help="YAML scenario file")
    run.add_argument("--preset", help="named preset to start from")
    run.add_argument("--out", help="output directory override")
    run.add_argument("--seed", type=int, help="RNG seed override")

    sub.add_parser("presets", help="list preset names")
    sub.add_parser("version", help="print the package version")
    return parser


def _load_document(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("cannot read config file: %s" % exc) from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            raise ConfigError("config syntax error: %s" % exc,
                              line=mark.line + 1,
                              column=mark.column + 1) from exc
        raise ConfigError("config syntax error: %s" % exc) from exc
    if doc is None:
        doc = {}
    return doc


def _cmd_run(args):
    if args.config is None and args.preset is None:
        sys.stderr.write("error: run needs --config and/or --preset\n")
        return 1
    doc = _load_document(args.config) if args.config else {}
    if not isinstance(doc, dict):
        sys.stderr.write("error: config document must be a mapping\n")
        return 1
    if args.preset is not None:
        doc["preset"] = args.preset
    if args.out is not None:
        doc["out_dir"] = args.out
    if args.seed is not None:
        doc["seed"] = args.seed

    config = config_from_mapping(doc)
    result = run_scenario(config)
    print("scenario %s: wrote %d files to %s"
          % (config.name, len(result.files), result.out_dir))
    for name in result.files:
        print("  " + name)
    return 0


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "presets":
            for name, text in list_presets().items():
                print("%s: %s" % (name, text))
            return 0
        print(__version__)
        return 0
    except ConfigError as exc:
        where = ""
        if exc.line is not None:
            where = " (line %s, column %s)" % (exc.line, exc.column)
        sys.stderr.write("config error%s: %s\n" % (where, exc))
        return 1
    except ValidationError as exc:
        sys.stderr.write("validation error: %s\n" % exc)
        return 1
    except NumericalError as exc:
        sys.stderr.write("numerical failure: %s\n" % exc)
        return 2
    except OSError as exc:
        sys.stderr.write("i/o error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
