# This file is part of kappaforge, a toolkit for the kappa-Minkowski star-product algebra.
#
# Copyright 2017-2018 kappaforge contributors
#
# This library is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This library is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public
# along with this library.  If not, see <http://www.gnu.org/licenses/>.
#

"""
Command line front end.

Usage::

    kappaforge [global options] suite {symbolic,hopf,calculus,grid,trace,rieffel,all}
    kappaforge [global options] eval [-f FILE] [EXPR [EXPR ...]]

    global options:
      --kappa KAPPA         deformation parameter
      --nv NV, --nbeta NBETA
                            grid intervals along v and beta (even, >= 16)
      --vmax VMAX, --bmax BMAX
                            half widths of the grid box
      --tol-symbolic, --tol-grid, --tol-trace
                            suite tolerances
      --strict              fail on interpolation leakage instead of recording it
      --threads THREADS     worker threads of the grid product
      --seed SEED           fixture seed
      --out {json,csv}      report format
      --config CONFIG       JSON file with configuration keys
      -j JOBS, --jobs JOBS  number of parallel suite processes
      -l {debug,info,warning,error,critical}, --log-level {debug,info,warning,error,critical}
                            log level
      --output OUTPUT       write the report to a file instead of stdout

Exit codes: 0 success, 1 a suite check failed, 2 usage, configuration or expression
error, 3 numerical error.
"""

from __future__ import print_function

import argparse
import csv
import io
import json
import logging
import sys

from ..config import Config
from ..errors import AlgebraError, ConfigError, DslError, InvalidValue, NumericError
from .dsl import Session, unparse
from .suite import SCHEMA, SUITES, report_to_csv, run_suite

_LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
_LOG_FORMAT = "[%(name)s] [%(levelname)5s] [%(asctime)s] %(message)s"
_LOG_LEVEL_FROM_STRING = {
  "debug": logging.DEBUG,
  "info": logging.INFO,
  "warning": logging.WARNING,
  "error": logging.ERROR,
  "critical": logging.CRITICAL
}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

# command line flag -> configuration key
_CONFIG_FLAGS = ("kappa", "nv", "nbeta", "vmax", "bmax", "tol_symbolic", "tol_grid", "tol_trace", "strict", "threads",
                 "seed", "out", "jobs")


def build_parser():
  parser = argparse.ArgumentParser(prog="kappaforge", description="kappa-Minkowski star-product toolkit")
  parser.add_argument("--kappa", type=float, help="deformation parameter")
  parser.add_argument("--nv", type=int, help="grid intervals along v")
  parser.add_argument("--nbeta", type=int, help="grid intervals along beta")
  parser.add_argument("--vmax", type=float, help="half width of the v range")
  parser.add_argument("--bmax", type=float, help="half width of the beta range")
  parser.add_argument("--tol-symbolic", type=float, help="tolerance of the exact suites")
  parser.add_argument("--tol-grid", type=float, help="tolerance of the grid suites")
  parser.add_argument("--tol-trace", type=float, help="tolerance of the trace identities")
  parser.add_argument("--strict", action="store_true", default=None, help="fail on interpolation leakage")
  parser.add_argument("--threads", type=int, help="worker threads of the grid product")
  parser.add_argument("--seed", type=int, help="fixture seed")
  parser.add_argument("--out", choices=Config.OUTPUT_FORMATS, help="report format")
  parser.add_argument("--config", help="JSON file with configuration keys")
  parser.add_argument("-j", "--jobs", type=int, help="number of parallel suite processes")
  parser.add_argument("-l", "--log-level", choices=sorted(_LOG_LEVEL_FROM_STRING, key=_LOG_LEVEL_FROM_STRING.get),
                      default="warning", help="log level")
  parser.add_argument("--output", help="write the report to a file instead of stdout")

  commands = parser.add_subparsers(dest="command", metavar="command")
  commands.required = True
  suite = commands.add_parser("suite", help="run a property suite")
  suite.add_argument("name", choices=SUITES + ("all",), help="suite to run")
  evaluate = commands.add_parser("eval", help="evaluate expressions")
  evaluate.add_argument("-f", "--file", help="program file ('-' reads stdin)")
  evaluate.add_argument("expressions", nargs="*", help="statements, evaluated in order in one session")
  return parser


def _config_from_args(args):
  overrides = dict((key, getattr(args, key)) for key in _CONFIG_FLAGS)
  return Config(overrides, config_file=args.config)


def _emit(text, args):
  if args.output:
    with open(args.output, "w", encoding="utf-8") as output:
      output.write(text)
  else:
    sys.stdout.write(text)


def _run_suite_command(args, config):
  report = run_suite(args.name, config)
  if config.out == "csv":
    _emit(report_to_csv(report), args)
  else:
    _emit(json.dumps(report, indent=2) + "\n", args)
  return EXIT_OK if report["passed"] else EXIT_FAILED


def _read_program(args):
  parts = []
  if args.file == "-":
    parts.append(sys.stdin.read())
  elif args.file:
    with open(args.file, "r") as source:
      parts.append(source.read())
  parts.extend(args.expressions)
  return "\n".join(parts), args.file or "<command line>"


def _json_value(session, value):
  if isinstance(value, complex):
    return [value.real, value.imag]
  return session.format(value)


def _run_eval_command(args, config):
  source, origin = _read_program(args)
  session = Session(config, origin=origin)
  results = session.run(source)
  # plain text unless a report format was asked for on the command line
  if args.out == "json":
    document = {
      "schema": SCHEMA,
      "results": [{"statement": unparse(r.statement), "type": str(r.type), "value": _json_value(session, r.value)}
                  for r in results],
    }
    _emit(json.dumps(document, indent=2) + "\n", args)
  elif args.out == "csv":
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(["statement", "type", "value"])
    for r in results:
      writer.writerow([unparse(r.statement), str(r.type), session.format(r.value)])
    _emit(output.getvalue(), args)
  else:
    _emit("".join(session.format(r.value) + "\n" for r in results), args)
  return EXIT_OK


def main(argv=None):
  """
  Entry point; returns the process exit code.
  """
  args = build_parser().parse_args(argv)
  logging.basicConfig(level=_LOG_LEVEL_FROM_STRING[args.log_level], format=_LOG_FORMAT, datefmt=_LOG_DATE_FORMAT)
  logger = logging.getLogger("kappaforge.cli")
  try:
    config = _config_from_args(args)
    if args.command == "suite":
      return _run_suite_command(args, config)
    return _run_eval_command(args, config)
  except ConfigError as e:
    logger.error("configuration error: %s", e)
    return EXIT_USAGE
  except DslError as e:
    logger.error("%s", e)
    return EXIT_USAGE
  except (InvalidValue, AlgebraError) as e:
    logger.error("invalid input: %s", e)
    return EXIT_USAGE
  except NumericError as e:
    logger.error("numerical error: %s", e)
    return EXIT_NUMERIC
  except (IOError, OSError) as e:
    logger.error("%s", e)
    return EXIT_USAGE


if __name__ == "__main__":
  sys.exit(main())
