#  Copyright 2022 Christopher Eltschka
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.


"""
The command line: run one experiment, a sweep, or the ECDF experiment
"""

import sys
import logging
import argparse
import pathlib
from typing import Any, Dict, List, Optional

from . import settings
from . import resources
from .errors import ConfigurationError
from .experiment import ecdf_experiment, expand_sweep, load_config, run_experiment, sweep

logger = logging.getLogger(__name__)


def token_list(text: str) -> List[str]:
    """
    A comma separated list of tokens
    """
    return [ token.strip() for token in text.split(",") if token.strip() ]


def int_list(text: str) -> List[int]:
    """
    A comma separated list of integers
    """
    try:
        return [ int(token) for token in token_list(text) ]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text}") from error


def build_parser() -> argparse.ArgumentParser:
    """
    The parser of the run, sweep and ecdf commands. Flags the commands
    share live in a parent parser.
    """
    parser = argparse.ArgumentParser(
        prog=settings.lab_info["name"],
        description=settings.lab_info["title"])
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {settings.lab_info['version']}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=pathlib.Path,
                        help="INI config document")
    common.add_argument("--seed", type=int, help="master seed")
    common.add_argument("--runs", type=int, help="independent runs per experiment")
    common.add_argument("--workers", type=int,
                        help="worker processes (0: one per CPU, 1: in-process)")
    common.add_argument("--lambda", dest="lam", type=int,
                        help="oracle candidates per trial event")
    for flag, help_text in (("--f-min", "oracle F range, lower (open) end"),
                            ("--f-max", "oracle F range, upper end"),
                            ("--cr-min", "oracle CR range, lower end"),
                            ("--cr-max", "oracle CR range, upper end")):
        common.add_argument(flag, type=float, help=help_text)
    common.add_argument("--repeats", type=int,
                        help="runs per composed oracle variant")
    common.add_argument("--output", type=pathlib.Path,
                        help=f"output root (default: ${settings.output_env_var} "
                             "or the user data directory)")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true",
                           help="log debugging details")
    verbosity.add_argument("--quiet", "-q", action="store_true",
                           help="log warnings and errors only")

    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", parents=[common],
                              help="one method on one function in one dimension")
    run.add_argument("--method", choices=settings.method_tokens)
    run.add_argument("--function", choices=list(settings.benchmarks))
    run.add_argument("--dimension", type=int)
    run.add_argument("--budget", type=int, help="counted evaluations per run")
    run.add_argument("--preset",
                     choices=list(settings.oracle_modes) + list(settings.oracle_presets),
                     help="oracle variant")

    for name, help_text in (("sweep", "methods x functions x dimensions"),
                            ("ecdf", "run-length ECDF per method")):
        command = commands.add_parser(name, parents=[common], help=help_text)
        command.add_argument("--method", type=token_list,
                             help="comma separated method tokens")
        command.add_argument("--function", type=token_list,
                             help="comma separated function names")
        command.add_argument("--dimension", type=int_list if name == "sweep" else int,
                             help="dimension(s)")
        command.add_argument("--budget", type=int,
                             help="counted evaluations per dimension")

    return parser


def collect_overrides(args: argparse.Namespace) -> Dict[str, Dict[str, Any]]:
    """
    The config overrides given on the command line
    """
    experiment: Dict[str, Any] = {}
    for key in ("seed", "runs", "workers"):
        if getattr(args, key) is not None:
            experiment[key] = getattr(args, key)
    if args.output is not None:
        experiment["output"] = str(args.output)

    oracle: Dict[str, Any] = {}
    if args.lam is not None:
        oracle["lambda"] = args.lam
    for key in ("f_min", "f_max", "cr_min", "cr_max"):
        if getattr(args, key) is not None:
            oracle[key] = getattr(args, key)
    # the ECDF experiment sets its own repeats, see below
    if args.repeats is not None and args.command != "ecdf":
        oracle["repeats"] = args.repeats

    overrides: Dict[str, Dict[str, Any]] = { "experiment": experiment,
                                             "oracle": oracle }
    if args.command == "run":
        for key in ("method", "function", "dimension", "budget"):
            if getattr(args, key) is not None:
                experiment[key] = getattr(args, key)
        if args.preset is not None:
            oracle["preset"] = args.preset
    else:
        section: Dict[str, Any] = {}
        for key, target in (("method", "methods"), ("function", "functions"),
                            ("dimension", "dimensions" if args.command == "sweep"
                                          else "dimension")):
            if getattr(args, key) is not None:
                section[target] = getattr(args, key)
        if args.budget is not None:
            if args.command == "sweep":
                experiment["budget_per_dimension"] = args.budget
            else:
                section["budget_per_dimension"] = args.budget
        if args.repeats is not None and args.command == "ecdf":
            section["gao_repeats"] = args.repeats
        overrides[args.command] = section
    return overrides


def configure_logging(args: argparse.Namespace) -> None:
    """
    Configure the root logger once from --verbose and --quiet
    """
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point. Returns the exit status: 0 on completion (whatever
    the success rates), 2 on configuration or output errors.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args)

    try:
        resources.check_settings()
        config = load_config(args.config, collect_overrides(args))
        if args.command == "run":
            run_experiment(config)
        elif args.command == "sweep":
            sweep(expand_sweep(config), resources.ensure_directory(
                config.output / "sweep"))
        else:
            ecdf_experiment(config)
    except (ConfigurationError, OSError) as error:
        logger.error("%s", error)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
