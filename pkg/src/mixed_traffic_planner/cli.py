"""
Command-line interface for the application.

This module provides the main entry point for the CLI.

Exit codes:
    0  success
    2  invalid input (config, model/plan/records files, interactive answers)
    3  no feasible plan
    4  any other planner error at runtime
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from pydantic import ValidationError

from mixed_traffic_planner import __version__
from mixed_traffic_planner.config import get_settings
from mixed_traffic_planner.errors import ConfigError, Infeasible, InvalidAnswer, PlannerError
from mixed_traffic_planner.flows.experiment import experiment_flow
from mixed_traffic_planner.flows.learn import learn_flow
from mixed_traffic_planner.flows.plan import plan_flow
from mixed_traffic_planner.flows.simulate import simulate_flow

if TYPE_CHECKING:
    from collections.abc import Callable

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_RUNTIME = 4


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, required=True, help="Experiment config (JSON or YAML)")
    parser.add_argument("--seed", type=int, default=None, help="Override seeds.base from the config")
    parser.add_argument("--out", type=Path, default=None, help="Output directory")


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser for the CLI."""
    parser = argparse.ArgumentParser(
        prog="mixed-traffic-planner",
        description="Learn service-user preferences and plan latencies and prices on mixed-autonomy roads",
    )
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        help="Enable debug mode",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    learn_parser = subparsers.add_parser("learn", help="Learn the preference population")
    _add_common(learn_parser)
    source = learn_parser.add_mutually_exclusive_group()
    source.add_argument("--interactive", action="store_true", help="Answer queries on the terminal")
    source.add_argument("--records", type=Path, default=None, help="Learn from an observations file")
    learn_parser.add_argument(
        "--users", type=int, default=1, help="Interactive respondents (default: 1)"
    )

    plan_parser = subparsers.add_parser("plan", help="Optimize latencies and prices")
    _add_common(plan_parser)
    model = plan_parser.add_mutually_exclusive_group()
    model.add_argument(
        "--model", type=Path, default=None, help="Population file (default: <out>/population.json)"
    )
    model.add_argument("--truth", action="store_true", help="Plan with the ground-truth population")

    simulate_parser = subparsers.add_parser("simulate", help="Simulate users riding on a plan")
    _add_common(simulate_parser)
    simulate_parser.add_argument(
        "--plan", type=Path, default=None, help="Plan file (default: <out>/plan.json)"
    )

    experiment_parser = subparsers.add_parser("experiment", help="Run the full experiment")
    _add_common(experiment_parser)

    subparsers.add_parser("info", help="Show application info")

    return parser


def _guarded(action: Callable[[], object]) -> int:
    """Run a command, mapping expected failures to exit codes."""
    try:
        action()
    except (ConfigError, InvalidAnswer) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Infeasible as e:
        print(f"Infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except PlannerError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except (OSError, ValidationError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_learn(args: argparse.Namespace) -> int:
    """Handle the 'learn' command."""
    if args.users < 1:
        print("Error: --users must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    return _guarded(
        lambda: learn_flow(
            args.config,
            seed=args.seed,
            out=args.out,
            records=args.records,
            interactive=args.interactive,
            users=args.users,
        )
    )


def cmd_plan(args: argparse.Namespace) -> int:
    """Handle the 'plan' command."""
    return _guarded(
        lambda: plan_flow(
            args.config, seed=args.seed, out=args.out, model_path=args.model, use_truth=args.truth
        )
    )


def cmd_simulate(args: argparse.Namespace) -> int:
    """Handle the 'simulate' command."""
    return _guarded(lambda: simulate_flow(args.config, seed=args.seed, out=args.out, plan_path=args.plan))


def cmd_experiment(args: argparse.Namespace) -> int:
    """Handle the 'experiment' command."""
    return _guarded(lambda: experiment_flow(args.config, seed=args.seed, out=args.out))


def cmd_info(_args: argparse.Namespace) -> int:
    """Handle the 'info' command."""
    settings = get_settings()
    print(f"Application: {settings.app_name}")
    print(f"Version: {__version__}")
    print(f"Environment: {settings.app_env}")
    print(f"Debug: {settings.debug}")
    return 0


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI."""
    parser = create_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return 0

    if args.debug:
        print(f"Debug mode enabled. Settings: {get_settings()}")

    commands = {
        "learn": cmd_learn,
        "plan": cmd_plan,
        "simulate": cmd_simulate,
        "experiment": cmd_experiment,
        "info": cmd_info,
    }

    handler = commands.get(args.command)
    if handler:
        return handler(args)
    else:
        parser.print_help()
        return 1


if __name__ == "__main__":
    sys.exit(main())
