"""
wildcert - command line front end.

    python cli.py demo-anick
    python cli.py j2 "x + z*(x*z - z*y); y + (x*z - z*y)*z; z"
    python cli.py --json e2-decide "1 + u*v" "v^2" "0 - u^2" "1 - u*v"
    python cli.py certify --mode corollary2 "y; x; z"
    python cli.py --seed 7 --profile full selftest

Global flags (--json, --seed, --profile, --log-level) go before the command name.
Defaults come from WILDCERT_* environment variables or a .env file. Matrix entries
that start with "-" must be written as "0 - ..." so they are not read as options.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from algebra.errors import PreconditionError
from commands import COMMAND_DEFINITIONS, execute_command
from settings import PROFILES, load_settings

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser generated from COMMAND_DEFINITIONS."""
    parser = argparse.ArgumentParser(
        prog="wildcert",
        description="Exact Fox calculus, tame automorphisms and wildness certificates for F<x, y, z>.",
    )
    parser.add_argument("--json", action="store_true", help="Print machine-readable JSON")
    parser.add_argument("--seed", type=int, default=None, help="Seed for the property suites")
    parser.add_argument("--profile", choices=PROFILES, default=None, help="Self-test sizes")
    parser.add_argument("--log-level", default=None, help="Logging level (default WARNING)")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for definition in COMMAND_DEFINITIONS:
        sub = subparsers.add_parser(definition["name"], help=definition["description"],
                                    description=definition["description"])
        for name, param in definition["parameters"].items():
            help_text = param.get("description")
            if param["type"] == "flag":
                sub.add_argument(f"--{name.replace('_', '-')}", dest=name, action="store_true", help=help_text)
            elif param.get("positional"):
                if param["type"] == "list":
                    nargs = "*"
                else:
                    nargs = "?" if param.get("optional") else None
                sub.add_argument(name, nargs=nargs, help=help_text)
            else:
                sub.add_argument(f"--{name.replace('_', '-')}", dest=name, default=param.get("default"),
                                 choices=param.get("enum"), help=help_text)
    return parser


def command_arguments(args: argparse.Namespace, settings) -> Dict[str, Any]:
    """Keyword arguments for the selected command's handler."""
    definition = next(d for d in COMMAND_DEFINITIONS if d["name"] == args.command)
    values = {name: getattr(args, name) for name in definition["parameters"]}
    for key in definition.get("settings", []):
        values[key] = getattr(settings, key)
    return values


def render(result: Dict[str, Any], as_json: bool) -> str:
    if as_json:
        payload = {key: value for key, value in result.items() if key != "text"}
        return json.dumps(payload, indent=2, sort_keys=True)
    if result.get("success") or "text" in result:
        text = result.get("text", "")
        if result.get("error"):
            text = f"{text}\nerror: {result['error']}" if text else f"error: {result['error']}"
        return text
    return f"error: {result.get('error', 'unknown failure')}"


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = load_settings(seed=args.seed, profile=args.profile, log_level=args.log_level)
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    logging.basicConfig(level=getattr(logging, settings.log_level),
                        format="%(levelname)s %(name)s: %(message)s")
    logger.info("running %s", args.command)

    result = execute_command(args.command, command_arguments(args, settings))
    output = render(result, args.json)
    stream = sys.stdout if result.get("success") or args.json else sys.stderr
    if output:
        print(output, file=stream)
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
