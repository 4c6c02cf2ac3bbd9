"""Command line front end.

Exit codes: 0 success, 1 internal invariant failure, 2 bad input (with a JSON
diagnostic on stderr), 3 a size bound was exceeded.
"""

import argparse
import json
import sys
from pathlib import Path

from .catalog import catalog, catalog_list
from .errors import BoundError, GroupRingError, InputError, InvariantError, OrderBoundExceeded
from .groups import build_from_permutations, build_from_table
from .report import SECTIONS, build_report, render_text, to_json_text

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3

_COMMAND_SECTIONS = {
    "analyze": SECTIONS,
    "idempotents": ("idempotents",),
    "wedderburn": ("wedderburn",),
    "units": ("units",),
    "central": ("central",),
    "predicates": ("predicates",),
}


def load_group_file(path, max_order):
    """Read a group from JSON: {"table": [[...]], "labels": [...], "name": ...} or
    {"permutations": {"degree": n, "generators": [[cycle, ...], ...]}}."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("group input must be a JSON object")
    name = data.get("name")
    if "table" in data:
        table = data["table"]
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise InputError("'table' must be a list of rows")
        if len(table) > max_order:
            raise OrderBoundExceeded(f"table of order {len(table)} > {max_order}")
        return build_from_table(len(table), table, data.get("labels"), name)
    if "permutations" in data:
        perms = data["permutations"]
        try:
            degree, gens = int(perms["degree"]), perms["generators"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("'permutations' needs 'degree' and 'generators'") from exc
        return build_from_permutations(degree, gens, max_order=max_order, name=name)
    raise InputError("group input needs a 'table' or a 'permutations' entry")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="groupring",
        description="Wedderburn components, units and structural predicates for integral group rings.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(_COMMAND_SECTIONS) + ["catalog-list"]:
        p = sub.add_parser(name)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        if name == "catalog-list":
            continue
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--group", help="catalog name, e.g. D8, Q8xC2, P16")
        src.add_argument("--input", help="path to a JSON group description")
        p.add_argument("--max-order", type=int, default=64,
                       help="largest group order accepted (default 64)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized cross-checks")
        p.add_argument("--timings", action="store_true",
                       help="include per-section timings (makes output nondeterministic)")
    return parser


def _diagnostic(exc, code):
    payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def _write(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog-list":
            listing = catalog_list()
            if args.format == "json":
                text = json.dumps(listing, indent=2, sort_keys=True) + "\n"
            else:
                text = "\n".join(listing["grammar"] + [""] + listing["corpus"]) + "\n"
            _write(text, args.out)
            return EXIT_OK
        if args.group:
            G = catalog(args.group, max_order=args.max_order)
            echo = {"group": args.group}
        else:
            G = load_group_file(args.input, args.max_order)
            echo = {"input": str(args.input)}
        echo.update({"seed": args.seed, "max_order": args.max_order, "command": args.command})
        report = build_report(G, _COMMAND_SECTIONS[args.command], seed=args.seed,
                              bound=args.max_order, input_echo=echo, timings=args.timings)
        text = to_json_text(report) if args.format == "json" else render_text(report)
        _write(text, args.out)
        return EXIT_OK
    except InputError as exc:
        return _diagnostic(exc, EXIT_INPUT)
    except BoundError as exc:
        return _diagnostic(exc, EXIT_BOUND)
    except (InvariantError, GroupRingError) as exc:
        return _diagnostic(exc, EXIT_INVARIANT)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
