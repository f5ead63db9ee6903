"""Command-line interface; a thin client over the shared service handlers.

Exit codes: 0 success, 1 validation errors in the input, 2 usage error,
3 internal error. With --format json, stdout is exactly the JSON payload the
HTTP API would return for the equivalent request.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import SchemaError, TokenlabError
from .service import (
    RequestError,
    ValidationFailed,
    configure_logging,
    handle_compare,
    handle_matrix,
    handle_metrics,
    handle_presets,
    handle_recommend,
    handle_simulate,
    handle_validate,
)
from .voting import PROPERTIES

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise RequestError(f"no such file: {path}")
    return p.read_text(encoding="utf-8")


def _emit(payload: dict, fmt: str, renderer=None):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(renderer(payload) if renderer else json.dumps(payload, sort_keys=True, indent=2))


def _render_validate(payload: dict) -> str:
    lines = [f"{payload['name']}: {'valid' if payload['valid'] else 'INVALID'}"]
    for finding in payload["findings"]:
        lines.append(
            f"  [{finding['severity']}] {finding['rule']} at {finding['path']}: "
            f"{finding['message']}"
        )
    if not payload["findings"]:
        lines.append("  no findings")
    return "\n".join(lines)


def _render_metrics(payload: dict) -> str:
    lines = [
        f"holders:  {payload['holder_count']}",
        f"total:    {payload['total_weight']}",
        f"gini:     {payload['gini']}",
        f"nakamoto: {payload['nakamoto']}",
        "top-k cumulative shares:",
    ]
    for row in payload["top_k_shares"]:
        lines.append(f"  top {row['k']:>4}: {row['share']}")
    return "\n".join(lines)


def _render_summary(payload: dict) -> str:
    summary = payload["summary"]["summary"]
    lines = [
        f"scenario: {payload['summary']['scenario']} on spec {payload['summary']['spec']}",
        f"epochs:   {payload['summary']['epochs']} (seed {payload['summary']['seed']})",
        f"voting nakamoto: min {summary['min_nakamoto_voting']} "
        f"max {summary['max_nakamoto_voting']}",
        f"max drawdown:    {summary['max_drawdown']}",
        f"capture:         {summary['capture']}"
        + (f" (epochs {summary['capture_epochs'][:5]}...)" if summary["capture"] else ""),
        f"proposals:       {summary['proposals_passed']} passed, "
        f"{summary['proposals_failed']} failed",
    ]
    events = payload["summary"]["events"]
    if events:
        lines.append(f"events ({len(events)}):")
        lines.extend(f"  {e}" for e in events[:20])
        if len(events) > 20:
            lines.append(f"  ... {len(events) - 20} more")
    return "\n".join(lines)


def _render_recommend(payload: dict) -> str:
    if payload["no_candidate"]:
        return "no mechanism satisfies the requirements"
    lines = ["ranked candidates:"]
    lines.extend(f"  {i + 1}. {fam}" for i, fam in enumerate(payload["candidates"]))
    return "\n".join(lines)


def _render_matrix(payload: dict) -> str:
    properties = payload["properties"]
    width = max(len(p) for p in properties)
    header = "family".ljust(22) + "  ".join(p[:12].ljust(12) for p in properties)
    lines = [header]
    for family, row in payload["families"].items():
        cells = "  ".join(str(row[p]["score"]).ljust(12) for p in properties)
        lines.append(family.ljust(22) + cells)
    lines.append("(0 = weak, 1 = partial, 2 = strong)")
    return "\n".join(lines)


def _cmd_validate(args) -> int:
    try:
        payload = handle_validate(_read(args.spec))
    except ValidationFailed as exc:
        _emit(exc.payload, args.format, _render_validate)
        return EXIT_INVALID
    _emit(payload, args.format, _render_validate)
    return EXIT_OK


def _cmd_metrics(args) -> int:
    payload = handle_metrics(
        csv_text=_read(args.snapshot), top_k=args.top_k, precision=args.precision
    )
    _emit(payload, args.format, _render_metrics)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if (args.scenario is None) == (args.preset is None):
        raise RequestError("provide exactly one of a scenario file or --preset")
    scenario_doc = _read(args.scenario) if args.scenario else None
    spec_doc = None
    if args.spec:
        spec_doc = args.spec if Path(args.spec).suffix == "" else _read(args.spec)
    try:
        payload = handle_simulate(
            scenario=scenario_doc,
            preset_name=args.preset,
            spec=spec_doc,
            epochs=args.epochs,
            seed=args.seed,
            include_distributions=args.full,
        )
    except ValidationFailed as exc:
        _emit(exc.payload, args.format, _render_validate)
        return EXIT_INVALID
    if args.out:
        Path(args.out).write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
    if args.csv:
        Path(args.csv).write_text(_csv_from_payload(payload), encoding="utf-8")
    _emit(payload, args.format, _render_summary)
    return EXIT_OK


def _csv_from_payload(payload: dict) -> str:
    import csv as csv_mod
    import io

    buf = io.StringIO()
    writer = csv_mod.writer(buf, lineterminator="\n")
    writer.writerow(
        ["epoch", "circulating", "staked", "vesting_locked", "price",
         "gini_balances", "nakamoto_balances", "gini_voting", "nakamoto_voting",
         "capture", "tracked_share"]
    )
    for record in payload["report"]["records"]:
        writer.writerow(
            [
                record["epoch"],
                record["supply"]["circulating"],
                record["supply"]["staked"],
                record["supply"]["vesting_locked"],
                record["price"],
                record["balance_metrics"]["gini"],
                record["balance_metrics"]["nakamoto"],
                record["voting_metrics"]["gini"],
                record["voting_metrics"]["nakamoto"],
                int(record["capture"]),
                record.get("tracked_share", ""),
            ]
        )
    return buf.getvalue()


def _cmd_compare(args) -> int:
    payload = handle_compare(_read(args.spec_a), _read(args.spec_b))
    if args.format == "json":
        _emit(payload, "json")
    else:
        print(payload["text"])
    return EXIT_OK


def _parse_require(pairs) -> dict:
    require = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise RequestError(f"--require takes prop=level, got {pair!r}")
        prop, _, level = pair.partition("=")
        if prop not in PROPERTIES:
            raise RequestError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
        try:
            require[prop] = int(level)
        except ValueError:
            raise RequestError(f"level must be an integer 0..2, got {level!r}") from None
    return require


def _cmd_recommend(args) -> int:
    prefer = [p for chunk in (args.prefer or []) for p in chunk.split(",") if p]
    for prop in prefer:
        if prop not in PROPERTIES:
            raise RequestError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
    payload = handle_recommend(_parse_require(args.require), prefer)
    _emit(payload, args.format, _render_recommend)
    return EXIT_OK


def _cmd_matrix(args) -> int:
    _emit(handle_matrix(), args.format, _render_matrix)
    return EXIT_OK


def _cmd_presets(args) -> int:
    payload = handle_presets()
    if args.format == "json":
        _emit(payload, "json")
    else:
        for row in payload["presets"]:
            print(f"{row['name']:20s} {row['description']}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import serve

    serve(bind=args.bind, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tokenlab",
        description="Design, validate, measure, and stress-test token economies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="parse and validate an economy spec document")
    p.add_argument("spec", help="path to a spec document (YAML/JSON)")
    add_format(p)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("metrics", help="concentration metrics over a holder snapshot CSV")
    p.add_argument("snapshot", help="CSV with header entity,weight[,lock_end]")
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--precision", type=int, default=6)
    add_format(p)
    p.set_defaults(fn=_cmd_metrics)

    p = sub.add_parser("simulate", help="run a scenario file or a named preset")
    p.add_argument("scenario", nargs="?", help="path to a scenario document")
    p.add_argument("--preset", choices=("capture", "sell_off_cascade", "sybil", "unlock_cliff"))
    p.add_argument("--spec", help="fixture name or spec file overriding the scenario's spec")
    p.add_argument("--epochs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="write the full JSON payload to this file")
    p.add_argument("--csv", help="write per-epoch metrics CSV to this file")
    p.add_argument("--full", action="store_true",
                   help="include per-epoch holder distributions in the report")
    add_format(p)
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("compare", help="side-by-side comparison of two spec documents")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    add_format(p)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("recommend", help="rank voting mechanisms against requirements")
    p.add_argument("--require", nargs="*", metavar="PROP=LEVEL")
    p.add_argument("--prefer", nargs="*", metavar="PROP[,PROP...]")
    add_format(p)
    p.set_defaults(fn=_cmd_recommend)

    p = sub.add_parser("matrix", help="show the mechanism/property score matrix")
    add_format(p)
    p.set_defaults(fn=_cmd_matrix)

    p = sub.add_parser("presets", help="list canned adversarial scenarios")
    add_format(p)
    p.set_defaults(fn=_cmd_presets)

    p = sub.add_parser("serve", help="run the local HTTP API")
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8707)
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv=None) -> int:
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (RequestError, SchemaError) as exc:
        if isinstance(exc, SchemaError):
            print("document is not schema-valid:", file=sys.stderr)
            for issue in exc.issues:
                print(f"  {issue}", file=sys.stderr)
            return EXIT_INVALID
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TokenlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # pragma: no cover - unexpected
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
