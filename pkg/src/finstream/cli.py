"""Command-line front end: build, check, query, combine, export.

Exit codes: 0 success, 1 a requested check failed, 2 input or validation
error. Reports are single JSON documents on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import models
from .category import (
    DiagramArrow,
    StreamDiagram,
    StreamMap,
    colimit,
    limit,
    product_stream,
    quotient_stream,
    substream,
)
from .circulation import (
    Stream,
    chain_witness,
    check_connected_intervals,
    cosheafify,
    is_circulation,
    join_circulations,
    preorder_on_open,
    pullback,
    pushforward,
)
from .errors import FormatError, StreamError
from .formats import (
    STREAM_FORMAT,
    canonical_dumps,
    load,
    parse_space,
    parse_stream,
    serialize_stream,
    stream_to_dot,
)

BUILDERS = {
    "directed_interval": lambda args: models.directed_interval(int(args["n"])),
    "directed_circle": lambda args: models.directed_circle(int(args["n"])),
    "directed_square": lambda args: models.directed_square(
        int(args["n"]), int(args["m"])
    ),
    "boundary_square": lambda args: models.boundary_square(int(args["n"])),
    "point": lambda args: models.point_stream(args.get("name", "pt")),
    "empty": lambda args: models.empty_stream(),
}


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _load_stream(path: str) -> Stream:
    value = load(path)
    if not isinstance(value, Stream):
        raise FormatError(f"{path}: expected a stream file")
    return value


def _build_from_spec(obj: dict) -> Stream:
    if "builder" in obj:
        name = obj["builder"]
        if name not in BUILDERS:
            raise FormatError(f"unknown builder {name!r}")
        return BUILDERS[name](obj.get("args", {}))
    if "atlas" in obj:
        atlas = obj["atlas"]
        space = parse_space(atlas["space"])
        charts = []
        for chart in atlas.get("charts", []):
            members = chart["points"]
            pairs = [tuple(pair) for pair in chart["order"]]
            from .relations import Preorder

            charts.append((members, Preorder.build(members, pairs)))
        return models.stream_from_atlas(space, charts)
    if "gen" in obj:
        return parse_stream({**obj, "format": STREAM_FORMAT}, strict=False)
    raise FormatError("spec needs a 'builder', 'atlas', or explicit 'gen' block")


def cmd_build(args) -> int:
    with open(args.input, "r", encoding="utf-8") as handle:
        try:
            spec = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(
                f"{args.input}: line {exc.lineno} column {exc.colno}: {exc.msg}"
            )
    stream = _build_from_spec(spec)
    _write_output(canonical_dumps(serialize_stream(stream)), args.output)
    return 0


def _check_stream(stream: Stream, which: str, mode: str) -> list[dict]:
    checks = []
    if which in ("all", "circulation"):
        result = is_circulation(stream.circ.as_precirculation(), mode=mode)
        checks.append(
            {
                "check": "circulation",
                "ok": result.ok,
                "witness": None
                if result.witness is None
                else {
                    "collection": [list(o) for o in result.witness.collection],
                    "pair": [result.witness.x, result.witness.y],
                },
            }
        )
    if which in ("all", "intervals"):
        ok, pair = check_connected_intervals(stream)
        checks.append(
            {
                "check": "intervals",
                "ok": ok,
                "witness": None if pair is None else list(pair),
            }
        )
    if which in ("all", "antisymmetry"):
        anti = stream.underlying().is_antisymmetric()
        checks.append({"check": "antisymmetry", "ok": anti, "witness": None})
    return checks


def cmd_check(args) -> int:
    value = load(args.input)
    if isinstance(value, Stream):
        checks = _check_stream(value, args.which, args.mode)
    else:
        from .circulation import Precirculation

        if not isinstance(value, Precirculation):
            raise FormatError(f"{args.input}: expected a stream or precirculation")
        if args.which not in ("all", "circulation"):
            raise FormatError("precirculation files only support the circulation check")
        result = is_circulation(value, mode=args.mode)
        checks = [
            {
                "check": "circulation",
                "ok": result.ok,
                "witness": None
                if result.witness is None
                else {
                    "collection": [list(o) for o in result.witness.collection],
                    "pair": [result.witness.x, result.witness.y],
                },
            }
        ]
    ok = all(c["ok"] for c in checks)
    report = {"input": args.input, "ok": ok, "checks": checks}
    _write_output(canonical_dumps(report), args.output)
    return 0 if ok else 1


def cmd_query(args) -> int:
    stream = _load_stream(args.input)
    if args.open == "global":
        members = sorted(stream.space.points)
    else:
        members = [p for p in args.open.split(",") if p]
    for point in (args.x, args.y):
        stream.space.index(point)  # UnknownPoint on junk names
    value = preorder_on_open(stream, members)
    related = args.x in value and args.y in value and value.has(args.x, args.y)
    report: dict = {
        "open": sorted(members),
        "x": args.x,
        "y": args.y,
        "related": related,
    }
    if related and args.witness:
        steps = chain_witness(stream, members, args.x, args.y)
        capped = steps[:100]
        report["witness"] = [
            {"from": a, "via_star_of": z, "to": b} for a, z, b in capped
        ]
        if len(steps) > 100:
            report["witness_truncated"] = True
    _write_output(canonical_dumps(report), args.output)
    return 0 if related else 1


def _parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad {what}: {exc.msg}")


def _load_diagram(path: str) -> StreamDiagram:
    with open(path, "r", encoding="utf-8") as handle:
        obj = json.load(handle)
    objects = {
        key: parse_stream(value, strict=False)
        for key, value in obj.get("objects", {}).items()
    }
    arrows = {
        name: DiagramArrow(a["source"], a["target"], a["map"])
        for name, a in obj.get("arrows", {}).items()
    }
    return StreamDiagram(objects, arrows)


def _load_space(path: str):
    from .spaces import FiniteSpace

    value = load(path)
    if isinstance(value, Stream):
        return value.space
    if isinstance(value, FiniteSpace):
        return value
    raise FormatError(f"{path}: expected a space or stream file")


def _need_inputs(args, count: int) -> None:
    if len(args.input) < count:
        raise FormatError(f"{args.operation} needs at least {count} --input file(s)")


def cmd_combine(args) -> int:
    op = args.operation
    spot: list[str] = []
    if op == "product":
        _need_inputs(args, 2)
        left, right = (_load_stream(p) for p in args.input[:2])
        stream, first, second = product_stream(left, right)
        spot = ["projections are stream maps"]
        if args.check_universal:
            for x in left.space.points:
                for y in right.space.points:
                    from .relations import tuple_point

                    name = tuple_point(x, y)
                    assert first.mapping[name] == x and second.mapping[name] == y
            spot.append("point pairings agree with the projections")
    elif op == "quotient":
        _need_inputs(args, 1)
        stream_in = _load_stream(args.input[0])
        if args.partition is None:
            raise FormatError("quotient needs --partition")
        partition = _parse_json_arg(args.partition, "--partition")
        stream, projection = quotient_stream(stream_in, partition)
        spot = ["projection is a stream map"]
    elif op == "substream":
        _need_inputs(args, 1)
        stream_in = _load_stream(args.input[0])
        if args.points is None:
            raise FormatError("substream needs --points")
        points = _parse_json_arg(args.points, "--points")
        stream, inclusion = substream(stream_in, points)
        spot = ["inclusion is a stream map"]
    elif op == "join":
        _need_inputs(args, 1)
        streams = [_load_stream(p) for p in args.input]
        circ = join_circulations([s.circ for s in streams])
        stream = Stream(streams[0].space, circ)
        spot = ["result satisfies the gluing condition"]
    elif op == "pushforward":
        _need_inputs(args, 1)
        if args.space is None or args.map is None:
            raise FormatError("pushforward needs --space and --map")
        stream_in = _load_stream(args.input[0])
        target = _load_space(args.space)
        mapping = _parse_json_arg(args.map, "--map")
        circ = pushforward(stream_in, mapping, target)
        stream = Stream(target, circ)
        StreamMap(stream_in, stream, mapping)
        spot = ["map is a stream map into the result"]
    elif op == "pullback-cosheafify":
        _need_inputs(args, 1)
        if args.space is None or args.map is None:
            raise FormatError("pullback-cosheafify needs --space and --map")
        stream_in = _load_stream(args.input[0])
        source_space = _load_space(args.space)
        mapping = _parse_json_arg(args.map, "--map")
        circ = cosheafify(pullback(stream_in, mapping, source_space))
        stream = Stream(source_space, circ)
        StreamMap(stream, stream_in, mapping)
        spot = ["map is a stream map out of the result"]
    elif op in ("limit", "colimit"):
        if args.diagram is None:
            raise FormatError(f"{op} needs --diagram")
        diagram = _load_diagram(args.diagram)
        stream, legs = (limit if op == "limit" else colimit)(diagram)
        spot = [f"{len(legs)} legs are stream maps"]
    else:
        raise FormatError(f"unknown operation {op!r}")
    if args.check_universal:
        result = is_circulation(stream.circ.as_precirculation())
        if not result.ok:
            raise AssertionError("combined circulation fails the gluing condition")
        spot.append("result satisfies the gluing condition")
        sys.stderr.write(
            canonical_dumps({"universal_spot_checks": "passed", "details": spot})
        )
    _write_output(canonical_dumps(serialize_stream(stream)), args.output)
    return 0


def cmd_export(args) -> int:
    stream = _load_stream(args.input)
    if args.fmt == "json":
        _write_output(canonical_dumps(serialize_stream(stream)), args.output)
    elif args.fmt == "dot":
        _write_output(stream_to_dot(stream), args.output)
    else:
        raise FormatError(f"unknown format {args.fmt!r}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finstream",
        description="Build, combine, and verify finite streams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="input file")
    common.add_argument("--output", default=None, help="output file (default stdout)")
    common.add_argument("--mode", choices=["fast", "exhaustive"], default="fast")
    common.add_argument("--witness", action="store_true", help="include witnesses")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    p_build = sub.add_parser("build", parents=[common], help="build a stream from a spec file")
    p_build.set_defaults(fn=cmd_build)

    p_check = sub.add_parser("check", parents=[common], help="run checks on a stream file")
    p_check.add_argument(
        "--which",
        choices=["all", "circulation", "intervals", "antisymmetry"],
        default="all",
    )
    p_check.set_defaults(fn=cmd_check)

    p_query = sub.add_parser("query", parents=[common], help="query one open's order")
    p_query.add_argument("--open", required=True, help='comma-joined points or "global"')
    p_query.add_argument("x")
    p_query.add_argument("y")
    p_query.set_defaults(fn=cmd_query)

    p_combine = sub.add_parser("combine", help="combine stream files")
    p_combine.add_argument(
        "operation",
        choices=[
            "product",
            "quotient",
            "substream",
            "join",
            "pushforward",
            "pullback-cosheafify",
            "limit",
            "colimit",
        ],
    )
    p_combine.add_argument("--input", action="append", default=[], help="input stream file")
    p_combine.add_argument("--output", default=None)
    p_combine.add_argument("--mode", choices=["fast", "exhaustive"], default="fast")
    p_combine.add_argument("--witness", action="store_true")
    p_combine.add_argument("--seed", type=int, default=0)
    p_combine.add_argument("--partition", help="JSON list of classes")
    p_combine.add_argument("--points", help="JSON list of points")
    p_combine.add_argument("--map", help="JSON object mapping points to points")
    p_combine.add_argument("--space", help="space or stream file for map endpoints")
    p_combine.add_argument("--diagram", help="diagram file for limit/colimit")
    p_combine.add_argument("--check-universal", action="store_true")
    p_combine.set_defaults(fn=cmd_combine)

    p_export = sub.add_parser("export", parents=[common], help="export a stream file")
    p_export.add_argument("--fmt", choices=["json", "dot"], default="json")
    p_export.set_defaults(fn=cmd_export)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except StreamError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
