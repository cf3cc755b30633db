"""Command-line front end: ``wirelab <command> ...``.

Exit status is 0 on success, 1 for usage problems (bad flags, unreadable
files) and 2 for domain errors such as counting on a decision-only network.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import measurement, oracle, render, storage, vm
from .constructors import BuildError, build, grow
from .model import BuilderKind, ElectricalConfig, network_stats

ALGORITHMS = {
    "standard": BuilderKind.STANDARD,
    "reduced": BuilderKind.REDUCED,
    "multiset-opt": BuilderKind.MULTISET_OPTIMIZED,
}
MODELS = ("decision", "count", "physical", "all")

DOMAIN_ERRORS = (
    BuildError, measurement.MeasurementError, oracle.OracleError,
    storage.NetworkFileError, vm.VMError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return out


def _env_float(name: str) -> float | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not a number") from None


def electrical_config(args) -> ElectricalConfig:
    voltage = args.voltage if args.voltage is not None else _env_float("WIRELAB_VOLTAGE")
    ru = args.unit_resistance if args.unit_resistance is not None else _env_float("WIRELAB_RU")
    try:
        return ElectricalConfig(
            voltage=1.0 if voltage is None else voltage,
            unit_resistance=1.0 if ru is None else ru,
            detection_threshold=args.threshold,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.write(data.decode("utf-8"))
        return
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load_net(path: str):
    return storage.load(_read(path))


def cmd_build(args) -> None:
    net = build(ALGORITHMS[args.algorithm], args.input, size_limit=args.size_limit)
    data = storage.save(net)
    if args.out is None:
        _write(None, data)
        return
    _write(args.out, data)
    stats = network_stats(net)
    _emit(args, {"out": args.out, "kind": net.kind.value, **stats._asdict()},
          f"wrote {net.kind.value} network ({stats.wire_count} wires) to {args.out}")


def query_payload(net, q: int, model: str, cfg: ElectricalConfig) -> dict:
    """The per-target record printed by ``query``; shared with tests."""
    if model == "count" and not net.counting_supported:
        raise measurement.MeasurementError(
            "counting unsupported on a decision-only (multiset-optimized) network")
    if model == "all":
        return measurement.query(net, q, cfg).to_dict()
    out: dict = {"query": q}
    if model == "decision":
        out["decision"] = measurement.decide(net, q)
    elif model == "count":
        out["exact_count"] = measurement.exact_count(net, q)
        out["decision"] = out["exact_count"] > 0
    else:
        currents = measurement.physical_measure(net, q, cfg)
        detected = [m for m in currents if m > cfg.detection_threshold]
        out["currents"] = currents
        out["decision"] = bool(detected)
        out["estimated_count"] = (sum(measurement.estimate_count(q, m, cfg) for m in detected)
                                  if detected else None)
    return out


def _format_result(res: dict) -> str:
    parts = [f"q={res['query']}"]
    for key in ("decision", "exact_count", "currents", "estimated_count"):
        if key not in res:
            continue
        value = res[key]
        if key == "decision":
            value = "true" if value else "false"
        elif key == "currents":
            value = "[" + ", ".join(f"{m:.9g}" for m in value) + "]"
        elif key == "estimated_count" and value is not None:
            value = f"{value:.9g}"
        parts.append(f"{key}={value}")
    return " ".join(parts)


def cmd_query(args) -> None:
    net = _load_net(args.net)
    cfg = electrical_config(args)
    results = [query_payload(net, q, args.model, cfg) for q in args.target]
    _emit(args, {"kind": net.kind.value, "plan": list(net.plan), "results": results},
          "\n".join(_format_result(r) for r in results))


def cmd_grow(args) -> None:
    net = grow(_load_net(args.net), args.element)
    _write(args.out, storage.save(net))
    if args.out not in (None, "-"):
        _emit(args, {"out": args.out, "wire_count": len(net.wires), "input": list(net.input)},
              f"grew network to {len(net.wires)} wires; wrote {args.out}")


def cmd_oracle(args) -> None:
    values = args.input
    payload: dict = {
        "input": values,
        "target": args.target,
        "decision": oracle.decide_subset_sum(values, args.target),
    }
    lines = [f"decision={'true' if payload['decision'] else 'false'}"]
    if len(values) <= oracle.ENUMERATION_LIMIT:
        payload["count"] = oracle.count_subsets(values, args.target)
        lines.append(f"count={payload['count']}")
    if args.witnesses:
        witnesses = oracle.subsets_summing_to(values, args.target)
        payload["witnesses"] = [w.sorted_indices() for w in witnesses]
        for w in witnesses:
            idx = w.sorted_indices()
            lines.append("  {" + ", ".join(f"{values[i]}@{i}" for i in idx) + "}")
    _emit(args, payload, "\n".join(lines))


def cmd_export(args) -> None:
    data = render.export_diagram(_load_net(args.net), args.format)
    _write(args.out, data)


def cmd_stats(args) -> None:
    net = _load_net(args.net)
    stats = network_stats(net)
    payload = {"kind": net.kind.value, "input": list(net.input), "plan": list(net.plan),
               "counting_supported": net.counting_supported, **stats._asdict()}
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, payload, text)


def cmd_compile(args) -> None:
    prog = vm.compile_network(_load_net(args.net))
    _write(args.out, prog.to_text().encode("utf-8"))


def cmd_run(args) -> None:
    prog = vm.parse_program(_read(args.program).decode("utf-8"))
    _write(args.out, storage.save(vm.execute(prog)))


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")

    p = _Parser(prog="wirelab", description="Build and query subset-sum wire networks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("build", parents=[common], help="build a network from an input multiset")
    s.add_argument("--input", type=_int_list, required=True, help="e.g. 5,2,1,3,4")
    s.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="standard")
    s.add_argument("--out", help="network file to write (default: stdout)")
    s.add_argument("--size-limit", type=int, default=24)
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("query", parents=[common], help="query a network for one or more targets")
    s.add_argument("--net", required=True)
    s.add_argument("--target", type=_int_list, required=True, help="target, or comma-separated targets")
    s.add_argument("--model", choices=MODELS, default="all")
    s.add_argument("--voltage", type=float, help="source voltage in volts (env WIRELAB_VOLTAGE)")
    s.add_argument("--unit-resistance", type=float, help="ohms per unit length (env WIRELAB_RU)")
    s.add_argument("--threshold", type=float, default=1e-9, help="detection threshold in amps")
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("grow", parents=[common], help="add an element to an existing network")
    s.add_argument("--net", required=True)
    s.add_argument("--element", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_grow)

    s = sub.add_parser("oracle", parents=[common], help="brute-force subset-sum reference")
    s.add_argument("--input", type=_int_list, required=True)
    s.add_argument("--target", type=int, required=True)
    s.add_argument("--witnesses", action="store_true", help="list every solution subset")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("export", parents=[common], help="draw a network as SVG or DOT")
    s.add_argument("--net", required=True)
    s.add_argument("--format", choices=render.FORMATS, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("stats", parents=[common], help="summarize a network file")
    s.add_argument("--net", required=True)
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("compile", parents=[common], help="emit the RWM build program for a network")
    s.add_argument("--net", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("run", parents=[common], help="execute an RWM program into a network file")
    s.add_argument("--program", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_run)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "query" and any(q < 1 for q in args.target):
            parser.error("--target values must be >= 1")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        args.func(args)
    except UsageError as exc:
        print(f"wirelab: error: {exc}", file=sys.stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        print(f"wirelab: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
