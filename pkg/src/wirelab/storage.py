"""JSON network files.

Layout (``schema_version`` 1)::

    {
      "schema_version": 1,
      "input": [5, 2, 1],
      "kind": "standard",
      "plan": [0],
      "wires": [{"id": 0, "element_index": 0, "length": 5,
                 "start_row": 0, "end_row": 5, "parent": {"root": 0}}, ...],
      "render": {"slots": [0, 1, ...]},
      "program": "RWM 1\\n..."
    }

``parent`` is ``{"root": row}`` or the integer id of an earlier wire.
``render`` and ``program`` are informational and ignored on load.
"""

from __future__ import annotations

import json

from .model import BuilderKind, Root, Wire, WireNetwork, validate_network
from .vm import compile_network

SCHEMA_VERSION = 1


class NetworkFileError(ValueError):
    pass


def to_dict(net: WireNetwork, *, include_program: bool = True) -> dict:
    wires = []
    for w in net.wires:
        parent = {"root": w.parent.row} if isinstance(w.parent, Root) else w.parent
        wires.append({
            "id": w.id,
            "element_index": w.element_index,
            "length": w.length,
            "start_row": w.start_row,
            "end_row": w.end_row,
            "parent": parent,
        })
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": list(net.input),
        "kind": net.kind.value,
        "plan": list(net.plan),
        "wires": wires,
        "render": {"slots": list(range(len(net.wires)))},
    }
    if include_program:
        doc["program"] = compile_network(net).to_text()
    return doc


def save(net: WireNetwork, *, include_program: bool = True) -> bytes:
    problems = validate_network(net)
    if problems:
        raise NetworkFileError("refusing to save invalid network: " + "; ".join(map(str, problems)))
    text = json.dumps(to_dict(net, include_program=include_program), sort_keys=True, indent=1)
    return (text + "\n").encode("utf-8")


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise NetworkFileError(f"{what} must be an integer, got {value!r}")
    return value


def from_dict(doc: dict) -> WireNetwork:
    if not isinstance(doc, dict):
        raise NetworkFileError("network file must hold a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise NetworkFileError(f"unknown schema_version {version!r} (supported: {SCHEMA_VERSION})")
    try:
        kind = BuilderKind.parse(doc["kind"])
        values = tuple(_int(v, "input element") for v in doc["input"])
        plan = tuple(_int(v, "plan row") for v in doc["plan"])
        wires = []
        for i, raw in enumerate(doc["wires"]):
            parent = raw["parent"]
            if isinstance(parent, dict):
                parent = Root(_int(parent["root"], f"wires[{i}].parent.root"))
            else:
                parent = _int(parent, f"wires[{i}].parent")
            wires.append(Wire(
                _int(raw["id"], f"wires[{i}].id"),
                _int(raw["element_index"], f"wires[{i}].element_index"),
                _int(raw["length"], f"wires[{i}].length"),
                _int(raw["start_row"], f"wires[{i}].start_row"),
                _int(raw["end_row"], f"wires[{i}].end_row"),
                parent,
            ))
    except KeyError as exc:
        raise NetworkFileError(f"missing field {exc}") from None
    except (TypeError, AttributeError) as exc:
        raise NetworkFileError(f"malformed network file: {exc}") from None
    except ValueError as exc:
        if isinstance(exc, NetworkFileError):
            raise
        raise NetworkFileError(str(exc)) from None
    net = WireNetwork(values, kind, tuple(wires), plan)
    problems = validate_network(net)
    if problems:
        raise NetworkFileError("invalid network: " + "; ".join(map(str, problems)))
    return net


def load(data: bytes | str) -> WireNetwork:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise NetworkFileError(f"parse error at offset {exc.pos}: {exc.msg}") from None
    return from_dict(doc)
