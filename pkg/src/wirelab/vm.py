"""Build programs for the robotic wire machine.

A program is a header (input, kind, measurement plan) followed by one
``ADD_WIRE`` per wire in parent-before-child order.  Text form::

    RWM 1
    INPUT 1,2
    KIND standard
    PLAN 0
    ADD_WIRE id=0 len=1 attach=ROOT:0 elem=0
    ADD_WIRE id=1 len=2 attach=ROOT:0 elem=1
    ADD_WIRE id=2 len=2 attach=0 elem=1
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import BuilderKind, Parent, Root, Wire, WireNetwork, validate_network

TEXT_VERSION = 1


class VMError(ValueError):
    pass


@dataclass(frozen=True)
class Instruction:
    wire_id: int
    length: int
    attach: Parent
    element_index: int

    def to_text(self) -> str:
        return (f"ADD_WIRE id={self.wire_id} len={self.length} "
                f"attach={self.attach} elem={self.element_index}")


@dataclass(frozen=True)
class RwmProgram:
    input: tuple[int, ...]
    kind: BuilderKind
    plan: tuple[int, ...]
    instructions: tuple[Instruction, ...]

    def to_text(self) -> str:
        lines = [
            f"RWM {TEXT_VERSION}",
            "INPUT " + ",".join(map(str, self.input)),
            f"KIND {self.kind.value}",
            "PLAN " + ",".join(map(str, self.plan)),
        ]
        lines += [ins.to_text() for ins in self.instructions]
        return "\n".join(lines) + "\n"


def compile_network(net: WireNetwork) -> RwmProgram:
    problems = validate_network(net)
    if problems:
        raise VMError("invalid network: " + "; ".join(map(str, problems)))
    return RwmProgram(
        net.input, net.kind, net.plan,
        tuple(Instruction(w.id, w.length, w.parent, w.element_index) for w in net.wires),
    )


def execute(prog: RwmProgram) -> WireNetwork:
    """Replay a program on an empty board."""
    if prog.input and not prog.instructions:
        raise VMError("program/header mismatch: header declares "
                      f"{len(prog.input)} elements but there are no instructions")
    end_rows: dict[int, int] = {}
    wires = []
    for pc, ins in enumerate(prog.instructions):
        if ins.length < 1:
            raise VMError(f"bad length at instruction {pc}: {ins.length}")
        if ins.wire_id in end_rows:
            raise VMError(f"duplicate id at instruction {pc}: {ins.wire_id}")
        if isinstance(ins.attach, Root):
            start = ins.attach.row
        elif ins.attach in end_rows:
            start = end_rows[ins.attach]
        else:
            raise VMError(f"undefined attachment at instruction {pc}: {ins.attach}")
        w = Wire(ins.wire_id, ins.element_index, ins.length, start, start + ins.length, ins.attach)
        end_rows[w.id] = w.end_row
        wires.append(w)
    net = WireNetwork(tuple(prog.input), prog.kind, tuple(wires), tuple(prog.plan))
    problems = validate_network(net)
    if problems:
        raise VMError("program builds an invalid network: " + "; ".join(map(str, problems)))
    return net


_ADD = re.compile(r"ADD_WIRE id=(\d+) len=(-?\d+) attach=(ROOT:(\d+)|(\d+)) elem=(\d+)")


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    return tuple(int(t) for t in text.split(",")) if text else ()


def parse_program(text: str) -> RwmProgram:
    header: dict[str, str] = {}
    instructions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("ADD_WIRE"):
            m = _ADD.fullmatch(line)
            if m is None:
                raise VMError(f"line {lineno}: malformed instruction {line!r}")
            attach: Parent = Root(int(m.group(4))) if m.group(4) is not None else int(m.group(5))
            instructions.append(Instruction(int(m.group(1)), int(m.group(2)), attach, int(m.group(6))))
            continue
        key, _, value = line.partition(" ")
        if key not in ("RWM", "INPUT", "KIND", "PLAN"):
            raise VMError(f"line {lineno}: unknown directive {key!r}")
        header[key] = value
    missing = {"RWM", "INPUT", "KIND", "PLAN"} - header.keys()
    if missing:
        raise VMError(f"missing header lines: {', '.join(sorted(missing))}")
    if header["RWM"].strip() != str(TEXT_VERSION):
        raise VMError(f"unsupported program version {header['RWM']!r}")
    try:
        return RwmProgram(_ints(header["INPUT"]), BuilderKind.parse(header["KIND"]),
                          _ints(header["PLAN"]), tuple(instructions))
    except ValueError as exc:
        raise VMError(f"bad header: {exc}") from None


compile = compile_network  # noqa: A001 - operation name; builtin compile is unused here
