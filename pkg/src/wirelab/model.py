"""Domain types for wire networks built on a robotic wire machine board.

A board is a stack of horizontal rows at integer positions.  Vertical
connecting wires join row ``r`` to row ``r + length`` and encode the integer
``length``; a chain of wires joined end to start encodes the sum of its
lengths.  Networks are immutable once built.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union


class BuilderKind(str, enum.Enum):
    STANDARD = "standard"
    REDUCED = "reduced"
    MULTISET_OPTIMIZED = "multiset_optimized"

    @classmethod
    def parse(cls, text: str) -> "BuilderKind":
        key = text.strip().lower().replace("-", "_")
        if key == "multiset_opt":
            key = "multiset_optimized"
        return cls(key)


@dataclass(frozen=True)
class Root:
    """Attachment point on the bare board at ``row``."""

    row: int

    def __str__(self) -> str:
        return f"ROOT:{self.row}"


Parent = Union[Root, int]


@dataclass(frozen=True)
class Wire:
    id: int
    element_index: int
    length: int
    start_row: int
    end_row: int
    parent: Parent


@dataclass(frozen=True)
class WireNetwork:
    """A built network together with the base rows its queries are measured from.

    ``input`` is kept in caller order; that order is the removal order every
    builder follows.  ``plan`` is ``(0,)`` for one-measurement networks and
    ``(0, first_value)`` for two-measurement ones.
    """

    input: tuple[int, ...]
    kind: BuilderKind
    wires: tuple[Wire, ...]
    plan: tuple[int, ...]
    # derived views (row graphs, histograms) cached by the measurement code
    cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def max_row(self) -> int:
        return max((w.end_row for w in self.wires), default=0)

    @property
    def counting_supported(self) -> bool:
        return self.kind is not BuilderKind.MULTISET_OPTIMIZED

    @property
    def total(self) -> int:
        return sum(self.input)

    def wire_map(self) -> dict[int, Wire]:
        return {w.id: w for w in self.wires}


@dataclass(frozen=True)
class Violation:
    wire_id: int | None
    message: str

    def __str__(self) -> str:
        where = "network" if self.wire_id is None else f"wire {self.wire_id}"
        return f"{where}: {self.message}"


class NetworkStats(NamedTuple):
    wire_count: int
    max_row: int
    rows_touched: int
    depth: int


def validate_input(values: Sequence[int]) -> tuple[int, ...]:
    values = tuple(values)
    if not values:
        raise ValueError("empty input")
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ValueError(f"input elements must be positive integers, got {v!r}")
    return values


def validate_network(net: WireNetwork) -> list[Violation]:
    """Check every structural invariant; an empty list means the network is sound."""
    out: list[Violation] = []
    n = len(net.input)
    if any((not isinstance(v, int)) or v < 1 for v in net.input):
        out.append(Violation(None, "input elements must be positive integers"))

    if net.kind is BuilderKind.STANDARD:
        expected_plan: tuple[int, ...] | None = (0,)
    elif n:
        expected_plan = (0, net.input[0])
    else:
        expected_plan = None
    if expected_plan is not None and tuple(net.plan) != expected_plan:
        out.append(Violation(None, f"plan {list(net.plan)} does not match kind "
                                   f"{net.kind.value} (expected {list(expected_plan)})"))

    seen: dict[int, Wire] = {}
    for w in net.wires:
        if w.id in seen:
            out.append(Violation(w.id, "duplicate wire id"))
            continue
        if w.length < 1:
            out.append(Violation(w.id, f"non-positive length {w.length}"))
        if w.start_row < 0:
            out.append(Violation(w.id, f"negative start_row {w.start_row}"))
        if w.end_row != w.start_row + w.length:
            out.append(Violation(w.id, f"end_row {w.end_row} != start_row {w.start_row} "
                                       f"+ length {w.length}"))
        if not 0 <= w.element_index < n:
            out.append(Violation(w.id, f"element_index {w.element_index} out of range"))
        elif net.input[w.element_index] != w.length:
            out.append(Violation(w.id, f"length {w.length} != input value "
                                       f"{net.input[w.element_index]} at index {w.element_index}"))
        if isinstance(w.parent, Root):
            if w.start_row != w.parent.row:
                out.append(Violation(w.id, f"start_row {w.start_row} != root row {w.parent.row}"))
        else:
            # wires are listed parent-first, so an unseen parent is dangling or a cycle
            parent = seen.get(w.parent)
            if parent is None:
                out.append(Violation(w.id, f"parent {w.parent} is not an earlier wire"))
            elif parent.end_row != w.start_row:
                out.append(Violation(w.id, f"start_row {w.start_row} != parent {parent.id} "
                                           f"end_row {parent.end_row}"))
        seen[w.id] = w
    return out


def chain(net: WireNetwork, wire_id: int) -> list[Wire]:
    """Wires from the root down to ``wire_id`` inclusive."""
    by_id = net.cache.get("wire_map")
    if by_id is None:
        by_id = net.cache["wire_map"] = net.wire_map()
    out = []
    cur: Parent = wire_id
    while not isinstance(cur, Root):
        w = by_id[cur]
        out.append(w)
        cur = w.parent
    out.reverse()
    return out


def network_stats(net: WireNetwork) -> NetworkStats:
    rows = set()
    depth: dict[int, int] = {}
    for w in net.wires:
        rows.add(w.start_row)
        rows.add(w.end_row)
        depth[w.id] = 1 if isinstance(w.parent, Root) else depth[w.parent] + 1
    return NetworkStats(
        wire_count=len(net.wires),
        max_row=net.max_row,
        rows_touched=len(rows),
        depth=max(depth.values(), default=0),
    )


@dataclass(frozen=True)
class ElectricalConfig:
    """Source voltage (V), resistance per unit length of connecting wire (ohm),
    and the smallest current (A) read as "current is flowing"."""

    voltage: float = 1.0
    unit_resistance: float = 1.0
    detection_threshold: float = 1e-9

    def __post_init__(self):
        for name in ("voltage", "unit_resistance", "detection_threshold"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be strictly positive, got {value!r}")


@dataclass(frozen=True)
class QueryResult:
    query: int
    decision: bool
    exact_count: int | None
    currents: tuple[float, ...]
    estimated_count: float | None

    def to_dict(self) -> dict:
        return {
            "query": self.query,
            "decision": self.decision,
            "exact_count": self.exact_count,
            "currents": list(self.currents),
            "estimated_count": self.estimated_count,
        }
