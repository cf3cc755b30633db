"""Constructor algorithms: turn a multiset of positive integers into a wire network.

Every builder removes elements in input order.  Wire ids are assigned in
construction order, so ``net.wires`` is always parent-before-child.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .model import BuilderKind, Parent, Root, Wire, WireNetwork, validate_input

DEFAULT_SIZE_LIMIT = 24


class BuildError(ValueError):
    pass


class _Board:
    """Accumulates wires for one build."""

    def __init__(self, values: tuple[int, ...], next_id: int = 0):
        self.values = values
        self.wires: list[Wire] = []
        self._end: dict[int, int] = {}
        self.next_id = next_id

    def add(self, element_index: int, parent: Parent) -> Wire:
        start = parent.row if isinstance(parent, Root) else self._end[parent]
        length = self.values[element_index]
        w = Wire(self.next_id, element_index, length, start, start + length, parent)
        self.next_id += 1
        self.wires.append(w)
        self._end[w.id] = w.end_row
        return w

    def adopt(self, wires: Sequence[Wire]) -> None:
        for w in wires:
            self.wires.append(w)
            self._end[w.id] = w.end_row
        self.next_id = max([self.next_id] + [w.id + 1 for w in wires])


def _check(values: Sequence[int], size_limit: int | None) -> tuple[int, ...]:
    try:
        values = validate_input(values)
    except ValueError as exc:
        raise BuildError(str(exc)) from None
    if size_limit is not None and len(values) > size_limit:
        raise BuildError(f"size limit: {len(values)} elements exceeds limit {size_limit}")
    return values


def _full_tree(board: _Board, indices: Sequence[int], parent: Parent) -> None:
    # one wire per element at the base, then for each removed element expand
    # every wire carrying it with all elements still remaining after it
    carrying: dict[int, list[int]] = {i: [] for i in indices}
    for i in indices:
        carrying[i].append(board.add(i, parent).id)
    for pos, removed in enumerate(indices[:-1]):
        rest = indices[pos + 1:]
        for wid in carrying[removed]:
            for j in rest:
                carrying[j].append(board.add(j, wid).id)


def build_standard(values: Sequence[int], *, size_limit: int | None = DEFAULT_SIZE_LIMIT) -> WireNetwork:
    """One-measurement network with ``2**n - 1`` wires, one chain per nonempty subset."""
    values = _check(values, size_limit)
    board = _Board(values)
    _full_tree(board, range(len(values)), Root(0))
    return WireNetwork(values, BuilderKind.STANDARD, tuple(board.wires), (0,))


def build_reduced(values: Sequence[int], *, size_limit: int | None = DEFAULT_SIZE_LIMIT) -> WireNetwork:
    """Two-measurement network: the first element's wire with the full tree of
    the remaining elements hung from its top.  ``2**(n-1)`` wires."""
    values = _check(values, size_limit)
    board = _Board(values)
    first = board.add(0, Root(0))
    if len(values) > 1:
        _full_tree(board, range(1, len(values)), first.id)
    return WireNetwork(values, BuilderKind.REDUCED, tuple(board.wires), (0, values[0]))


def build_multiset_optimized(values: Sequence[int], *,
                             size_limit: int | None = DEFAULT_SIZE_LIMIT) -> WireNetwork:
    """Decision-only two-measurement network where equal values share a wire.

    Each expansion attaches one wire per distinct remaining value.  A wire
    never receives two children of the same length, so re-expanding it on a
    later removal of an equal value adds nothing.
    """
    values = _check(values, size_limit)
    n = len(values)
    board = _Board(values)
    child_lengths: dict[int, set[int]] = {}

    def distinct_after(pos: int) -> list[int]:
        # earliest remaining index for each distinct value, in input order
        firsts: dict[int, int] = {}
        for j in range(pos + 1, n):
            firsts.setdefault(values[j], j)
        return list(firsts.values())

    def expand(wid: int, pos: int) -> None:
        have = child_lengths.setdefault(wid, set())
        for j in distinct_after(pos):
            if values[j] not in have:
                have.add(values[j])
                child_lengths[board.add(j, wid).id] = set()

    first = board.add(0, Root(0))
    child_lengths[first.id] = set()
    expand(first.id, 0)
    for pos in range(1, n - 1):
        target = values[pos]
        snapshot = [w.id for w in board.wires if w.length == target]
        for wid in snapshot:
            expand(wid, pos)
    return WireNetwork(values, BuilderKind.MULTISET_OPTIMIZED, tuple(board.wires), (0, values[0]))


BUILDERS = {
    BuilderKind.STANDARD: build_standard,
    BuilderKind.REDUCED: build_reduced,
    BuilderKind.MULTISET_OPTIMIZED: build_multiset_optimized,
}


def build(kind: BuilderKind | str, values: Sequence[int], **kwargs) -> WireNetwork:
    if isinstance(kind, str):
        kind = BuilderKind.parse(kind)
    return BUILDERS[kind](values, **kwargs)


def grow(net: WireNetwork, new_value: int) -> WireNetwork:
    """Append ``new_value`` to the input without rebuilding.

    Every wire carrying the last element gets a sibling of the new length at
    its start row and a child of the new length at its end row.
    """
    if net.kind is BuilderKind.MULTISET_OPTIMIZED:
        raise BuildError("growth unsupported for decision-only networks")
    if isinstance(new_value, bool) or not isinstance(new_value, int) or new_value < 1:
        raise BuildError(f"new element must be a positive integer, got {new_value!r}")
    last = len(net.input) - 1
    values = net.input + (new_value,)
    board = _Board(values)
    board.adopt(net.wires)
    new_index = len(net.input)
    for w in net.wires:
        if w.element_index != last:
            continue
        # in a reduced network the first element's wire is the row-0 measurement
        # lead; a sibling beside it would duplicate the end-row child
        if not (net.kind is BuilderKind.REDUCED and last == 0):
            board.add(new_index, w.parent)
        board.add(new_index, w.id)
    return WireNetwork(values, net.kind, tuple(board.wires), net.plan)


class WireCount(NamedTuple):
    count: int
    exact: bool


def expected_wire_count(kind: BuilderKind | str, n: int) -> WireCount:
    """Closed-form wire count; for multiset-optimized networks only an upper bound."""
    if isinstance(kind, str):
        kind = BuilderKind.parse(kind)
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind is BuilderKind.STANDARD:
        return WireCount(2**n - 1, True)
    if kind is BuilderKind.REDUCED:
        return WireCount(2 ** (n - 1), True)
    return WireCount(2 ** (n - 1), False)
