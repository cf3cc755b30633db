"""Querying a built network.

Three models answer a subset-sum query ``q``:

* decision -- is row ``b + q`` electrically connected to base row ``b``?
* exact count -- how many chains in the attachment tree end at ``b + q``?
* physical -- nodal analysis of the resistor network formed by merging each
  row into one ideal node, then converting the measured current back into a
  solution-count estimate with ``s = q * R_u * m / V``.

The three can disagree: shared rows let current (and monotone row paths)
cross between tree branches.  They are reported side by side.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .model import ElectricalConfig, QueryResult, Root, WireNetwork

DENSE_LIMIT = 2000


class MeasurementError(ValueError):
    pass


def _check_query(q: int) -> None:
    if isinstance(q, bool) or not isinstance(q, int) or q < 1:
        raise MeasurementError(f"invalid query: {q!r} (must be an integer >= 1)")


class _DisjointSet:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass(frozen=True)
class RowMultigraph:
    """Electrical view of a network: one node per row, parallel wires merged.

    ``conductance[(a, b)]`` (``a < b``) is the summed conductance in siemens of
    every wire joining rows ``a`` and ``b``; ``multiplicity`` counts them.
    """

    nodes: tuple[int, ...]
    conductance: dict[tuple[int, int], float]
    multiplicity: dict[tuple[int, int], int]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_network(cls, net: WireNetwork, unit_resistance: float = 1.0) -> "RowMultigraph":
        g: dict[tuple[int, int], float] = defaultdict(float)
        mult: Counter = Counter()
        rows = set(net.plan)
        for w in net.wires:
            key = (w.start_row, w.end_row)
            g[key] += 1.0 / (w.length * unit_resistance)
            mult[key] += 1
            rows.add(w.start_row)
            rows.add(w.end_row)
        return cls(tuple(sorted(rows)), dict(g), dict(mult))

    @classmethod
    def from_edges(cls, edges, unit_resistance: float = 1.0) -> "RowMultigraph":
        """Build from ``(row_a, row_b, length)`` triples."""
        g: dict[tuple[int, int], float] = defaultdict(float)
        mult: Counter = Counter()
        rows = set()
        for a, b, length in edges:
            key = (min(a, b), max(a, b))
            g[key] += 1.0 / (length * unit_resistance)
            mult[key] += 1
            rows.update(key)
        return cls(tuple(sorted(rows)), dict(g), dict(mult))

    def components(self) -> _DisjointSet:
        ds = _DisjointSet()
        for a in self.nodes:
            ds.find(a)
        for a, b in self.conductance:
            ds.union(a, b)
        return ds

    def _system(self) -> "_Laplacian":
        lap = self._cache.get("laplacian")
        if lap is None:
            lap = self._cache["laplacian"] = _Laplacian.assemble(self)
        return lap

    def connected(self, a: int, b: int) -> bool:
        lap = self._system()
        ia, ib = lap.index.get(a), lap.index.get(b)
        return ia is not None and ib is not None and lap.labels[ia] == lap.labels[ib]


@dataclass(frozen=True)
class _Laplacian:
    index: dict[int, int]
    rows: np.ndarray
    labels: np.ndarray
    matrix: scipy.sparse.csr_matrix

    @classmethod
    def assemble(cls, graph: RowMultigraph) -> "_Laplacian":
        index = {r: i for i, r in enumerate(graph.nodes)}
        n = len(index)
        ds = graph.components()
        root_label: dict[int, int] = {}
        labels = np.array([root_label.setdefault(ds.find(r), len(root_label)) for r in graph.nodes])
        a = np.array([index[u] for u, _ in graph.conductance], dtype=np.int64)
        b = np.array([index[v] for _, v in graph.conductance], dtype=np.int64)
        g = np.fromiter(graph.conductance.values(), dtype=float, count=len(a))
        rows = np.concatenate([a, b, a, b])
        cols = np.concatenate([a, b, b, a])
        vals = np.concatenate([g, g, -g, -g])
        mat = scipy.sparse.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
        return cls(index, np.array(graph.nodes), labels, mat)


def row_graph(net: WireNetwork, unit_resistance: float = 1.0) -> RowMultigraph:
    key = ("row_graph", unit_resistance)
    g = net.cache.get(key)
    if g is None:
        g = net.cache[key] = RowMultigraph.from_network(net, unit_resistance)
    return g


def _component_of(net: WireNetwork) -> dict[int, int]:
    comp = net.cache.get("components")
    if comp is None:
        graph = row_graph(net)
        ds = graph.components()
        comp = net.cache["components"] = {r: ds.find(r) for r in graph.nodes}
    return comp


def decide(net: WireNetwork, q: int) -> bool:
    """True iff some measurement base ``b`` is connected to row ``b + q``."""
    _check_query(q)
    comp = _component_of(net)
    for b in net.plan:
        cb, cq = comp.get(b), comp.get(b + q)
        if cb is not None and cb == cq:
            return True
    return False


def _lead_wire(net: WireNetwork):
    """The row-0 wire of the first element in a two-measurement network."""
    for w in net.wires:
        if w.element_index == 0 and isinstance(w.parent, Root) and w.parent.row == 0:
            return w
    raise MeasurementError("two-measurement network has no row-0 lead wire")


def _count_tables(net: WireNetwork) -> list[tuple[int, Counter]]:
    tables = net.cache.get("count_tables")
    if tables is not None:
        return tables
    if len(net.plan) == 1:
        tables = [(net.plan[0], Counter(w.end_row for w in net.wires))]
    else:
        lead = _lead_wire(net)
        in_lead = {lead.id}
        for w in net.wires:
            if not isinstance(w.parent, Root) and w.parent in in_lead:
                in_lead.add(w.id)
        # base 0 sees chains through the lead wire (subsets with the first element);
        # base f sees every other chain, offset by f (subsets without it)
        with_first = Counter(w.end_row for w in net.wires if w.id in in_lead)
        without_first = Counter(w.end_row for w in net.wires if w.id != lead.id)
        tables = [(net.plan[0], with_first), (net.plan[1], without_first)]
    net.cache["count_tables"] = tables
    return tables


def exact_count(net: WireNetwork, q: int) -> int:
    """Number of attachment-tree chains encoding a subset that sums to ``q``."""
    if not net.counting_supported:
        raise MeasurementError("counting unsupported on a decision-only (multiset-optimized) network")
    _check_query(q)
    return sum(table[base + q] for base, table in _count_tables(net))


@dataclass(frozen=True)
class NodalSolution:
    source: int
    sink: int
    potentials: dict[int, float]
    current: float
    kirchhoff_residual: float  # worst internal-node imbalance relative to the total current


def solve_nodal(graph: RowMultigraph, source: int, sink: int, voltage: float) -> NodalSolution | None:
    """Hold ``source`` at ``voltage`` and ``sink`` at 0 V; return the steady state.

    Returns None when the two rows are not connected (no current flows).
    Only the component containing both terminals enters the solve; grounding
    the sink makes the reduced Laplacian positive definite.
    """
    if source == sink:
        raise MeasurementError("source and sink rows must differ")
    if not graph.connected(source, sink):
        return None
    lap = graph._system()
    s, t = lap.index[source], lap.index[sink]
    members = np.flatnonzero(lap.labels == lap.labels[s])
    unknown = members[(members != s) & (members != t)]
    x = np.zeros(len(lap.index))
    x[s] = voltage
    if len(unknown):
        sub = lap.matrix[unknown][:, unknown]
        rhs = -lap.matrix[unknown][:, [s]].toarray().ravel() * voltage
        if len(unknown) <= DENSE_LIMIT:
            x[unknown] = scipy.linalg.solve(sub.toarray(), rhs, assume_a="pos")
        else:
            sub = sub.tocsc()
            x[unknown] = scipy.sparse.linalg.splu(sub).solve(rhs)
            r = rhs - sub @ x[unknown]
            if np.linalg.norm(r) > 1e-10 * np.linalg.norm(rhs):
                raise MeasurementError("sparse nodal solve did not converge")

    injection = lap.matrix @ x  # net current leaving each node into the wires
    current = float(-injection[t])
    scale = abs(current) if current else 1.0
    residual = float(np.abs(injection[unknown]).max() / scale) if len(unknown) else 0.0
    potentials = {int(lap.rows[i]): float(x[i]) for i in members}
    return NodalSolution(source, sink, potentials, current, residual)


def effective_resistance(graph: RowMultigraph, a: int, b: int) -> float:
    """Two-point resistance in ohms; ``math.inf`` when the rows are disconnected."""
    if a == b:
        raise MeasurementError("effective resistance needs two distinct rows")
    sol = solve_nodal(graph, a, b, 1.0)
    if sol is None:
        return math.inf
    return 1.0 / sol.current


def physical_solutions(net: WireNetwork, q: int, cfg: ElectricalConfig | None = None
                       ) -> list[NodalSolution | None]:
    _check_query(q)
    cfg = cfg or ElectricalConfig()
    graph = row_graph(net, cfg.unit_resistance)
    return [solve_nodal(graph, b, b + q, cfg.voltage) for b in net.plan]


def physical_measure(net: WireNetwork, q: int, cfg: ElectricalConfig | None = None) -> list[float]:
    """Current in amps read by the device at each measurement base."""
    return [0.0 if s is None else max(s.current, 0.0) for s in physical_solutions(net, q, cfg)]


def estimate_count(q: int, m: float, cfg: ElectricalConfig | None = None) -> float:
    """Invert Ohm's law for ``s`` parallel paths of resistance ``q * R_u`` each."""
    cfg = cfg or ElectricalConfig()
    if m < 0:
        raise MeasurementError(f"current must be non-negative, got {m}")
    if m <= cfg.detection_threshold:
        return 0.0
    return q * cfg.unit_resistance * m / cfg.voltage


def row_path_count(net: WireNetwork, base: int, q: int) -> int:
    """Monotone row paths from ``base`` up to ``base + q`` in the row multigraph.

    Parallel wires count as distinct paths.  Unlike the tree count, a path may
    hop between branches that share a row.
    """
    _check_query(q)
    target = base + q
    out_edges = net.cache.get("out_edges")
    if out_edges is None:
        out_edges = defaultdict(list)
        for (a, b), mult in row_graph(net).multiplicity.items():
            out_edges[a].append((b, mult))
        out_edges = net.cache["out_edges"] = dict(out_edges)
    ways: dict[int, int] = defaultdict(int)
    ways[base] = 1
    for row in sorted(r for r in row_graph(net).nodes if base <= r < target):
        w = ways.get(row)
        if not w:
            continue
        for nxt, mult in out_edges.get(row, ()):
            if nxt <= target:
                ways[nxt] += w * mult
    return ways.get(target, 0)


def query(net: WireNetwork, q: int, cfg: ElectricalConfig | None = None) -> QueryResult:
    cfg = cfg or ElectricalConfig()
    _check_query(q)
    currents = physical_measure(net, q, cfg)
    detected = [m for m in currents if m > cfg.detection_threshold]
    return QueryResult(
        query=q,
        decision=decide(net, q),
        exact_count=exact_count(net, q) if net.counting_supported else None,
        currents=tuple(currents),
        estimated_count=sum(estimate_count(q, m, cfg) for m in detected) if detected else None,
    )

