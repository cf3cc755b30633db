"""Deterministic SVG and Graphviz DOT drawings of a wire network.

Rows are horizontal lines, row ``r`` at ``y = r``; each wire is a vertical
segment in its own column, columns assigned in construction order.
"""

from __future__ import annotations

from .model import WireNetwork

ROW_PITCH = 20
SLOT_PITCH = 12
MARGIN = 30

FORMATS = ("svg", "dot")


def _svg(net: WireNetwork) -> str:
    rows = range(net.max_row + 1)
    width = 2 * MARGIN + SLOT_PITCH * max(len(net.wires), 1)
    height = 2 * MARGIN + ROW_PITCH * net.max_row
    bases = set(net.plan)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{net.kind.value} network for {",".join(map(str, net.input))}</title>',
        '<g id="rows" stroke="#888" stroke-width="1">',
    ]
    for r in rows:
        y = MARGIN + ROW_PITCH * r
        colour = ' stroke="#c00"' if r in bases else ""
        out.append(f'<line class="row" data-row="{r}" x1="{MARGIN // 2}" y1="{y}" '
                   f'x2="{width - MARGIN // 2}" y2="{y}"{colour}/>')
    out.append("</g>")
    out.append('<g id="wires" stroke="#1f5fbf" stroke-width="3" stroke-linecap="round">')
    for slot, w in enumerate(net.wires):
        x = MARGIN + SLOT_PITCH * slot + SLOT_PITCH // 2
        out.append(f'<line class="wire" data-wire="{w.id}" data-length="{w.length}" '
                   f'x1="{x}" y1="{MARGIN + ROW_PITCH * w.start_row}" '
                   f'x2="{x}" y2="{MARGIN + ROW_PITCH * w.end_row}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _dot(net: WireNetwork) -> str:
    rows = sorted({0, *net.plan} | {w.start_row for w in net.wires} | {w.end_row for w in net.wires})
    out = [
        "graph wire_network {",
        f'  label="{net.kind.value} network for {",".join(map(str, net.input))}";',
        "  node [shape=plaintext];",
    ]
    for r in rows:
        extra = ", fontcolor=red" if r in net.plan else ""
        out.append(f'  r{r} [label="row {r}"{extra}];')
    for w in net.wires:
        out.append(f'  r{w.start_row} -- r{w.end_row} [id="w{w.id}", label="{w.length}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def export_diagram(net: WireNetwork, fmt: str) -> bytes:
    fmt = (fmt or "").strip().lower()
    if fmt == "svg":
        return _svg(net).encode("utf-8")
    if fmt == "dot":
        return _dot(net).encode("utf-8")
    raise ValueError(f"unknown diagram format {fmt!r}; choose one of {', '.join(FORMATS)}")
