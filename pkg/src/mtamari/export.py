"""Text exports of a built lattice (Graphviz DOT, JSON, enumeration listings)."""

import csv
import io
import re

from .lattice import Lattice
from .paths import format_sequence
from .shelling import cover_label


def to_dot(lat):
    """Hasse diagram drawn bottom-to-top, every edge labelled ``(j,aj)``."""
    lines = ['digraph "T_%d^(%d)" {' % (lat.n, lat.m),
             "  rankdir=BT;",
             "  node [shape=plaintext];"]
    for k, seq in enumerate(lat.elements):
        lines.append('  %d [label="%s"];' % (k, format_sequence(seq)))
    for src, dst, pos in lat.edges():
        lines.append('  %d -> %d [label="%s"];' % (src, dst, cover_label(lat.elements[src], pos)))
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r'^\s*(\d+) \[label="([\d,]+)"\];$')
_EDGE = re.compile(r'^\s*(\d+) -> (\d+) \[label="\((\d+),(\d+)\)"\];$')


def parse_dot(text):
    """Read back what :func:`to_dot` writes: ``({id: seq}, [(src, dst, label)])``."""
    nodes = {}
    edges = []
    for line in text.splitlines():
        mo = _NODE.match(line)
        if mo:
            nodes[int(mo.group(1))] = tuple(int(v) for v in mo.group(2).split(","))
            continue
        mo = _EDGE.match(line)
        if mo:
            edges.append((int(mo.group(1)), int(mo.group(2)), (int(mo.group(3)), int(mo.group(4)))))
    return nodes, edges


def to_json(lat):
    return lat.to_json()


def from_json(text):
    return Lattice.from_json(text)


def paths_csv(paths):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "seq"])
    for k, seq in enumerate(paths):
        w.writerow([k, format_sequence(seq)])
    return buf.getvalue()


def paths_lines(paths):
    return "".join(format_sequence(seq) + "\n" for seq in paths)
