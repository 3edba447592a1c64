"""Zero-level polylines of a sampled scalar field by marching squares."""
from __future__ import annotations

from collections import defaultdict

import numpy as np

# Edges of a cell (i, j)-(i+1, j+1), keyed so neighbouring cells share keys:
# ("h", i, j) is the edge from node (i, j) to (i+1, j); ("v", i, j) from (i, j) to (i, j+1).


def _edge_point(field, x, y, key):
    kind, i, j = key
    if kind == "h":
        v0, v1 = field[i, j], field[i + 1, j]
        t = v0 / (v0 - v1)
        return complex(x[i] + t * (x[i + 1] - x[i]), y[j])
    v0, v1 = field[i, j], field[i, j + 1]
    t = v0 / (v0 - v1)
    return complex(x[i], y[j] + t * (y[j + 1] - y[j]))


def _cell_segments(field, i, j):
    # corners counter-clockwise: (i,j) (i+1,j) (i+1,j+1) (i,j+1)
    c = [field[i, j], field[i + 1, j], field[i + 1, j + 1], field[i, j + 1]]
    if any(np.isnan(v) for v in c):
        return []
    s = [v >= 0 for v in c]
    edges = [("h", i, j), ("v", i + 1, j), ("h", i, j + 1), ("v", i, j)]
    crossed = [k for k in range(4) if s[k] != s[(k + 1) % 4]]
    if len(crossed) == 2:
        return [(edges[crossed[0]], edges[crossed[1]])]
    if len(crossed) == 4:
        # saddle: pick the pairing from the sign of the cell average
        centre_pos = (sum(c) / 4.0) >= 0
        if centre_pos == s[0]:
            return [(edges[0], edges[1]), (edges[2], edges[3])]
        return [(edges[3], edges[0]), (edges[1], edges[2])]
    return []


def zero_polylines(field: np.ndarray, x: np.ndarray, y: np.ndarray) -> list[list[complex]]:
    """Polylines (as complex points x + iy) where `field` crosses zero.

    `field[i, j]` is sampled at (x[i], y[j]). NaN nodes disable their cells.
    Crossing points are placed by linear interpolation along cell edges.
    """
    field = np.asarray(field, dtype=float)
    nx, ny = field.shape
    segments = []
    for i in range(nx - 1):
        for j in range(ny - 1):
            segments.extend(_cell_segments(field, i, j))
    if not segments:
        return []

    by_edge = defaultdict(list)
    for n, (e0, e1) in enumerate(segments):
        by_edge[e0].append(n)
        by_edge[e1].append(n)

    used = [False] * len(segments)

    def walk(seg, start_edge):
        chain = [start_edge]
        edge = start_edge
        while True:
            used[seg] = True
            e0, e1 = segments[seg]
            edge = e1 if e0 == edge else e0
            chain.append(edge)
            nxt = [s for s in by_edge[edge] if not used[s]]
            if not nxt:
                return chain
            seg = nxt[0]

    lines = []
    # open chains first: start from edges touched by a single segment
    order = [n for n in range(len(segments)) if any(len(by_edge[e]) == 1 for e in segments[n])]
    order += range(len(segments))
    for n in order:
        if used[n]:
            continue
        e0, e1 = segments[n]
        start = e0 if len(by_edge[e0]) == 1 or len(by_edge[e1]) != 1 else e1
        chain = walk(n, start)
        pts = [_edge_point(field, x, y, e) for e in chain]
        lines.append(pts)
    return lines
