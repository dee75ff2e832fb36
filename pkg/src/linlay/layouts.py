"""Linear layouts, page validity, rainbow diagnostics, leveled drawings.

validate_layout is the single source of truth for every constructor in the
package: nothing is trusted by construction.  The default check is the plain
pairwise O(m^2) definition; above a size threshold the same pairwise test is
evaluated with numpy broadcasting (identical semantics, cross-checked in the
test suite).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import EmbeddedGraph

QUEUE = "queue"
STACK = "stack"

_NUMPY_THRESHOLD = 400  # edges per page before switching to the vector path


@dataclass(frozen=True)
class Page:
    kind: str
    edges: frozenset[int]


@dataclass(frozen=True)
class LinearLayout:
    """Vertex order plus a partition of the edges into typed pages."""

    order: tuple[int, ...]
    pages: tuple[Page, ...]

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def queue_pages(self) -> int:
        return sum(1 for p in self.pages if p.kind == QUEUE)

    def stack_pages(self) -> int:
        return sum(1 for p in self.pages if p.kind == STACK)

    def to_json_dict(self) -> dict:
        return {
            "order": list(self.order),
            "pages": [
                {"kind": p.kind, "edges": sorted(p.edges)} for p in self.pages
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "LinearLayout":
        return LinearLayout(
            order=tuple(int(v) for v in d["order"]),
            pages=tuple(
                Page(kind=p["kind"], edges=frozenset(int(e) for e in p["edges"]))
                for p in d["pages"]
            ),
        )


@dataclass(frozen=True)
class Violation:
    page: int
    edge_a: int
    edge_b: int
    kind: str  # "nesting" | "crossing" | structural problems


@dataclass(frozen=True)
class LayoutReport:
    valid: bool
    violations: tuple[Violation, ...] = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid


def validate_layout(graph: EmbeddedGraph, layout: LinearLayout) -> LayoutReport:
    """Exhaustive pairwise page check.

    Two disjoint edges (v,w), (x,y) with v < x < y < w nest; with
    v < x < w < y they cross.  Queue pages forbid nesting, stack pages forbid
    crossing; edges sharing an endpoint do neither.
    """
    m = len(graph.edges)
    if sorted(layout.order) != list(range(graph.n)):
        return LayoutReport(False, message="order is not a permutation of V")
    assigned: list[int] = []
    for p in layout.pages:
        assigned.extend(p.edges)
    if sorted(assigned) != list(range(m)):
        return LayoutReport(False, message="pages do not partition the edge set")
    pos = layout.position()
    violations: list[Violation] = []
    for ip, page in enumerate(layout.pages):
        if page.kind not in (QUEUE, STACK):
            return LayoutReport(False, message=f"unknown page kind {page.kind!r}")
        intervals = []
        for e in sorted(page.edges):
            a, b = graph.edges[e]
            pa, pb = pos[a], pos[b]
            intervals.append((min(pa, pb), max(pa, pb), e))
        intervals.sort()
        violations.extend(_page_violations(intervals, page.kind, ip))
    return LayoutReport(valid=not violations, violations=tuple(violations))


def _page_violations(
    intervals: list[tuple[int, int, int]], kind: str, page_idx: int
) -> list[Violation]:
    if len(intervals) > _NUMPY_THRESHOLD:
        return _page_violations_np(intervals, kind, page_idx)
    bad: list[Violation] = []
    k = len(intervals)
    for i in range(k):
        l1, r1, e1 = intervals[i]
        for j in range(i + 1, k):
            l2, r2, e2 = intervals[j]
            if l2 >= r1:
                break  # intervals sorted by left end; no further overlap
            # here l1 <= l2 < r1
            if l1 == l2 or r1 == r2 or l2 == r1 or r2 == l1:
                continue  # shared endpoint
            if kind == QUEUE and r2 < r1:
                bad.append(Violation(page_idx, e1, e2, "nesting"))
            elif kind == STACK and r2 > r1:
                bad.append(Violation(page_idx, e1, e2, "crossing"))
    return bad


def _page_violations_np(
    intervals: list[tuple[int, int, int]], kind: str, page_idx: int
) -> list[Violation]:
    arr = np.array(intervals, dtype=np.int64)
    l, r, ids = arr[:, 0], arr[:, 1], arr[:, 2]
    # pairwise over sorted-by-left intervals: j strictly after i
    li, lj = l[:, None], l[None, :]
    ri, rj = r[:, None], r[None, :]
    upper = np.triu(np.ones((len(arr), len(arr)), dtype=bool), k=1)
    disjointish = (lj == li) | (rj == ri) | (lj == ri) | (rj == li) | (lj > ri)
    if kind == QUEUE:
        bad = upper & ~disjointish & (lj > li) & (rj < ri)
    else:
        bad = upper & ~disjointish & (lj > li) & (rj > ri) & (lj < ri)
    out = []
    for i, j in zip(*np.nonzero(bad)):
        out.append(
            Violation(
                page_idx, int(ids[i]), int(ids[j]),
                "nesting" if kind == QUEUE else "crossing",
            )
        )
    return out


# ---------------------------------------------------------------------------
# Rainbow diagnostics
# ---------------------------------------------------------------------------


def max_rainbow(
    order: tuple[int, ...] | list[int], edges: list[tuple[int, int]]
) -> tuple[int, list[int]]:
    """Largest set of pairwise nesting edges under the order, with a witness.

    The nesting relation is a strict partial order on edges, so the largest
    rainbow is the longest chain; the witness lower-bounds the queue count of
    every all-queue layout that uses this vertex order.  Returns
    (size, edge index list, outermost first).
    """
    pos = {v: i for i, v in enumerate(order)}
    iv = []
    for idx, (a, b) in enumerate(edges):
        pa, pb = pos[a], pos[b]
        iv.append((min(pa, pb), max(pa, pb), idx))
    iv.sort(key=lambda t: (t[0], -t[1]))
    best_len = [1] * len(iv)
    best_prev = [-1] * len(iv)
    for i in range(len(iv)):
        for j in range(i):
            # does iv[j] strictly contain iv[i]?
            if iv[j][0] < iv[i][0] and iv[i][1] < iv[j][1]:
                if best_len[j] + 1 > best_len[i]:
                    best_len[i] = best_len[j] + 1
                    best_prev[i] = j
    if not iv:
        return 0, []
    i = max(range(len(iv)), key=lambda t: best_len[t])
    size = best_len[i]
    witness = []
    while i != -1:
        witness.append(iv[i][2])
        i = best_prev[i]
    witness.reverse()
    return size, witness


def nesting_height_partition(
    order: tuple[int, ...] | list[int],
    edges: list[tuple[int, int]],
    edge_ids: list[int],
) -> dict[int, int]:
    """Partition edges into queues by nesting height.

    height(e) = length of the longest chain of edges strictly nesting above
    e; two edges of equal height can never nest, so mapping height -> queue
    uses exactly max-rainbow many queues (the minimum for this order).
    """
    pos = {v: i for i, v in enumerate(order)}
    iv = []
    for idx, e in zip(edge_ids, edges):
        a, b = e
        pa, pb = pos[a], pos[b]
        iv.append((min(pa, pb), max(pa, pb), idx))
    # sort outermost-first so every strict container precedes its content
    iv.sort(key=lambda t: (t[0], -t[1]))
    heights: dict[int, int] = {}
    placed: list[tuple[int, int, int]] = []  # (left, right, height)
    for left, right, idx in iv:
        h = 0
        for l2, r2, h2 in placed:
            if l2 < left and right < r2 and h2 + 1 > h:
                h = h2 + 1
        heights[idx] = h
        placed.append((left, right, h))
    return heights


# ---------------------------------------------------------------------------
# Leveled planar drawings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LeveledDrawing:
    """Per-vertex level plus a total order within every level.

    ``level``/``pos`` are keyed by vertex id; vertices of a common level are
    compared by ``pos``.  Levels may be negative; normalize() shifts the
    minimum to zero.
    """

    level: dict[int, int]
    pos: dict[int, int]

    def vertices(self) -> list[int]:
        return sorted(self.level, key=lambda v: (self.level[v], self.pos[v]))

    def normalize(self) -> "LeveledDrawing":
        if not self.level:
            return self
        shift = min(self.level.values())
        lv = {v: l - shift for v, l in self.level.items()}
        # compact positions per level, preserving order
        by_level: dict[int, list[int]] = {}
        for v in lv:
            by_level.setdefault(lv[v], []).append(v)
        pos: dict[int, int] = {}
        for l, vs in by_level.items():
            vs.sort(key=lambda v: self.pos[v])
            for i, v in enumerate(vs):
                pos[v] = i
        return LeveledDrawing(level=lv, pos=pos)


@dataclass(frozen=True)
class DrawingReport:
    valid: bool
    bad_edges: tuple[int, ...] = ()
    crossings: tuple[tuple[int, int], ...] = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid


def validate_leveled_drawing(
    graph: EmbeddedGraph,
    drawing: LeveledDrawing,
    vertices: set[int] | None = None,
) -> DrawingReport:
    """Check the two leveled-planarity conditions on the induced subgraph.

    ``vertices`` restricts the check to an induced subgraph (drawings of bag
    contents cover only part of the host graph); by default the drawing must
    cover the whole graph.
    """
    verts = set(drawing.level)
    if vertices is None:
        if verts != set(range(graph.n)):
            return DrawingReport(False, message="drawing does not cover V")
    elif verts != vertices:
        return DrawingReport(False, message="drawing does not match vertex set")
    for v in verts:
        if v not in drawing.pos:
            return DrawingReport(False, message=f"vertex {v} has no position")
    sub_edges = [
        (i, a, b)
        for i, (a, b) in enumerate(graph.edges)
        if a in verts and b in verts
    ]
    bad = tuple(
        i for i, a, b in sub_edges
        if abs(drawing.level[a] - drawing.level[b]) != 1
    )
    if bad:
        return DrawingReport(False, bad_edges=bad,
                             message="edges must join consecutive levels")
    by_pair: dict[int, list[tuple[int, int, int]]] = {}
    for i, a, b in sub_edges:
        if drawing.level[a] > drawing.level[b]:
            a, b = b, a
        by_pair.setdefault(drawing.level[a], []).append(
            (drawing.pos[a], drawing.pos[b], i)
        )
    crossings: list[tuple[int, int]] = []
    for lst in by_pair.values():
        lst.sort()
        for i in range(len(lst)):
            a1, b1, e1 = lst[i]
            for j in range(i + 1, len(lst)):
                a2, b2, e2 = lst[j]
                if a1 == a2 or b1 == b2:
                    continue
                if (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2):
                    crossings.append((e1, e2))
    return DrawingReport(valid=not crossings, crossings=tuple(crossings))


def leveled_to_one_queue(
    drawing: LeveledDrawing,
    graph: EmbeddedGraph,
    vertices: set[int] | None = None,
) -> LinearLayout:
    """Levels ascending, within-level order kept: a single queue suffices."""
    rep = validate_leveled_drawing(graph, drawing, vertices)
    if not rep:
        raise ValueError(f"invalid leveled drawing: {rep.message or rep.crossings}")
    order = tuple(drawing.vertices())
    verts = set(drawing.level)
    edges = frozenset(
        i for i, (a, b) in enumerate(graph.edges) if a in verts and b in verts
    )
    return LinearLayout(order=order, pages=(Page(QUEUE, edges),))
