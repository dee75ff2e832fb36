"""Embedded planar graphs: rotation systems, face traversal, layerings, degeneracy.

A graph is stored combinatorially as a rotation system: every vertex carries
the cyclic order of its incident edges.  Faces are orbits of the directed-edge
successor map and are always re-derivable; generators that maintain face lists
incrementally are checked against this re-derivation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class EmbeddingError(ValueError):
    """Raised for malformed rotation systems or invalid embedded-graph input."""


# A face is a closed walk, stored as a list of (vertex, edge_id) pairs where
# edge_id leads from this vertex to the next one on the walk.
FaceWalk = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class EmbeddedGraph:
    """Planar graph with a rotation system.

    ``edges[i]`` is the unordered endpoint pair of edge ``i``; ``rotations[v]``
    lists the ids of edges incident to ``v`` in cyclic order.  ``outer_face``
    indexes into :func:`trace_faces` output.  ``coloring`` is an optional
    proper 2-coloring (0/1 per vertex).
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    rotations: tuple[tuple[int, ...], ...]
    outer_face: int = 0
    coloring: tuple[int, ...] | None = None

    def other_end(self, edge_id: int, v: int) -> int:
        a, b = self.edges[edge_id]
        if v == a:
            return b
        if v == b:
            return a
        raise EmbeddingError(f"vertex {v} is not an endpoint of edge {edge_id}")

    def neighbors(self, v: int) -> list[int]:
        return [self.other_end(e, v) for e in self.rotations[v]]

    def adjacency_sets(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {frozenset_pair(a, b): i for i, (a, b) in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def to_json_dict(self) -> dict:
        d = {
            "n": self.n,
            "edges": [list(e) for e in self.edges],
            "rotations": [list(r) for r in self.rotations],
            "outer_face": self.outer_face,
        }
        if self.coloring is not None:
            d["coloring"] = list(self.coloring)
        return d

    @staticmethod
    def from_json_dict(d: dict) -> "EmbeddedGraph":
        coloring = d.get("coloring")
        return EmbeddedGraph(
            n=int(d["n"]),
            edges=tuple((int(a), int(b)) for a, b in d["edges"]),
            rotations=tuple(tuple(int(e) for e in r) for r in d["rotations"]),
            outer_face=int(d.get("outer_face", 0)),
            coloring=tuple(int(c) for c in coloring) if coloring is not None else None,
        )


def frozenset_pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


# ---------------------------------------------------------------------------
# Face traversal
# ---------------------------------------------------------------------------


def trace_faces(graph: EmbeddedGraph) -> list[FaceWalk]:
    """Orbit decomposition of the directed edges under the face-successor map.

    After arriving at ``v`` via edge ``e``, the walk continues along the edge
    immediately after ``e`` in ``rotations[v]``.  Every directed edge belongs
    to exactly one face; for a valid embedding of a connected graph the face
    count satisfies Euler's formula.
    """
    _check_rotations(graph)
    pos: list[dict[int, int]] = [
        {e: i for i, e in enumerate(r)} for r in graph.rotations
    ]
    faces: list[FaceWalk] = []
    seen: set[tuple[int, int]] = set()  # directed edge as (tail, edge_id)
    for e0, (a0, b0) in enumerate(graph.edges):
        for tail in (a0, b0):
            if (tail, e0) in seen:
                continue
            walk: list[tuple[int, int]] = []
            v, e = tail, e0
            while (v, e) not in seen:
                seen.add((v, e))
                walk.append((v, e))
                w = graph.other_end(e, v)
                rot = graph.rotations[w]
                nxt = rot[(pos[w][e] + 1) % len(rot)]
                v, e = w, nxt
            if (v, e) != (tail, e0):
                raise EmbeddingError("face orbit did not close on its start")
            faces.append(tuple(walk))
    if not faces and graph.n > 0:
        # Edgeless graphs have a single face per the plane-drawing reading.
        return []
    return faces


def _check_rotations(graph: EmbeddedGraph) -> None:
    if len(graph.rotations) != graph.n:
        raise EmbeddingError("rotation list must have one entry per vertex")
    seen_pairs: set[tuple[int, int]] = set()
    for i, (a, b) in enumerate(graph.edges):
        if a == b:
            raise EmbeddingError(f"self-loop at vertex {a} (edge {i})")
        if not (0 <= a < graph.n and 0 <= b < graph.n):
            raise EmbeddingError(f"edge {i} references missing vertex")
        p = frozenset_pair(a, b)
        if p in seen_pairs:
            raise EmbeddingError(f"parallel edge {a}-{b}")
        seen_pairs.add(p)
    incident: list[list[int]] = [[] for _ in range(graph.n)]
    for i, (a, b) in enumerate(graph.edges):
        incident[a].append(i)
        incident[b].append(i)
    for v in range(graph.n):
        if sorted(graph.rotations[v]) != sorted(incident[v]):
            raise EmbeddingError(
                f"rotation at vertex {v} does not list exactly its incident edges"
            )


def face_vertices(face: FaceWalk) -> list[int]:
    return [v for v, _ in face]


def euler_ok(graph: EmbeddedGraph) -> bool:
    """V - E + F = 2 for a connected embedded graph."""
    if not is_connected(graph):
        return False
    f = len(trace_faces(graph)) if graph.edges else 1
    return graph.n - len(graph.edges) + f == 2


def is_connected(graph: EmbeddedGraph) -> bool:
    if graph.n == 0:
        return True
    adj = graph.adjacency_sets()
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == graph.n


# ---------------------------------------------------------------------------
# Bipartiteness and quadrangulation check
# ---------------------------------------------------------------------------


def bipartite_coloring(graph: EmbeddedGraph) -> tuple[int, ...] | None:
    """Proper 2-coloring by BFS, or None if an odd cycle exists."""
    color = [-1] * graph.n
    adj = graph.adjacency_sets()
    for s in range(graph.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return tuple(color)


@dataclass(frozen=True)
class QuadReport:
    ok: bool
    bipartite: bool
    offending_faces: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def check_quadrangulation(
    graph: EmbeddedGraph, include_outer: bool = True
) -> QuadReport:
    """True iff the graph is bipartite and every (inner) face has length 4."""
    coloring = bipartite_coloring(graph)
    faces = trace_faces(graph)
    bad = tuple(
        i
        for i, f in enumerate(faces)
        if len(f) != 4 and (include_outer or i != graph.outer_face)
    )
    ok = coloring is not None and not bad and graph.n >= 4
    return QuadReport(ok=ok, bipartite=coloring is not None, offending_faces=bad)


# ---------------------------------------------------------------------------
# Layerings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Layering:
    """Partition of the vertices into ordered layers V_0, V_1, ..."""

    layers: tuple[tuple[int, ...], ...]
    root: int | None = None

    def layer_of(self) -> list[int]:
        out = [-1] * (1 + max((v for layer in self.layers for v in layer), default=-1))
        for i, layer in enumerate(self.layers):
            for v in layer:
                out[v] = i
        return out


def bfs_layering(graph: EmbeddedGraph, root: int) -> Layering:
    """Layers by graph distance from the root; errors on disconnected input."""
    dist = [-1] * graph.n
    dist[root] = 0
    adj = graph.adjacency_sets()
    queue = deque([root])
    order = [root]
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if dist[w] == -1:
                dist[w] = dist[v] + 1
                queue.append(w)
                order.append(w)
    if len(order) != graph.n:
        raise EmbeddingError("bfs_layering requires a connected graph")
    nlayers = max(dist) + 1
    layers: list[list[int]] = [[] for _ in range(nlayers)]
    for v in range(graph.n):
        layers[dist[v]].append(v)
    return Layering(layers=tuple(tuple(l) for l in layers), root=root)


def validate_layering(graph: EmbeddedGraph, layering: Layering) -> bool:
    """Layers partition V and every edge joins the same or consecutive layers."""
    seen: set[int] = set()
    for layer in layering.layers:
        for v in layer:
            if v in seen or not (0 <= v < graph.n):
                return False
            seen.add(v)
    if len(seen) != graph.n:
        return False
    lof = layering.layer_of()
    return all(abs(lof[a] - lof[b]) <= 1 for a, b in graph.edges)


def is_bichromatic(layering: Layering, coloring: tuple[int, ...]) -> bool:
    """Even layers monochromatic in one color, odd layers in the other."""
    used: list[set[int]] = [set(), set()]
    for i, layer in enumerate(layering.layers):
        for v in layer:
            used[i % 2].add(coloring[v])
    if len(used[0]) > 1 or len(used[1]) > 1:
        return False
    return not (used[0] and used[1] and used[0] == used[1])


# ---------------------------------------------------------------------------
# Degeneracy
# ---------------------------------------------------------------------------


def degeneracy_order(graph: EmbeddedGraph, d: int) -> list[int] | None:
    """Order certifying d-degeneracy (repeated removal of a min-degree vertex).

    Returns the build order v_1..v_n (each vertex has degree <= d among its
    predecessors), or None if the graph is not d-degenerate.  Ties are broken
    by vertex id so the certificate is deterministic.
    """
    adj = graph.adjacency_sets()
    deg = [len(a) for a in adj]
    removed = [False] * graph.n
    reverse: list[int] = []
    for _ in range(graph.n):
        pick = -1
        for v in range(graph.n):
            if not removed[v] and (pick == -1 or deg[v] < deg[pick]):
                pick = v
        if deg[pick] > d:
            return None
        removed[pick] = True
        reverse.append(pick)
        for w in adj[pick]:
            if not removed[w]:
                deg[w] -= 1
    reverse.reverse()
    return reverse
