"""Replayable construction sequences and graph-family generators.

Every generated graph comes with a ConstructionSequence: a small base graph
plus an ordered event log.  Replaying the log reproduces the graph id-exactly
and yields the face genealogy (which face every event split, and which faces
it created) that the layout constructors consume.

Events keep explicit vertex ids; replay asserts they match creation order, so
serialized sequences round-trip bit-exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graphs import (
    EmbeddedGraph,
    EmbeddingError,
    FaceWalk,
    bipartite_coloring,
    trace_faces,
)


class ConstructionError(ValueError):
    """Raised when an event is invalid at its point of the replay."""


# ---------------------------------------------------------------------------
# Events
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InsertChild:
    """Degree-2 vertex joined to two opposite vertices of a quadrangular face."""

    face: int
    pair: tuple[int, int]
    vertex: int


@dataclass(frozen=True)
class StackVertex:
    """Single vertex joined to >=2 face vertices, given by walk positions."""

    face: int
    positions: tuple[int, ...]
    vertex: int


@dataclass(frozen=True)
class StackCycle:
    """Cycle inserted into an equally long face, matched vertex-by-vertex."""

    face: int
    vertices: tuple[int, ...]


Event = InsertChild | StackVertex | StackCycle


@dataclass(frozen=True)
class ConstructionSequence:
    base: EmbeddedGraph
    events: tuple[Event, ...]

    def to_json_dict(self) -> dict:
        evs = []
        for ev in self.events:
            if isinstance(ev, InsertChild):
                evs.append(
                    {"type": "insert_child", "face": ev.face,
                     "pair": list(ev.pair), "vertex": ev.vertex}
                )
            elif isinstance(ev, StackVertex):
                evs.append(
                    {"type": "stack_vertex", "face": ev.face,
                     "positions": list(ev.positions), "vertex": ev.vertex}
                )
            else:
                evs.append(
                    {"type": "stack_cycle", "face": ev.face,
                     "vertices": list(ev.vertices)}
                )
        return {"base": self.base.to_json_dict(), "events": evs}

    @staticmethod
    def from_json_dict(d: dict) -> "ConstructionSequence":
        events: list[Event] = []
        for ev in d["events"]:
            kind = ev["type"]
            if kind == "insert_child":
                events.append(
                    InsertChild(int(ev["face"]),
                                (int(ev["pair"][0]), int(ev["pair"][1])),
                                int(ev["vertex"]))
                )
            elif kind == "stack_vertex":
                events.append(
                    StackVertex(int(ev["face"]),
                                tuple(int(p) for p in ev["positions"]),
                                int(ev["vertex"]))
                )
            elif kind == "stack_cycle":
                events.append(
                    StackCycle(int(ev["face"]),
                               tuple(int(v) for v in ev["vertices"]))
                )
            else:
                raise ConstructionError(f"unknown event type {kind!r}")
        return ConstructionSequence(
            base=EmbeddedGraph.from_json_dict(d["base"]), events=tuple(events)
        )


# ---------------------------------------------------------------------------
# Replay
# ---------------------------------------------------------------------------


@dataclass
class VertexOrigin:
    pair: tuple[int, int]
    face: int  # face id the vertex was inserted into


class Replay:
    """Mutable plane graph that applies events and records face genealogy.

    Faces carry ids assigned in creation order.  ``walks[f]`` is the face
    boundary as a list of (vertex, edge_id) pairs oriented by the same
    successor convention as :func:`linlay.graphs.trace_faces`; destroyed faces
    keep their walk for genealogy queries.
    """

    def __init__(self, base: EmbeddedGraph):
        self.base = base
        self.n = base.n
        self.edges: list[tuple[int, int]] = list(base.edges)
        self.rot: list[list[int]] = [list(r) for r in base.rotations]
        base_faces = trace_faces(base)
        if not base_faces:
            raise ConstructionError("replay base graph must have at least one edge")
        self.walks: dict[int, list[tuple[int, int]]] = {
            i: list(f) for i, f in enumerate(base_faces)
        }
        self.parent: dict[int, int | None] = {i: None for i in self.walks}
        self.alive: set[int] = set(self.walks)
        self.outer: int = base.outer_face
        if self.outer not in self.alive:
            raise ConstructionError("base outer_face id out of range")
        self.origin: dict[int, VertexOrigin] = {}
        self.log: list[Event] = []

    # -- primitive edits ----------------------------------------------------

    def _new_edge(self, a: int, b: int) -> int:
        self.edges.append((a, b))
        return len(self.edges) - 1

    def _insert_after(self, v: int, anchor_edge: int, new_edge: int) -> None:
        r = self.rot[v]
        r.insert(r.index(anchor_edge) + 1, new_edge)

    def _new_face(self, walk: list[tuple[int, int]], parent: int) -> int:
        fid = len(self.walks)
        self.walks[fid] = walk
        self.parent[fid] = parent
        self.alive.add(fid)
        return fid

    def face_vertices(self, fid: int) -> list[int]:
        return [v for v, _ in self.walks[fid]]

    def _require_alive_inner(self, fid: int) -> list[tuple[int, int]]:
        if fid not in self.alive:
            raise ConstructionError(f"face {fid} does not exist at this point")
        if fid == self.outer:
            raise ConstructionError("events may not target the outer face")
        return self.walks[fid]

    # -- events ---------------------------------------------------------------

    def apply(self, ev: Event) -> None:
        if isinstance(ev, InsertChild):
            self._apply_insert_child(ev)
        elif isinstance(ev, StackVertex):
            self._apply_stack_vertex(ev)
        elif isinstance(ev, StackCycle):
            self._apply_stack_cycle(ev)
        else:  # pragma: no cover - defensive
            raise ConstructionError(f"unknown event {ev!r}")
        self.log.append(ev)

    def _take_vertex_id(self, want: int) -> int:
        if want != self.n:
            raise ConstructionError(
                f"event vertex id {want} out of order (expected {self.n})"
            )
        self.n += 1
        self.rot.append([])
        return want

    def _apply_insert_child(self, ev: InsertChild) -> None:
        walk = self._require_alive_inner(ev.face)
        if len(walk) != 4:
            raise ConstructionError("insert_child requires a quadrangular face")
        verts = [v for v, _ in walk]
        p, q = ev.pair
        if p not in verts or q not in verts:
            raise ConstructionError(f"pair {ev.pair} not on face {ev.face}")
        i = verts.index(p)
        if verts[(i + 2) % 4] != q:
            raise ConstructionError(f"pair {ev.pair} is not a diagonal of face {ev.face}")
        self._stack_vertex_at(ev.face, (i, (i + 2) % 4), ev.vertex)
        self.origin[ev.vertex] = VertexOrigin(pair=(p, q), face=ev.face)

    def _apply_stack_vertex(self, ev: StackVertex) -> None:
        walk = self._require_alive_inner(ev.face)
        m = len(walk)
        pos = tuple(sorted(set(ev.positions)))
        if pos != tuple(sorted(ev.positions)) or len(pos) < 2:
            raise ConstructionError("stack_vertex needs >=2 distinct positions")
        if pos[0] < 0 or pos[-1] >= m:
            raise ConstructionError("attachment position out of face range")
        self._stack_vertex_at(ev.face, pos, ev.vertex)

    def _stack_vertex_at(
        self, fid: int, pos: tuple[int, ...], vid: int
    ) -> None:
        walk = self.walks[fid]
        m = len(walk)
        x = self._take_vertex_id(vid)
        attach = {}
        for p in pos:
            attach[p] = self._new_edge(walk[p][0], x)
        # At each attachment w_p the new edge sits between the walk edge
        # arriving at w_p and the one leaving it.
        for p in pos:
            self._insert_after(walk[p][0], walk[(p - 1) % m][1], attach[p])
        self.rot[x] = [attach[p] for p in reversed(pos)]
        self.alive.discard(fid)
        r = len(pos)
        for i in range(r):
            a, b = pos[i], pos[(i + 1) % r]
            new_walk = [(x, attach[a])]
            j = a
            while j != b:
                new_walk.append(walk[j])
                j = (j + 1) % m
            new_walk.append((walk[b][0], attach[b]))
            self._new_face(new_walk, fid)

    def _apply_stack_cycle(self, ev: StackCycle) -> None:
        walk = self._require_alive_inner(ev.face)
        m = len(walk)
        if len(ev.vertices) != m:
            raise ConstructionError("stack_cycle needs one new vertex per face vertex")
        if m < 3:
            raise ConstructionError("stack_cycle needs a face of length >= 3")
        s = [self._take_vertex_id(v) for v in ev.vertices]
        match = [self._new_edge(walk[j][0], s[j]) for j in range(m)]
        cyc = [self._new_edge(s[j], s[(j + 1) % m]) for j in range(m)]
        for j in range(m):
            self._insert_after(walk[j][0], walk[(j - 1) % m][1], match[j])
            self.rot[s[j]] = [cyc[j], match[j], cyc[(j - 1) % m]]
        self.alive.discard(ev.face)
        for j in range(m):
            jn = (j + 1) % m
            self._new_face(
                [
                    (walk[j][0], walk[j][1]),
                    (walk[jn][0], match[jn]),
                    (s[jn], cyc[j]),
                    (s[j], match[j]),
                ],
                ev.face,
            )
        self._new_face([(s[j], cyc[j]) for j in range(m)], ev.face)

    # -- results --------------------------------------------------------------

    def freeze(self) -> EmbeddedGraph:
        g = EmbeddedGraph(
            n=self.n,
            edges=tuple(self.edges),
            rotations=tuple(tuple(r) for r in self.rot),
            outer_face=0,
        )
        outer_id = self._trace_index_of(g, self.outer)
        coloring = bipartite_coloring(g)
        return EmbeddedGraph(
            n=g.n, edges=g.edges, rotations=g.rotations,
            outer_face=outer_id, coloring=coloring,
        )

    def _trace_index_of(self, g: EmbeddedGraph, fid: int) -> int:
        want = set()
        walk = self.walks[fid]
        for v, e in walk:
            want.add((v, e))
        for i, f in enumerate(trace_faces(g)):
            if set(f) == want:
                return i
        raise EmbeddingError("maintained face not found among traced faces")

    def check_face_consistency(self) -> bool:
        """Maintained alive faces match a fresh trace (used by tests)."""
        g = EmbeddedGraph(
            n=self.n, edges=tuple(self.edges),
            rotations=tuple(tuple(r) for r in self.rot), outer_face=0,
        )
        traced = {frozenset(f) for f in trace_faces(g)}
        mine = {frozenset(self.walks[f]) for f in self.alive}
        return traced == mine

    def sequence(self) -> ConstructionSequence:
        return ConstructionSequence(base=self.base, events=tuple(self.log))


def replay(cs: ConstructionSequence) -> Replay:
    r = Replay(cs.base)
    for ev in cs.events:
        r.apply(ev)
    return r


# ---------------------------------------------------------------------------
# Base graphs
# ---------------------------------------------------------------------------


def base_square() -> EmbeddedGraph:
    """Square on ids 0..3 with face walk (0, 2, 1, 3); face 1 is outer."""
    edges = ((0, 2), (2, 1), (1, 3), (3, 0))
    rotations = ((0, 3), (1, 2), (0, 1), (2, 3))
    return EmbeddedGraph(
        n=4, edges=edges, rotations=rotations, outer_face=1,
        coloring=(0, 0, 1, 1),
    )


def base_triangle() -> EmbeddedGraph:
    edges = ((0, 1), (1, 2), (2, 0))
    rotations = ((0, 2), (0, 1), (1, 2))
    return EmbeddedGraph(n=3, edges=edges, rotations=rotations, outer_face=1)


def base_polygon(m: int) -> EmbeddedGraph:
    """Cycle 0-1-...-(m-1) with the second traced face designated outer."""
    edges = tuple((i, (i + 1) % m) for i in range(m))
    rotations = tuple(((i - 1) % m, i) for i in range(m))
    return EmbeddedGraph(n=m, edges=edges, rotations=rotations, outer_face=1)


# ---------------------------------------------------------------------------
# G_d(w)
# ---------------------------------------------------------------------------


def gen_gdw(
    d: int, w: int, count_mode: str = "literal"
) -> tuple[EmbeddedGraph, ConstructionSequence | None]:
    """The 2-degenerate quadrangulation family used for the lower bounds.

    ``literal`` follows the recursive definition word for word: two starting
    vertices, then w new vertices into each inner face per round, joined to
    the two deepest vertices of that face (or to the unique deepest vertex
    and its opposite).  ``paper`` is the alternative reading that reproduces
    the reported instance sizes (w**d + 3 vertices): a starting square whose
    inner face, and every face thereafter, receives w - 1 new vertices per
    round.  See gdw_vertex_count for the closed forms.

    For d >= 1 and w >= 2 the construction is emitted re-rooted at the outer
    4-cycle so the sequence starts from a square base; vertex ids follow that
    creation order, with the two original vertices as ids 0 and 1.  Degenerate
    parameter combinations return the bare graph and no sequence.
    """
    if count_mode not in ("literal", "paper"):
        raise ValueError("count_mode must be 'literal' or 'paper'")
    if d < 0 or w < 1:
        raise ValueError("need d >= 0 and w >= 1")
    if count_mode == "literal" and (d == 0 or w == 1):
        return _gdw_degenerate(d, w), None

    r = Replay(base_square())
    # ids: 0, 1 = the original depth-0 pair; 2, 3 = its first and last child.
    depth = {0: 0, 1: 0, 2: 1, 3: 1}
    inner0 = 0 if r.outer != 0 else 1

    for rnd in range(1, d + 1):
        faces = [inner0] if rnd == 1 else sorted(f for f in r.alive if f != r.outer)
        if count_mode == "literal":
            # round 1 adds only the middle children: ids 2 and 3 already
            # stand for the first and last of the w children of (0, 1)
            k = w - 2 if rnd == 1 else w
        else:
            k = w - 1
        for fid in faces:
            verts = r.face_vertices(fid)
            pair = (0, 1) if rnd == 1 else _gdw_pair(verts, depth)
            target = fid
            for _ in range(k):
                vid = r.n
                r.apply(InsertChild(face=target, pair=pair, vertex=vid))
                depth[vid] = rnd
                # fan the next sibling toward the last created face
                target = len(r.walks) - 1
    return r.freeze(), r.sequence()


def _gdw_pair(verts: list[int], depth: dict[int, int]) -> tuple[int, int]:
    """The two deepest face vertices, or the deepest one and its opposite."""
    dmax = max(depth[v] for v in verts)
    deepest = [i for i, v in enumerate(verts) if depth[v] == dmax]
    if len(deepest) >= 2:
        i = deepest[0]
        j = next(j for j in deepest[1:] if (j - i) % 2 == 0)
        return (verts[i], verts[j])
    i = deepest[0]
    return (verts[i], verts[(i + 2) % 4])


def _gdw_degenerate(d: int, w: int) -> EmbeddedGraph:
    if d == 0:
        return EmbeddedGraph(n=2, edges=(), rotations=((), ()), outer_face=0)
    # w == 1: a path 0 - 2 - 1, constant for every further round.
    edges = ((0, 2), (2, 1))
    rotations = ((0,), (1,), (0, 1))
    g = EmbeddedGraph(n=3, edges=edges, rotations=rotations, outer_face=0)
    return EmbeddedGraph(
        n=3, edges=edges, rotations=rotations, outer_face=0,
        coloring=bipartite_coloring(g),
    )


def gdw_vertex_count(d: int, w: int, count_mode: str = "literal") -> int:
    """Closed-form size of G_d(w) under either reading of the definition."""
    if count_mode == "paper":
        return w**d + 3
    if d == 0:
        return 2
    if w == 1:
        return 3
    n, faces = 2 + w, w - 1
    for _ in range(2, d + 1):
        n += w * faces
        faces *= w + 1
    return n


# ---------------------------------------------------------------------------
# Stacked families
# ---------------------------------------------------------------------------


def gen_stacked_quadrangulation(
    steps: int, seed: int = 0, script: list[int] | None = None
) -> tuple[EmbeddedGraph, ConstructionSequence]:
    """Square base; each step stacks a square into a face, matched 1-1."""
    r = Replay(base_square())
    rng = random.Random(seed)
    for i in range(steps):
        if script is not None:
            fid = script[i]
        else:
            fid = rng.choice(sorted(f for f in r.alive if f != r.outer))
        vids = tuple(range(r.n, r.n + 4))
        r.apply(StackCycle(face=fid, vertices=vids))
    return r.freeze(), r.sequence()


def gen_planar_3tree(
    steps: int, seed: int = 0, script: list[int] | None = None
) -> tuple[EmbeddedGraph, ConstructionSequence]:
    """Triangle base; each step adds one vertex joined to all of a face."""
    r = Replay(base_triangle())
    rng = random.Random(seed)
    for i in range(steps):
        if script is not None:
            fid = script[i]
        else:
            fid = rng.choice(sorted(f for f in r.alive if f != r.outer))
        r.apply(StackVertex(face=fid, positions=(0, 1, 2), vertex=r.n))
    return r.freeze(), r.sequence()


def gen_2degen_quadrangulation(
    steps: int, seed: int = 0
) -> tuple[EmbeddedGraph, ConstructionSequence]:
    """Square base; each step adds a degree-2 vertex on a random diagonal."""
    r = Replay(base_square())
    rng = random.Random(seed)
    for _ in range(steps):
        fid = rng.choice(sorted(f for f in r.alive if f != r.outer))
        verts = r.face_vertices(fid)
        i = rng.randrange(2)
        pair = (verts[i], verts[i + 2])
        r.apply(InsertChild(face=fid, pair=pair, vertex=r.n))
    return r.freeze(), r.sequence()


def gen_ts_stacked(
    t: int,
    s: int,
    steps: int,
    seed: int = 0,
    matching: bool = False,
    events: list[Event] | None = None,
) -> tuple[EmbeddedGraph, ConstructionSequence]:
    """Random (t,s)-stacked growth from a polygon base.

    Inserted graphs are limited to single vertices (arbitrary attachment
    subsets) and matched cycles; these realize every family the construction
    is used for here (planar 3-trees, stacked quadrangulations, stacked
    octahedra).  The face-size bound <= t is enforced after every event, and
    the matching variant only performs cycle insertions.
    """
    if t < 3 or s < 1 or (matching and s < 3):
        raise ValueError("need t >= 3, s >= 1 (s >= 3 for the matching variant)")
    base = base_polygon(min(s, t)) if matching else base_triangle()
    r = Replay(base)
    rng = random.Random(seed)
    if events is not None:
        for ev in events:
            r.apply(ev)
            _check_ts_bound(r, t)
        return r.freeze(), r.sequence()
    for _ in range(steps):
        fid = rng.choice(sorted(f for f in r.alive if f != r.outer))
        m = len(r.walks[fid])
        if matching:
            if m > s:
                continue
            vids = tuple(range(r.n, r.n + m))
            r.apply(StackCycle(face=fid, vertices=vids))
        else:
            # single-vertex insertion: attach so every new face has <= t sides
            positions = _attachment_positions(rng, m, max_gap=t - 2)
            r.apply(StackVertex(face=fid, positions=positions, vertex=r.n))
        _check_ts_bound(r, t)
    return r.freeze(), r.sequence()


def _attachment_positions(
    rng: random.Random, m: int, max_gap: int
) -> tuple[int, ...]:
    """Positions 0 = p_0 < p_1 < ... < m with every cyclic gap <= max_gap."""
    pos = [0]
    while m - pos[-1] > max_gap:
        step = rng.randint(1, min(max_gap, m - pos[-1] - 1))
        pos.append(pos[-1] + step)
    if len(pos) < 2:
        pos.append(rng.randint(1, m - 1))
    return tuple(pos)


def _check_ts_bound(r: Replay, t: int) -> None:
    for fid in r.alive:
        if fid == r.outer:
            continue
        if len(r.walks[fid]) > t:
            raise ConstructionError(
                f"face {fid} has {len(r.walks[fid])} sides, exceeding t={t}"
            )


# ---------------------------------------------------------------------------
# Strong products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbstractGraph:
    """Plain graph for product arithmetic; no embedding attached."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @staticmethod
    def cycle(m: int) -> "AbstractGraph":
        return AbstractGraph(m, tuple((i, (i + 1) % m) for i in range(m)))

    @staticmethod
    def path(m: int) -> "AbstractGraph":
        return AbstractGraph(m, tuple((i, i + 1) for i in range(m - 1)))

    @staticmethod
    def complete(m: int) -> "AbstractGraph":
        return AbstractGraph(
            m, tuple((i, j) for i in range(m) for j in range(i + 1, m))
        )


@dataclass(frozen=True)
class ProductGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    coords: tuple[tuple[int, int], ...]  # product vertex -> factor pair


def strong_product(g1, g2) -> ProductGraph:
    """Strong product: coordinates adjacent-or-equal in both factors."""
    n1, n2 = g1.n, g2.n
    adj1 = _adj_set(g1)
    adj2 = _adj_set(g2)
    vid = lambda a, b: a * n2 + b
    edges: list[tuple[int, int]] = []
    for a in range(n1):
        for b in range(n2):
            u = vid(a, b)
            for b2 in adj2[b]:
                if b2 > b:
                    edges.append((u, vid(a, b2)))  # same first coordinate
            for a2 in adj1[a]:
                if a2 > a:
                    edges.append((u, vid(a2, b)))  # same second coordinate
                    for b2 in adj2[b]:
                        edges.append((u, vid(a2, b2)))  # both move
    coords = tuple((a, b) for a in range(n1) for b in range(n2))
    return ProductGraph(n=n1 * n2, edges=tuple(sorted(set(
        (min(a, b), max(a, b)) for a, b in edges
    ))), coords=coords)


def _adj_set(g) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj
