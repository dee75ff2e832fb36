"""H-partitions, tree-partitions, tree decompositions, and the reduction steps
(quadrangulate, layer-respecting triangulation) for bipartite planar graphs.

Every structure that enters a layout constructor passes through a validator
here first; provider-supplied partitions are never trusted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graphs import (
    EmbeddedGraph,
    EmbeddingError,
    Layering,
    bfs_layering,
    bipartite_coloring,
    check_quadrangulation,
    frozenset_pair,
    is_bichromatic,
    trace_faces,
    validate_layering,
)


class PartitionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HPartition:
    """Partition of V(G) into bags indexed by the nodes of a host graph H."""

    host_n: int
    host_edges: tuple[tuple[int, int], ...]
    bags: tuple[tuple[int, ...], ...]

    def bag_of(self, n_vertices: int) -> list[int]:
        out = [-1] * n_vertices
        for x, bag in enumerate(self.bags):
            for v in bag:
                out[v] = x
        return out

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def to_json_dict(self) -> dict:
        return {
            "host_edges": [list(e) for e in self.host_edges],
            "bags": [list(b) for b in self.bags],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "HPartition":
        bags = tuple(tuple(int(v) for v in b) for b in d["bags"])
        edges = tuple((int(a), int(b)) for a, b in d["host_edges"])
        host_n = len(bags)
        return HPartition(host_n=host_n, host_edges=edges, bags=bags)


@dataclass(frozen=True)
class TreePartition:
    """H-partition whose host is a rooted tree, given by parent pointers."""

    partition: HPartition
    root: int
    parent: tuple[int, ...]  # parent[x] for x != root; parent[root] == -1

    def children(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.partition.host_n)]
        for x, p in enumerate(self.parent):
            if p >= 0:
                out[p].append(x)
        return out

    def to_json_dict(self) -> dict:
        d = self.partition.to_json_dict()
        d["root"] = self.root
        d["parent"] = list(self.parent)
        return d

    @staticmethod
    def from_json_dict(d: dict) -> "TreePartition":
        hp = HPartition.from_json_dict(d)
        return TreePartition(
            partition=hp, root=int(d["root"]),
            parent=tuple(int(p) for p in d["parent"]),
        )


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree plus (non-disjoint) bags; width = max bag size - 1."""

    tree_n: int
    tree_edges: tuple[tuple[int, int], ...]
    bags: tuple[tuple[int, ...], ...]

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def to_json_dict(self) -> dict:
        return {
            "tree_edges": [list(e) for e in self.tree_edges],
            "bags": [list(b) for b in self.bags],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "TreeDecomposition":
        bags = tuple(tuple(int(v) for v in b) for b in d["bags"])
        return TreeDecomposition(
            tree_n=len(bags),
            tree_edges=tuple((int(a), int(b)) for a, b in d["tree_edges"]),
            bags=bags,
        )


@dataclass(frozen=True)
class PartitionReport:
    valid: bool
    width: int = 0
    intra_edges: tuple[int, ...] = ()
    inter_edges: tuple[int, ...] = ()
    problems: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


# ---------------------------------------------------------------------------
# Validators
# ---------------------------------------------------------------------------


def validate_hpartition(graph: EmbeddedGraph, hp: HPartition) -> PartitionReport:
    problems: list[str] = []
    seen: set[int] = set()
    for bag in hp.bags:
        for v in bag:
            if v in seen:
                problems.append(f"vertex {v} appears in two bags")
            seen.add(v)
    if seen != set(range(graph.n)):
        problems.append("bags do not partition V(G)")
    host_adj = {frozenset_pair(a, b) for a, b in hp.host_edges}
    for a, b in hp.host_edges:
        if not (0 <= a < hp.host_n and 0 <= b < hp.host_n):
            problems.append(f"host edge ({a},{b}) out of range")
    bag_of = hp.bag_of(graph.n) if not problems else None
    intra: list[int] = []
    inter: list[int] = []
    if bag_of is not None:
        for i, (u, v) in enumerate(graph.edges):
            x, y = bag_of[u], bag_of[v]
            if x == y:
                intra.append(i)
            elif frozenset_pair(x, y) in host_adj:
                inter.append(i)
            else:
                problems.append(
                    f"edge {u}-{v} joins bags {x},{y} not adjacent in H"
                )
    return PartitionReport(
        valid=not problems, width=hp.width(),
        intra_edges=tuple(intra), inter_edges=tuple(inter),
        problems=tuple(problems),
    )


def validate_tree_partition(
    graph: EmbeddedGraph, tp: TreePartition
) -> PartitionReport:
    base = validate_hpartition(graph, tp.partition)
    problems = list(base.problems)
    n = tp.partition.host_n
    if not (0 <= tp.root < n) or len(tp.parent) != n:
        problems.append("bad root/parent data")
    else:
        if tp.parent[tp.root] != -1:
            problems.append("root must have parent -1")
        for x in range(n):
            p = tp.parent[x]
            if x == tp.root:
                continue
            if not (0 <= p < n):
                problems.append(f"node {x} has invalid parent")
        # host edges must be exactly the parent links
        want = {
            frozenset_pair(x, tp.parent[x]) for x in range(n) if x != tp.root
        }
        have = {frozenset_pair(a, b) for a, b in tp.partition.host_edges}
        if want != have:
            problems.append("host edges differ from the parent links")
        # acyclic + connected: walk up from every node
        for x in range(n):
            hops, y = 0, x
            while y != tp.root and hops <= n:
                y = tp.parent[y]
                hops += 1
            if y != tp.root:
                problems.append(f"node {x} does not reach the root")
                break
    return PartitionReport(
        valid=not problems and base.valid,
        width=base.width, intra_edges=base.intra_edges,
        inter_edges=base.inter_edges, problems=tuple(problems),
    )


def validate_tree_decomposition(
    graph: EmbeddedGraph, td: TreeDecomposition
) -> PartitionReport:
    problems: list[str] = []
    n = td.tree_n
    if len(td.bags) != n:
        problems.append("bag count differs from tree size")
    adj: list[set[int]] = [set() for _ in range(n)]
    for a, b in td.tree_edges:
        if not (0 <= a < n and 0 <= b < n):
            problems.append(f"tree edge ({a},{b}) out of range")
            continue
        adj[a].add(b)
        adj[b].add(a)
    if n > 0 and len(td.tree_edges) != n - 1:
        problems.append("tree must have exactly n-1 edges")
    if n > 0:
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != n:
            problems.append("tree is not connected")
    covered: set[int] = set()
    for bag in td.bags:
        covered.update(bag)
    if covered != set(range(graph.n)):
        problems.append("bags do not cover V(G)")
    bag_sets = [set(b) for b in td.bags]
    for u, v in graph.edges:
        if not any(u in b and v in b for b in bag_sets):
            problems.append(f"edge {u}-{v} is in no bag")
    for v in range(graph.n):
        nodes = [x for x in range(n) if v in bag_sets[x]]
        if not nodes:
            continue
        reach = {nodes[0]}
        queue = deque([nodes[0]])
        node_set = set(nodes)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in node_set and y not in reach:
                    reach.add(y)
                    queue.append(y)
        if reach != node_set:
            problems.append(f"bags containing vertex {v} are not connected in T")
    return PartitionReport(
        valid=not problems, width=td.width(), problems=tuple(problems)
    )


# ---------------------------------------------------------------------------
# Layered width, shadows, nice orders
# ---------------------------------------------------------------------------


def layered_width(hp: HPartition, layering: Layering) -> int:
    """max over bags x layers of |bag ∩ layer|."""
    lof = layering.layer_of()
    best = 0
    for bag in hp.bags:
        counts: dict[int, int] = {}
        for v in bag:
            counts[lof[v]] = counts.get(lof[v], 0) + 1
        if counts:
            best = max(best, max(counts.values()))
    return best


def bichromatic_layered_width(
    graph: EmbeddedGraph, hp: HPartition, layering: Layering
) -> int:
    """layered_width after insisting the layering is bichromatic."""
    if graph.coloring is None:
        raise PartitionError("graph carries no 2-coloring")
    if not is_bichromatic(layering, graph.coloring):
        raise PartitionError("layering is not bichromatic")
    return layered_width(hp, layering)


def shadows(tp: TreePartition, graph: EmbeddedGraph) -> dict[int, set[int]]:
    """shadow(x) = vertices of the parent bag adjacent to bag x (root skipped)."""
    adj = graph.adjacency_sets()
    bag_of = tp.partition.bag_of(graph.n)
    out: dict[int, set[int]] = {}
    for x in range(tp.partition.host_n):
        p = tp.parent[x]
        if p < 0:
            continue
        sh: set[int] = set()
        for v in tp.partition.bags[x]:
            for w in adj[v]:
                if bag_of[w] == p:
                    sh.add(w)
        out[x] = sh
    return out


def shadow_width(tp: TreePartition, graph: EmbeddedGraph) -> int:
    return max((len(s) for s in shadows(tp, graph).values()), default=0)


def nice_order_check(
    shadow_family: list[set[int]], position: dict[int, int]
) -> bool:
    """True iff the family is totally ordered by positionwise comparison.

    C_x precedes C_y when the i-th smallest of C_x is at most the i-th
    smallest of C_y for every i up to the shorter length; the family is
    nicely ordered when every pair is comparable.
    """
    ranked = [sorted(position[v] for v in s) for s in shadow_family]
    for i in range(len(ranked)):
        for j in range(i + 1, len(ranked)):
            a, b = ranked[i], ranked[j]
            k = min(len(a), len(b))
            le = all(a[t] <= b[t] for t in range(k))
            ge = all(a[t] >= b[t] for t in range(k))
            if not (le or ge):
                return False
    return True


def sort_nicely(
    items: list, shadow_of, position: dict[int, int], node_id
) -> list:
    """Sort items by their shadows' positionwise order; ties by node id."""
    def key(it):
        return (sorted(position[v] for v in shadow_of(it)), node_id(it))

    return sorted(items, key=key)


# ---------------------------------------------------------------------------
# Reduction steps: quadrangulate and layer-respecting triangulation
# ---------------------------------------------------------------------------


def quadrangulate(
    graph: EmbeddedGraph, include_outer: bool = False
) -> EmbeddedGraph:
    """Chord every inner face of length > 4 down to quadrangles.

    In a face walk v_0 ... v_{2k-1} the chord (v_0, v_3) splits off one
    quadrangle and leaves a (2k-2)-face to recurse on; distance-3 chords
    preserve bipartiteness.  Input edges are kept; only chords are added.
    The outer face is chorded too only when ``include_outer`` is set.
    """
    if bipartite_coloring(graph) is None:
        raise PartitionError("quadrangulate requires a bipartite graph")
    faces = trace_faces(graph)
    if any(len(f) < 4 for f in faces):
        raise PartitionError("faces of length 2 cannot be quadrangulated")
    edges = list(graph.edges)
    rot = [list(r) for r in graph.rotations]
    existing = {frozenset_pair(a, b) for a, b in edges}
    # face walks as (vertex, edge) lists; maintained manually
    work = deque(
        [list(f), 0]
        for i, f in enumerate(faces)
        if include_outer or i != graph.outer_face
    )
    while work:
        walk, tries = work.popleft()
        if len(walk) <= 4:
            continue
        v0, e01 = walk[0]
        v3 = walk[3][0]
        if frozenset_pair(v0, v3) in existing or len(set([v0, v3])) < 2:
            # chord exists elsewhere in the graph: rotate the walk and retry
            if tries >= len(walk):
                raise PartitionError(
                    f"no admissible chord in face {[v for v, _ in walk]}"
                )
            work.appendleft([walk[1:] + walk[:1], tries + 1])
            continue
        chord = len(edges)
        edges.append((v0, v3))
        existing.add(frozenset_pair(v0, v3))
        # rotation: before the edge leaving v0 on this walk, after the edge
        # arriving at v3
        r0 = rot[v0]
        r0.insert(r0.index(walk[-1][1]) + 1, chord)
        r3 = rot[v3]
        r3.insert(r3.index(walk[2][1]) + 1, chord)
        work.appendleft([[(v0, chord)] + walk[3:], 0])
    out = EmbeddedGraph(
        n=graph.n, edges=tuple(edges),
        rotations=tuple(tuple(r) for r in rot),
        outer_face=0, coloring=bipartite_coloring(graph),
    )
    out = _redesignate_outer(out, graph)
    rep = check_quadrangulation(out, include_outer=include_outer)
    if not rep.ok:
        raise PartitionError(f"quadrangulation failed: {rep}")
    return out


def _redesignate_outer(out: EmbeddedGraph, src: EmbeddedGraph) -> EmbeddedGraph:
    """Point outer_face at a face inside the original outer region."""
    src_faces = trace_faces(src)
    if not src_faces:
        return out
    v0, e0 = src_faces[src.outer_face][0]
    for i, f in enumerate(trace_faces(out)):
        if (v0, e0) in f:
            return EmbeddedGraph(
                n=out.n, edges=out.edges, rotations=out.rotations,
                outer_face=i, coloring=out.coloring,
            )
    raise EmbeddingError("outer face lost during augmentation")


def triangulate_layer_respecting(
    quad: EmbeddedGraph, layering: Layering
) -> EmbeddedGraph:
    """Add the same-layer diagonal of every quadrangle.

    In a BFS layering each quadrangle reads (i, i+1, i+2, i+1) or
    (i, i+1, i, i+1) around its boundary; the diagonal joins the two
    vertices in the deeper same-layer pair, so the input layering stays
    valid for the triangulation.

    When two faces select the same vertex pair, only the first insertion
    happens (this graph type is simple); the second face then already
    carries its diagonal as a graph edge and is left as is.
    """
    rep = check_quadrangulation(quad, include_outer=False)
    if not rep.ok:
        raise PartitionError("triangulate_layer_respecting expects a quadrangulation")
    if not validate_layering(quad, layering):
        raise PartitionError("layering invalid for this graph")
    lof = layering.layer_of()
    edges = list(quad.edges)
    rot = [list(r) for r in quad.rotations]
    existing = {frozenset_pair(a, b) for a, b in edges}
    for fi, walk in enumerate(trace_faces(quad)):
        if len(walk) != 4 and fi == quad.outer_face:
            continue
        verts = [v for v, _ in walk]
        lv = [lof[v] for v in verts]
        cand = []
        for i in (0, 1):
            if lv[i] == lv[i + 2]:
                cand.append(i)
        if not cand:
            raise PartitionError(
                f"face {verts} does not match either BFS quadrangle case"
            )
        i = max(cand, key=lambda i: lv[i])
        a, b = verts[i], verts[i + 2]
        if frozenset_pair(a, b) in existing:
            continue
        diag = len(edges)
        edges.append((a, b))
        existing.add(frozenset_pair(a, b))
        ra = rot[a]
        ra.insert(ra.index(walk[(i - 1) % 4][1]) + 1, diag)
        rb = rot[b]
        rb.insert(rb.index(walk[(i + 1) % 4][1]) + 1, diag)
    out = EmbeddedGraph(
        n=quad.n, edges=tuple(edges),
        rotations=tuple(tuple(r) for r in rot), outer_face=0,
    )
    if not validate_layering(out, layering):
        raise PartitionError("layering broken by triangulation")
    return _redesignate_outer(out, quad)


# ---------------------------------------------------------------------------
# Fallback partition provider
# ---------------------------------------------------------------------------


def fallback_bfs_provider(
    graph: EmbeddedGraph, root: int = 0
) -> tuple[HPartition, Layering]:
    """Naive H-partition: connected components of each BFS layer become bags.

    Exists so pipelines needing an external low-layered-width partition can
    run end to end; the achieved layered width is measured, never assumed.
    """
    layering = bfs_layering(graph, root)
    adj = graph.adjacency_sets()
    lof = layering.layer_of()
    bag_id = [-1] * graph.n
    bags: list[list[int]] = []
    for layer in layering.layers:
        for v in layer:
            if bag_id[v] != -1:
                continue
            comp = [v]
            bag_id[v] = len(bags)
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if lof[w] == lof[u] and bag_id[w] == -1:
                        bag_id[w] = len(bags)
                        comp.append(w)
                        queue.append(w)
            bags.append(sorted(comp))
    host_edges = set()
    for u, v in graph.edges:
        if bag_id[u] != bag_id[v]:
            host_edges.add(frozenset_pair(bag_id[u], bag_id[v]))
    hp = HPartition(
        host_n=len(bags),
        host_edges=tuple(sorted(host_edges)),
        bags=tuple(tuple(b) for b in bags),
    )
    return hp, layering
