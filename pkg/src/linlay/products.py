"""Product-structure certificates for stacked families.

From a construction sequence we derive an H-partition (one bag per insertion
event), a tree decomposition of the host H, and, for stacked quadrangulations,
a C4-coordinate labeling certifying containment in H x C4 (strong product).
All certificates are checked by verify_subgraph_of_product / the partition
validators; nothing is accepted on faith.
"""

from __future__ import annotations

from dataclasses import dataclass

from .generators import (
    ConstructionError,
    ConstructionSequence,
    InsertChild,
    Replay,
    StackCycle,
    StackVertex,
    replay,
    strong_product,
)
from .graphs import EmbeddedGraph, frozenset_pair
from .layouts import QUEUE, LinearLayout, Page, nesting_height_partition
from .partitions import HPartition, TreeDecomposition


class CertificateError(ValueError):
    pass


# ---------------------------------------------------------------------------
# H-partition and tree decomposition from a construction (Thms on stacking)
# ---------------------------------------------------------------------------


def hpartition_from_construction(
    cs: ConstructionSequence,
) -> tuple[HPartition, TreeDecomposition]:
    """One bag per insertion event; tree decomposition bags follow the faces.

    The base contributes singleton bags when every event inserts a single
    vertex (so s = 1 families get width-1 partitions with H isomorphic to G);
    otherwise the base is one bag.  Each event adds a tree node whose bag
    holds the host nodes meeting the target face plus the new node, hung
    below the node recorded for that face.
    """
    r = replay(cs)
    singleton_base = all(
        isinstance(ev, (InsertChild, StackVertex)) for ev in cs.events
    )
    bag_of: list[int] = [-1] * r.n
    bags: list[list[int]] = []
    if singleton_base:
        for v in range(cs.base.n):
            bag_of[v] = len(bags)
            bags.append([v])
    else:
        for v in range(cs.base.n):
            bag_of[v] = 0
        bags.append(list(range(cs.base.n)))

    td_bags: list[set[int]] = [set(range(len(bags)))]
    td_edges: list[tuple[int, int]] = []
    node_of_face: dict[int, int] = {f: 0 for f in r.parent if r.parent[f] is None}

    # second pass over the events to attribute vertices and faces
    r2 = Replay(cs.base)
    for ev in cs.events:
        faces_before = len(r2.walks)
        if isinstance(ev, (InsertChild, StackVertex)):
            new_vertices = [ev.vertex]
        else:
            new_vertices = list(ev.vertices)
        walk = r2.walks[ev.face]
        face_nodes = {bag_of[v] for v, _ in walk}
        r2.apply(ev)
        x = len(bags)
        bags.append(list(new_vertices))
        for v in new_vertices:
            bag_of[v] = x
        y_f = node_of_face[ev.face]
        y = len(td_bags)
        td_bags.append(set(face_nodes) | {x})
        td_edges.append((y_f, y))
        for f in range(faces_before, len(r2.walks)):
            node_of_face[f] = y

    host_edges = set()
    for u, v in r2.edges:
        if bag_of[u] != bag_of[v]:
            host_edges.add(frozenset_pair(bag_of[u], bag_of[v]))
    hp = HPartition(
        host_n=len(bags),
        host_edges=tuple(sorted(host_edges)),
        bags=tuple(tuple(sorted(b)) for b in bags),
    )
    td = TreeDecomposition(
        tree_n=len(td_bags),
        tree_edges=tuple(td_edges),
        bags=tuple(tuple(sorted(b)) for b in td_bags),
    )
    return hp, td


# ---------------------------------------------------------------------------
# C4 labeling (stacked quadrangulations inside H x C4)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductEmbedding:
    """vertex -> (host node, factor coordinate)."""

    assignment: tuple[tuple[int, int], ...]
    factor: str | int  # "C4" or the s of K_s

    def to_json_dict(self) -> dict:
        factor = "C4" if self.factor == "C4" else {"Ks": self.factor}
        return {"map": [list(t) for t in self.assignment], "factor": factor}

    @staticmethod
    def from_json_dict(d: dict) -> "ProductEmbedding":
        f = d["factor"]
        factor = "C4" if f == "C4" else int(f["Ks"])
        return ProductEmbedding(
            assignment=tuple((int(a), int(b)) for a, b in d["map"]),
            factor=factor,
        )


# the three face types: around the boundary the labels read (base i dropped)
_FACE_PATTERNS = {
    "a": (0, 1, 2, 3),
    "b": (0, 1, 2, 1),
    "c": (0, 1, 0, 1),
}


def _match_face_type(labels: list[int]) -> tuple[str, int, int, int]:
    """Return (type, base i, start r, direction dir) normalizing the walk.

    Reading positions (r + dir*j) mod 4 for j = 0..3 must give i + pattern.
    Matches are tried in the order a, b, c.
    """
    for name in ("a", "b", "c"):
        pat = _FACE_PATTERNS[name]
        for direction in (1, -1):
            for r in range(4):
                i = labels[r]
                if all(
                    labels[(r + direction * j) % 4] % 4 == (i + pat[j]) % 4
                    for j in range(4)
                ):
                    return name, i, r, direction
    raise CertificateError(f"face labels {labels} match no C4 face type")


def c4_labeling(cs: ConstructionSequence) -> ProductEmbedding:
    """Coordinates in H x C4 for a stacked-quadrangulation construction.

    The starting square is labeled 0,1,2,3 along its face walk.  Every
    stacked square gets consecutive labels with the offset chosen by its
    face's type so each matching edge joins labels differing by exactly 1
    (mod 4).
    """
    if cs.base.n != 4 or any(not isinstance(ev, StackCycle) for ev in cs.events):
        raise CertificateError("c4_labeling expects a stacked-quadrangulation sequence")
    r = Replay(cs.base)
    inner = next(f for f in r.alive if f != r.outer)
    label: dict[int, int] = {}
    node: dict[int, int] = {}
    for j, (v, _) in enumerate(r.walks[inner]):
        label[v] = j
        node[v] = 0
    for idx, ev in enumerate(cs.events):
        walk = r.walks[ev.face]
        boundary = [v for v, _ in walk]
        _, i, start, direction = _match_face_type([label[v] for v in boundary])
        for j in range(4):
            pos = (start + direction * j) % 4
            label[ev.vertices[pos]] = (i + 1 + j) % 4
            node[ev.vertices[pos]] = idx + 1
        r.apply(ev)
    assignment = tuple((node[v], label[v]) for v in range(r.n))
    return ProductEmbedding(assignment=assignment, factor="C4")


@dataclass(frozen=True)
class ProductReport:
    valid: bool
    problems: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def verify_subgraph_of_product(
    graph: EmbeddedGraph,
    host_edges: tuple[tuple[int, int], ...],
    emb: ProductEmbedding,
) -> ProductReport:
    """Check the embedding certificate against the strong-product edge rules."""
    problems: list[str] = []
    if len(emb.assignment) != graph.n:
        return ProductReport(False, ("assignment size differs from V(G)",))
    seen: set[tuple[int, int]] = set()
    for v, key in enumerate(emb.assignment):
        if key in seen:
            problems.append(f"vertices share product position {key}")
        seen.add(key)
    host = {frozenset_pair(a, b) for a, b in host_edges}

    def factor_adjacent(c1: int, c2: int) -> bool:
        if emb.factor == "C4":
            return (c1 - c2) % 4 in (1, 3)
        s = int(emb.factor)
        return c1 != c2 and 0 <= c1 < s and 0 <= c2 < s

    for u, v in graph.edges:
        x1, c1 = emb.assignment[u]
        x2, c2 = emb.assignment[v]
        if x1 == x2:
            if not factor_adjacent(c1, c2):
                problems.append(f"intra-bag edge {u}-{v}: coords {c1},{c2} not adjacent")
        else:
            if frozenset_pair(x1, x2) not in host:
                problems.append(f"edge {u}-{v}: host nodes {x1},{x2} not adjacent")
            if c1 != c2 and not factor_adjacent(c1, c2):
                problems.append(f"edge {u}-{v}: coords {c1},{c2} incompatible")
    return ProductReport(valid=not problems, problems=tuple(problems))


def interbag_label_differences(
    graph: EmbeddedGraph, emb: ProductEmbedding
) -> set[int]:
    """Distinct |label difference| mod 4 values over inter-bag edges."""
    diffs: set[int] = set()
    for u, v in graph.edges:
        x1, c1 = emb.assignment[u]
        x2, c2 = emb.assignment[v]
        if x1 != x2:
            diffs.add(min((c1 - c2) % 4, (c2 - c1) % 4))
    return diffs


# ---------------------------------------------------------------------------
# Queue layout of a strong product
# ---------------------------------------------------------------------------


def product_queue_layout(
    g1, layout1: LinearLayout, g2, layout2: LinearLayout
):
    """Queue layout of g1 x g2 from all-queue layouts of the factors.

    The vertex order replaces every vertex of g2 (in its layout order) by a
    full copy of g1 in its own layout order.  Edges are then split into
    queues by nesting height under that order, which is the minimum possible
    for the order; the page count is asserted by callers against
    |V(g2)| * queues(g1) + queues(g2).
    """
    for lay in (layout1, layout2):
        if any(p.kind != QUEUE for p in lay.pages):
            raise CertificateError("product_queue_layout needs all-queue inputs")
    if g2.n == 1:
        return strong_product(g1, g2), layout1
    prod = strong_product(g1, g2)
    n2 = g2.n
    order = tuple(
        a * n2 + b for b in layout2.order for a in layout1.order
    )
    heights = nesting_height_partition(
        order, list(prod.edges), list(range(len(prod.edges)))
    )
    top = max(heights.values(), default=0)
    pages = []
    for h in range(top + 1):
        members = frozenset(e for e, hh in heights.items() if hh == h)
        pages.append(Page(QUEUE, members))
    return prod, LinearLayout(order=order, pages=tuple(pages))
