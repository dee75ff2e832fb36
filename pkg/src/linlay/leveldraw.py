"""Layer values, face types, and leveled bag drawings for 2-degenerate
quadrangulations.

Pass 1 (layer_assignment) walks the construction top-down: every sibling
group (vertices sharing a parent pair inside one face) is relabeled
u_1..u_k along the rotation at its parents, virtually reinserted in the
order u_1, u_k, u_2, ..., u_{k-1}, and assigned layer values
lambda(u_i) = 1 + min over the insertion face.  The face types that arise
are exactly <0000>, <0010>, <1010>, <0011>, <0111>, <1011>, <1111> after
subtracting the base value.

Pass 2 builds, for every face whose four corners share one layer value L
(genuine or the virtual 4-walks spanned by a group), a leveled planar
drawing of the (L+1)-subgraph inside it.  Connected components of each
layer-induced subgraph become bags of a tree-partition of shadow width at
most 4; each bag drawing is the restriction of its face drawing.

Deviation from the source construction, on purpose: when a <1010> face
holds a single child (u_1 = u_k), placing it on level 0 would create
intra-level edges, which a strict leveled drawing does not allow.  The
child goes to level 1 instead and the subtree below it grows downward
from level 0; every drawing is checked by validate_leveled_drawing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .generators import ConstructionSequence, InsertChild, Replay, replay
from .graphs import EmbeddedGraph, frozenset_pair
from .layouts import LeveledDrawing

VALID_TAGS = {"0000", "0010", "1010", "0011", "0111", "1011", "1111"}


class LayerError(ValueError):
    """Raised when a construction is not a 2-degenerate quadrangulation or
    the face-type system is violated (which would signal an upstream bug)."""


Pair = tuple[int, int]


@dataclass
class GroupRec:
    """A sibling group: all children of one parent pair inside one face."""

    pair: Pair
    host_face: int
    walk: tuple[int, int, int, int] = ()  # oriented (v, w, v2, w2)
    members: tuple[int, ...] = ()  # u_1..u_k by rotation at v from the w side
    tag: str = ""
    consumed: bool = False


@dataclass
class LayerAssignment:
    lam: list[int]
    face_types: dict[int, str]
    groups: dict[Pair, GroupRec]
    base_walk: tuple[int, int, int, int] | None  # oriented root walk
    base_pair: Pair | None
    replay: Replay


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _pairkey(a: int, b: int) -> Pair:
    return frozenset_pair(a, b)


class _Ctx:
    """Rotation / edge lookups over a finished replay."""

    def __init__(self, r: Replay):
        self.r = r
        self.eid: dict[Pair, int] = {
            _pairkey(a, b): i for i, (a, b) in enumerate(r.edges)
        }
        self.rotpos: list[dict[int, int]] = [
            {e: i for i, e in enumerate(rot)} for rot in r.rot
        ]

    def fan_order(
        self, center: int, side1: int, side2: int, members: list[int]
    ) -> list[int]:
        """Members sorted along the rotation arc at center from side1 to side2.

        The arc between the two side edges that contains all member edges is
        selected; members are returned nearest-side1 first.
        """
        if not members:
            return []
        rot = self.r.rot[center]
        n = len(rot)
        i1 = self.rotpos[center][self.eid[_pairkey(center, side1)]]
        i2 = self.rotpos[center][self.eid[_pairkey(center, side2)]]
        want = {self.eid[_pairkey(center, u)] for u in members}
        arc: list[int] = []
        j = (i1 + 1) % n
        while j != i2:
            arc.append(rot[j])
            j = (j + 1) % n
        picked = [e for e in arc if e in want]
        if len(picked) != len(want):
            arc = []
            j = (i2 + 1) % n
            while j != i1:
                arc.append(rot[j])
                j = (j + 1) % n
            picked = [e for e in arc if e in want]
            picked.reverse()  # so the first member is nearest side1
            if len(picked) != len(want):
                raise LayerError("sibling group is split across both rotation arcs")
        other = {self.eid[_pairkey(center, u)]: u for u in members}
        return [other[e] for e in picked]


def _diagonals(verts: list[int]) -> tuple[Pair, Pair]:
    return _pairkey(verts[0], verts[2]), _pairkey(verts[1], verts[3])


# ---------------------------------------------------------------------------
# Pass 1: layer values and face types
# ---------------------------------------------------------------------------


def layer_assignment(cs: ConstructionSequence) -> LayerAssignment:
    """Layer values per the group-insertion rule; outer square gets 0."""
    if cs.base.n != 4 or any(not isinstance(ev, InsertChild) for ev in cs.events):
        raise LayerError(
            "layer assignment expects a square base and insert_child events"
        )
    r = replay(cs)
    ctx = _Ctx(r)
    lam = [-1] * r.n

    groups = _collect_groups(r)

    inner0 = next(f for f in (set(r.walks) & {0, 1}) if f != r.outer)
    base_verts = [v for v, _ in r.walks[inner0]]
    for v in base_verts:
        lam[v] = 0

    d1, d2 = _diagonals(base_verts)
    with_groups = [d for d in (d1, d2) if d in groups]
    if len(with_groups) > 1:
        raise LayerError("both diagonals of the base face have children")
    face_types: dict[int, str] = {}
    base_pair: Pair | None = None
    base_walk: tuple[int, int, int, int] | None = None

    queue: deque[tuple[Pair, tuple[int, ...]]] = deque()
    if with_groups:
        base_pair = with_groups[0]
        queue.append((base_pair, tuple(base_verts)))

    while queue:
        pair, walk = queue.popleft()
        grp = groups[pair]
        # orient: v = pair vertex of smaller layer value, w = smaller side
        i = walk.index(pair[0]) if pair[0] in walk else -1
        if i < 0 or walk[(i + 2) % 4] != pair[1]:
            i = walk.index(pair[1])
            if walk[(i + 2) % 4] != pair[0]:
                raise LayerError("group pair is not a diagonal of its face")
        v, w, v2, w2 = walk[i], walk[(i + 1) % 4], walk[(i + 2) % 4], walk[(i + 3) % 4]
        if (lam[v2], v2) < (lam[v], v):
            v, v2 = v2, v
            w, w2 = w2, w
        if (lam[w2], w2) < (lam[w], w):
            w, w2 = w2, w
        members = ctx.fan_order(v, w, w2, list(grp.members))
        k = len(members)
        lam[members[0]] = 1 + min(lam[v], lam[w], lam[v2], lam[w2])
        if k >= 2:
            lam[members[-1]] = 1 + min(
                lam[v], lam[members[0]], lam[v2], lam[w2]
            )
        for t in range(1, k - 1):
            lam[members[t]] = 1 + min(
                lam[members[t - 1]], lam[v], lam[members[-1]], lam[v2]
            )
        base = min(lam[v], lam[w], lam[v2], lam[w2])
        tag = "".join(str(lam[x] - base) for x in (v, w, v2, w2))
        if tag not in VALID_TAGS:
            raise LayerError(f"face {grp.host_face} has layer pattern {tag}")
        grp.walk = (v, w, v2, w2)
        grp.members = tuple(members)
        grp.tag = tag
        face_types[grp.host_face] = tag
        if base_walk is None:
            base_walk = (v, w, v2, w2)
        # child faces and their designated pairs
        for child_walk in (
            [(w, v, members[0], v2)]
            + [(members[t], v, members[t + 1], v2) for t in range(k - 1)]
            + [(members[-1], v, w2, v2)]
        ):
            p = _pairkey(child_walk[0], child_walk[2])
            if p in groups:
                queue.append((p, tuple(child_walk)))

    if base_walk is None:
        base_walk = tuple(base_verts)
    if any(l < 0 for l in lam):
        raise LayerError("unreachable vertices: construction is not rooted")
    return LayerAssignment(
        lam=lam, face_types=face_types, groups=groups,
        base_walk=base_walk, base_pair=base_pair, replay=r,
    )


def _collect_groups(r: Replay) -> dict[Pair, GroupRec]:
    """Group children by parent pair; host = the highest face with that diagonal."""
    raw: dict[Pair, list[int]] = {}
    first_face: dict[Pair, int] = {}
    for v in range(r.base.n, r.n):
        org = r.origin.get(v)
        if org is None:
            raise LayerError(f"vertex {v} has no insertion record")
        key = _pairkey(*org.pair)
        raw.setdefault(key, []).append(v)
        first_face.setdefault(key, org.face)
    groups: dict[Pair, GroupRec] = {}
    for key, members in raw.items():
        f = first_face[key]
        while True:
            p = r.parent.get(f)
            if p is None:
                break
            verts = [x for x, _ in r.walks[p]]
            if key in _diagonals(verts):
                f = p
            else:
                break
        groups[key] = GroupRec(pair=key, host_face=f, members=tuple(members))
    return groups


# ---------------------------------------------------------------------------
# Pass 2: leveled drawings per all-equal-layer face
# ---------------------------------------------------------------------------


@dataclass
class _Slot:
    """Boundary path (a, c, b) of a face (host_v, a, c, b) awaiting children."""

    a: int
    c: int
    b: int
    host_v: int


@dataclass
class UnitDrawing:
    """Drawing of the (L+1)-subgraph inside one all-L 4-walk."""

    level: dict[int, int] = field(default_factory=dict)
    x: dict[int, Fraction] = field(default_factory=dict)


class _Drawer:
    def __init__(self, la: LayerAssignment):
        self.la = la
        self.ctx = _Ctx(la.replay)
        self.lam = la.lam
        self.units: list[UnitDrawing] = []
        self.unit_of: dict[int, int] = {}
        self._cur: UnitDrawing | None = None
        self._cur_idx = -1
        self._unit_queue: deque[tuple[tuple[int, int, int, int], Pair, tuple[int, ...]]] = deque()

    # -- plumbing -----------------------------------------------------------

    def _group(self, a: int, b: int) -> GroupRec | None:
        g = self.la.groups.get(_pairkey(a, b))
        if g is None or g.consumed:
            return None
        return g

    def _take_members(self, a: int, b: int, first_side: int) -> list[int]:
        """Consume the (a,b) group; members ordered from first_side."""
        g = self._group(a, b)
        if g is None:
            return []
        g.consumed = True
        mem = list(g.members)
        if len(mem) > 1:
            v = g.walk[0]
            w = g.walk[1]
            if first_side != w:
                if first_side != g.walk[3]:
                    raise LayerError("side vertex mismatch in group lookup")
                mem.reverse()
        return mem

    def _put(self, v: int, lvl: int, x: Fraction) -> None:
        cur = self._cur
        if v in cur.level:
            if cur.level[v] != lvl:
                raise LayerError(
                    f"vertex {v} placed on two levels ({cur.level[v]}, {lvl})"
                )
            return
        cur.level[v] = lvl
        cur.x[v] = Fraction(x)
        if v in self.unit_of:
            raise LayerError(f"vertex {v} drawn in two units")
        self.unit_of[v] = self._cur_idx

    def _lvl(self, v: int) -> int:
        return self._cur.level[v]

    def _x(self, v: int) -> Fraction:
        return self._cur.x[v]

    def _spread(self, lo: Fraction, hi: Fraction, k: int) -> list[Fraction]:
        return [lo + (hi - lo) * Fraction(t + 1, k + 1) for t in range(k)]

    # -- units ----------------------------------------------------------------

    def run(self) -> None:
        la = self.la
        if la.base_pair is not None:
            grp = la.groups[la.base_pair]
            grp.consumed = True
            self._unit_queue.append((la.base_walk, la.base_pair, grp.members))
        while self._unit_queue:
            walk, pair, members = self._unit_queue.popleft()
            self._draw_unit(walk, pair, members)
        for v in range(la.replay.n):
            if self.lam[v] >= 1 and v not in self.unit_of:
                raise LayerError(f"vertex {v} was never drawn")
        for g in la.groups.values():
            if not g.consumed:
                raise LayerError(f"group {g.pair} never consumed")

    def _spawn(self, walk: tuple[int, int, int, int], a: int, b: int) -> None:
        """Queue the (a, b) group, if any, as a fresh drawing unit."""
        g = self._group(a, b)
        if g is None:
            return
        g.consumed = True
        self._unit_queue.append((walk, _pairkey(a, b), g.members))

    def _draw_unit(
        self,
        walk: tuple[int, int, int, int],
        pair: Pair,
        members: tuple[int, ...],
    ) -> None:
        """<LLLL> face: members on level 0, side pieces around them."""
        lv = {self.lam[v] for v in walk}
        if len(lv) != 1:
            raise LayerError(f"drawing unit walk {walk} is not layer-pure")
        self.units.append(UnitDrawing())
        self._cur = self.units[-1]
        self._cur_idx = len(self.units) - 1

        i = walk.index(pair[0])
        v, w, v2, w2 = walk[i], walk[(i + 1) % 4], walk[(i + 2) % 4], walk[(i + 3) % 4]
        if v2 < v:
            v, v2 = v2, v
            w, w2 = w2, w
        mem = self.ctx.fan_order(v, w, w2, list(members))
        k = len(mem)
        if k == 0:
            return
        slots: deque[_Slot] = deque()
        for j, u in enumerate(mem, start=1):
            self._put(u, 0, Fraction(2 * j))
        # left piece: <0010> face (w, v, u_1, v2), content left of u_1
        self._piece_0010(
            pv=w, pw=v, anchor=mem[0], pw2=v2,
            lo=Fraction(0), hi=Fraction(2), anchor_at_hi=True, slots=slots,
        )
        # middle pieces: <1010> faces (u_j, v, u_j+1, v2)
        for j in range(k - 1):
            self._piece_1010(
                a=mem[j], c=mem[j + 1], side_v=v, side_v2=v2,
                lo=Fraction(2 * (j + 1)), hi=Fraction(2 * (j + 2)), slots=slots,
            )
        # right piece: <0010> face (w2, v, u_k, v2), content right of u_k
        self._piece_0010(
            pv=w2, pw=v, anchor=mem[-1], pw2=v2,
            lo=Fraction(2 * k), hi=Fraction(2 * k + 2), anchor_at_hi=False,
            slots=slots,
        )
        self._run_slots(slots)

    # -- pieces ---------------------------------------------------------------

    def _star_0111(
        self,
        pv: int,
        pw: int,
        pv2: int,
        pw2: int,
        members: list[int],
        sign: int,
        xlo: Fraction,
        xhi: Fraction,
        slots: deque[_Slot],
    ) -> None:
        """<0111>-type face (pv, pw, pv2, pw2): star at pv2 plus its slots.

        pv is the face vertex one layer below (never drawn here); pw, pv2 and
        pw2 must already be placed.  Members go on level(pv2) + sign between
        xlo and xhi, nearest pw first; the boundary paths between consecutive
        star leaves become slots.
        """
        lvl = self._lvl(pv2) + sign
        xs = self._spread(xlo, xhi, len(members))
        if members and self._x(pw) > self._x(pw2):
            xs.reverse()
        for u, x in zip(members, xs):
            self._put(u, lvl, x)
        chain = [pw] + members + [pw2]
        for t in range(len(chain) - 1):
            slots.append(_Slot(a=chain[t], c=pv2, b=chain[t + 1], host_v=pv))

    def _piece_0010(
        self,
        pv: int,
        pw: int,
        anchor: int,
        pw2: int,
        lo: Fraction,
        hi: Fraction,
        anchor_at_hi: bool,
        slots: deque[_Slot],
    ) -> None:
        """<0010> face (pv, pw, anchor, pw2): everything rises from the anchor.

        The anchor (layer value L+1) sits at one zone edge on level 0; the
        group of (pv, anchor) fans upward on the other side.
        """
        mem = self._take_members(pv, anchor, first_side=pw)
        k = len(mem)
        if k == 0:
            return
        ax = hi if anchor_at_hi else lo
        # three stripes between the free zone edge and the anchor
        if anchor_at_hi:
            b1 = lo + (ax - lo) / 3
            b2 = lo + (ax - lo) * Fraction(2, 3)
            z1, z3, z2 = (lo, b1), (b1, b2), (b2, ax)
        else:
            b1 = ax + (hi - ax) * Fraction(2, 3)
            b2 = ax + (hi - ax) / 3
            z1, z3, z2 = (b1, hi), (b2, b1), (ax, b2)
        if k == 1:
            mid = (z1[0] + z2[1]) / 2 if anchor_at_hi else (z2[0] + z1[1]) / 2
            self._put(mem[0], 1, mid)
        else:
            self._put(mem[0], 1, b1)
            self._put(mem[-1], 1, b2)
        # P1: <0011> face (pw, pv, q_1, anchor)
        self._piece_0011(pv=pw, pw=pv, pv2=mem[0], pw2=anchor,
                         lo=z1[0], hi=z1[1], slots=slots)
        # P2: <0011> face (pw2, pv, q_k, anchor)
        self._piece_0011(pv=pw2, pw=pv, pv2=mem[-1], pw2=anchor,
                         lo=z2[0], hi=z2[1], slots=slots)
        if k >= 2:
            # P3: <0111> face (pv, q_1, anchor, q_k) holding the middle members
            self._star_0111(
                pv=pv, pw=mem[0], pv2=anchor, pw2=mem[-1],
                members=mem[1:-1], sign=1, xlo=z3[0], xhi=z3[1], slots=slots,
            )

    def _piece_0011(
        self,
        pv: int,
        pw: int,
        pv2: int,
        pw2: int,
        lo: Fraction,
        hi: Fraction,
        slots: deque[_Slot],
    ) -> None:
        """<0011> face (pv, pw, pv2, pw2): the alternating path of Claim-style
        decomposition; piece i sits on levels >= i - 1.

        pw2 is placed (the anchor); pv2 may već be placed by the caller.
        Odd pieces take stripes from the low side of the zone, even pieces
        from the high side.
        """
        v, w, v2, w2 = pv, pw, pv2, pw2
        zl, zr = lo, hi
        level = self._lvl(pw2)
        odd = True
        while True:
            level += 1
            mem = self._take_members(v, v2, first_side=w)
            if v2 not in self._cur.level:
                # path end (or a fresh path vertex when the zone started empty)
                self._put(v2, level, (zl + zr) / 2)
            if not mem:
                return
            if odd:
                m = (zl + zr) / 2
                stripe = (zl, m)
                zl = m
            else:
                m = (zl + zr) / 2
                stripe = (m, zr)
                zr = m
            self._put(mem[0], level + 1, m)
            self._star_0111(
                pv=v, pw=w2, pv2=v2, pw2=mem[0],
                members=list(reversed(mem[1:])), sign=1,
                xlo=stripe[0], xhi=stripe[1], slots=slots,
            )
            v, w, v2, w2 = w, v, mem[0], v2
            odd = not odd

    def _piece_1010(
        self,
        a: int,
        c: int,
        side_v: int,
        side_v2: int,
        lo: Fraction,
        hi: Fraction,
        slots: deque[_Slot],
    ) -> None:
        """<1010> face (a, side_v, c, side_v2): a, c on level 0 at the zone
        edges; the first child complex grows upward, the last downward."""
        mem = self._take_members(a, c, first_side=min(side_v, side_v2))
        m = len(mem)
        if m == 0:
            return
        top_side = min(side_v, side_v2)
        bot_side = max(side_v, side_v2)
        mid = (lo + hi) / 2
        y1, ym = mem[0], mem[-1]
        self._put(y1, 1, mid)
        if m >= 2:
            self._put(ym, -1, mid)
        # top piece: <0111> face (top_side, a, y1, c)
        self._star_0111(
            pv=top_side, pw=a, pv2=y1, pw2=c,
            members=self._take_members(top_side, y1, first_side=a),
            sign=1, xlo=lo + (mid - lo) / 2, xhi=hi - (hi - mid) / 2,
            slots=slots,
        )
        # bottom piece: <0111> face (bot_side, a, ym, c)
        self._star_0111(
            pv=bot_side, pw=a, pv2=ym, pw2=c,
            members=self._take_members(bot_side, ym, first_side=a),
            sign=-1, xlo=lo + (mid - lo) / 2, xhi=hi - (hi - mid) / 2,
            slots=slots,
        )
        if m >= 3:
            # the middle members live one layer deeper: separate unit
            g = self.la.groups[_pairkey(a, c)]
            self._unit_queue.append(((a, y1, c, ym), _pairkey(a, c), tuple(mem[1:-1])))
        elif m == 2:
            self._spawn((y1, a, ym, c), y1, ym)

    # -- slots ------------------------------------------------------------------

    def _run_slots(self, slots: deque[_Slot]) -> None:
        while slots:
            s = slots.popleft()
            self._process_slot(s, slots)

    def _process_slot(self, s: _Slot, slots: deque[_Slot]) -> None:
        """Fill the <1011> face (host_v, a, c, b): first child of (a, b),
        then the children of (host_v, w_f) fanned around w_f."""
        grp = self._group(s.a, s.b)
        if grp is None:
            return
        mem_all = self._take_members(s.a, s.b, first_side=s.host_v)
        w_f = mem_all[0]
        rest = mem_all[1:]
        la, lc, lb = self._lvl(s.a), self._lvl(s.c), self._lvl(s.b)
        xa, xc, xb = self._x(s.a), self._x(s.c), self._x(s.b)
        if la == lb:
            sign = la - lc
            w_lvl = la + sign
            w_x = (xa + xb) / 2
            kid_lvl = la + 2 * sign
            xlo, xhi = (xa, xb) if xa < xb else (xb, xa)
            self._put(w_f, w_lvl, w_x)
            kids = self._take_members(s.host_v, w_f, first_side=s.a)
            xs = self._spread(xlo, xhi, len(kids))
            if xa > xb:
                xs.reverse()
            for u, x in zip(kids, xs):
                self._put(u, kid_lvl, x)
        else:
            lo_end, hi_end = (s.a, s.b) if la < lb else (s.b, s.a)
            sign = self._lvl(hi_end) - lc
            w_lvl = lc
            w_x = (self._x(lo_end) + xc) / 2
            self._put(w_f, w_lvl, w_x)
            kids = self._take_members(s.host_v, w_f, first_side=s.a)
            kid_lvl = lc + sign
            xs = self._spread(w_x, self._x(hi_end), len(kids))
            if lo_end is s.b:
                xs.reverse()
            for u, x in zip(kids, xs):
                self._put(u, kid_lvl, x)
        chain = [s.a] + kids + [s.b]
        for t in range(len(chain) - 1):
            slots.append(_Slot(a=chain[t], c=w_f, b=chain[t + 1], host_v=s.host_v))
        if rest:
            self._unit_queue.append(
                ((s.a, w_f, s.b, s.c), _pairkey(s.a, s.b), tuple(rest))
            )
        else:
            self._spawn((w_f, s.a, s.c, s.b), w_f, s.c)


def build_unit_drawings(la: LayerAssignment) -> _Drawer:
    d = _Drawer(la)
    d.run()
    return d


# ---------------------------------------------------------------------------
# Bags: tree-partition of shadow width <= 4 with leveled planar bags
# ---------------------------------------------------------------------------


@dataclass
class BagStructure:
    """Connected components of the layer-induced subgraphs, as a rooted tree."""

    bags: list[list[int]]
    parent: list[int]
    root: int
    bag_of: list[int]
    drawings: list[LeveledDrawing]
    shadow_sets: dict[int, set[int]]


def bag_structure(
    graph: EmbeddedGraph, la: LayerAssignment, drawer: _Drawer
) -> BagStructure:
    lam = la.lam
    n = graph.n
    # components of same-layer subgraphs
    parent_dsu = list(range(n))

    def find(x: int) -> int:
        while parent_dsu[x] != x:
            parent_dsu[x] = parent_dsu[parent_dsu[x]]
            x = parent_dsu[x]
        return x

    for a, b in graph.edges:
        if lam[a] == lam[b]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent_dsu[ra] = rb
    comp_ids: dict[int, int] = {}
    bags: list[list[int]] = []
    for v in range(n):
        r = find(v)
        if r not in comp_ids:
            comp_ids[r] = len(bags)
            bags.append([])
        bags[comp_ids[r]].append(v)
    bag_of = [comp_ids[find(v)] for v in range(n)]

    adj = graph.adjacency_sets()
    root = bag_of[la.base_walk[0]] if la.base_walk else bag_of[0]
    parent = [-1] * len(bags)
    shadow_sets: dict[int, set[int]] = {}
    for x, bag in enumerate(bags):
        if x == root:
            continue
        lv = lam[bag[0]]
        shadow = set()
        for v in bag:
            for u in adj[v]:
                if lam[u] == lv - 1:
                    shadow.add(u)
        if not shadow:
            raise LayerError(f"bag {x} has no neighbors one layer down")
        pbags = {bag_of[u] for u in shadow}
        if len(pbags) != 1:
            raise LayerError(f"bag {x} touches several parent bags")
        parent[x] = pbags.pop()
        shadow_sets[x] = shadow
        if len(shadow) > 4:
            raise LayerError(f"bag {x} has shadow size {len(shadow)} > 4")

    drawings = _bag_drawings(graph, la, drawer, bags, root)
    return BagStructure(
        bags=bags, parent=parent, root=root, bag_of=bag_of,
        drawings=drawings, shadow_sets=shadow_sets,
    )


def _bag_drawings(
    graph: EmbeddedGraph,
    la: LayerAssignment,
    drawer: _Drawer,
    bags: list[list[int]],
    root: int,
) -> list[LeveledDrawing]:
    out: list[LeveledDrawing] = []
    for x, bag in enumerate(bags):
        if x == root:
            v, w, v2, w2 = la.base_walk if la.base_walk else tuple(bag[:4])
            lvl = {w: 0, v: 1, v2: 1, w2: 2}
            pos = {w: 0, v: 0, v2: 1, w2: 0}
            out.append(LeveledDrawing(level=lvl, pos=pos))
            continue
        uids = {drawer.unit_of[v] for v in bag}
        if len(uids) != 1:
            raise LayerError(f"bag {x} spans several drawing units")
        unit = drawer.units[uids.pop()]
        lvl = {v: unit.level[v] for v in bag}
        xs = {v: unit.x[v] for v in bag}
        by_level: dict[int, list[int]] = {}
        for v in bag:
            by_level.setdefault(lvl[v], []).append(v)
        pos: dict[int, int] = {}
        for l, vs in by_level.items():
            vs.sort(key=lambda v: xs[v])
            for i, v in enumerate(vs):
                pos[v] = i
        out.append(LeveledDrawing(level=lvl, pos=pos).normalize())
    return out
