"""Realizing representations as integer grid drawings, plus SVG export.

The pipeline follows the classical refinement route: materialize every edge
bend as a corner vertex, wrap the drawing in a rectangular frame joined to
the boundary by one connector, split every remaining reflex corner by
shooting a straight chord across its face, and finally assign coordinates
by longest-path layering over the column/row order graphs (valid once every
face is a rectangle).  Minimum area is not attempted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .model import Dart, Graph, RotationSystem, faces, next_dart, twin
from .ortho import OrthoRep, validate_rep

DIRS = ((1, 0), (0, -1), (-1, 0), (0, 1))   # E, S, W, N; +1 turns clockwise


@dataclass
class GridDrawing:
    coords: dict[str, tuple[int, int]]
    polylines: dict[str, list[tuple[int, int]]]   # per original edge

    def segments(self):
        out = []
        for e, pts in self.polylines.items():
            for a, b in zip(pts, pts[1:]):
                out.append((e, a, b))
        return out


class _Sketch:
    """Mutable unit-edge representation (no edge bends, corners only)."""

    def __init__(self, rep: OrthoRep):
        self.serial = itertools.count()
        self.edges: dict[str, tuple[str, str]] = {}
        self.order: dict[str, list[str]] = {v: [] for v in rep.graph.vertices}
        self.corner: dict[Dart, int] = {}
        self.origin: dict[str, str | None] = {}   # segment -> original edge
        self.dummy: set[str] = set()
        g = rep.graph
        for v in g.vertices:
            self.order[v] = list(rep.rot.order[v])
        self.corner.update(rep.rot_corner)
        # materialize bends: an edge with rotation r on its forward side
        # becomes a chain of |r| corner vertices turning sign(r)
        replacements: dict[str, list[str]] = {}
        for e, (u, v) in g.edges.items():
            r = rep.rot_edge[(e, 0)]
            if r == 0:
                self.edges[e] = (u, v)
                self.origin[e] = e
                continue
            k = abs(r)
            sign = 1 if r > 0 else -1
            bends = [self.fresh_vertex() for _ in range(k)]
            path = [u] + bends + [v]
            seg_ids = []
            prev_seg = None
            for i, (a, b) in enumerate(zip(path, path[1:])):
                seg = f"{e}~{i}"
                self.edges[seg] = (a, b)
                self.origin[seg] = e
                seg_ids.append(seg)
            for i, w in enumerate(bends):
                self.order[w] = [seg_ids[i], seg_ids[i + 1]]
                # forward dart side keeps the face right of u->v
                self.corner[(seg_ids[i], 0)] = sign
                self.corner[(seg_ids[i + 1], 1)] = -sign
            replacements[e] = seg_ids
        for v in g.vertices:
            self.order[v] = [
                replacements.get(e, [e])[0]
                if g.endpoints(e)[0] == v or e not in replacements
                else replacements[e][-1]
                for e in self.order[v]
            ]
        # re-key corners whose in-dart was replaced
        for e, segs in replacements.items():
            if (e, 0) in self.corner:
                self.corner[(segs[-1], 0)] = self.corner.pop((e, 0))
            if (e, 1) in self.corner:
                self.corner[(segs[0], 1)] = self.corner.pop((e, 1))
        self.outer = rep.rot.outer
        if self.outer[0] in replacements:
            segs = replacements[self.outer[0]]
            self.outer = (segs[0], 0) if self.outer[1] == 0 else (segs[-1], 1)

    def fresh_vertex(self) -> str:
        w = f".b{next(self.serial)}"
        self.order[w] = []
        self.dummy.add(w)
        return w

    def fresh_edge(self, a: str, b: str, origin=None) -> str:
        e = f".e{next(self.serial)}"
        self.edges[e] = (a, b)
        self.origin[e] = origin
        return e

    def graph(self) -> Graph:
        return Graph(list(self.order), dict(self.edges))

    def rot(self) -> RotationSystem:
        return RotationSystem({v: tuple(c) for v, c in self.order.items()},
                              self.outer)

    def check(self):
        g = self.graph()
        fl = faces(g, self.rot())
        outer_idx = None
        for i, f in enumerate(fl):
            if self.outer in f:
                outer_idx = i
            total = sum(self.corner[d] for d in f)
            want = -4 if self.outer in f else 4
            if total != want:
                raise AssertionError(f"face sum {total} != {want} during refinement")
        return fl, outer_idx


def _add_frame(sk: _Sketch):
    """Wrap the sketch in a rectangle joined by one connector at a corner
    with at least a straight angle to spare."""
    g = sk.graph()
    fl = faces(g, sk.rot())
    outer_face = next(f for f in fl if sk.outer in f)
    anchor = None
    for d in outer_face:
        if sk.corner[d] <= -1:
            anchor = d
            break
    if anchor is None:
        raise AssertionError("outer boundary has no corner to attach a frame")
    v0 = g.dart_head(anchor)
    rho = sk.corner[anchor]

    c1, c2, c3, c4 = (sk.fresh_vertex() for _ in range(4))
    w0 = sk.fresh_vertex()
    f1 = sk.fresh_edge(c1, w0)
    f1b = sk.fresh_edge(w0, c2)
    f2 = sk.fresh_edge(c2, c3)
    f3 = sk.fresh_edge(c3, c4)
    f4 = sk.fresh_edge(c4, c1)
    conn = sk.fresh_edge(w0, v0)
    sk.order[c1] = [f4, f1]
    sk.order[w0] = [f1, conn, f1b]
    sk.order[c2] = [f1b, f2]
    sk.order[c3] = [f2, f3]
    sk.order[c4] = [f3, f4]
    # connector enters v0 inside the anchored corner, splitting it 90 / rest
    cyc = sk.order[v0]
    i = cyc.index(anchor[0])
    cyc[i + 1:i + 1] = [conn]

    # corners: ring side of the frame (+1 at corners, a right angle on each
    # side of the connector at w0), frame outside (-1 at corners, straight
    # at w0), split anchor corner at v0 (angles sum to the old corner + 2)
    for (eid, dd), val in (
        ((f1, 0), 1), ((f1b, 0), 1), ((f2, 0), 1), ((f3, 0), 1), ((f4, 0), 1),
        ((f1, 1), -1), ((f2, 1), -1), ((f3, 1), -1), ((f4, 1), -1),
        ((f1b, 1), 0),
    ):
        sk.corner[(eid, dd)] = val
    sk.corner[(conn, 1)] = 1        # corner at w0 between conn and f1b
    sk.corner[(conn, 0)] = rho + 1  # remaining angle at v0 after the split
    sk.corner[anchor] = 1           # the 90-degree slice next to the connector
    sk.outer = (f2, 1)


def _refine(sk: _Sketch):
    """Split reflex corners until every face other than the frame exterior
    is a rectangle."""
    guard = 0
    while True:
        guard += 1
        if guard > 10000:
            raise AssertionError("refinement did not terminate")
        g = sk.graph()
        rot = sk.rot()
        fl = faces(g, rot)
        target = None
        for f in fl:
            if sk.outer in f:
                continue
            for i, d in enumerate(f):
                if sk.corner[d] <= -1:
                    target = (f, i)
                    break
            if target:
                break
        if target is None:
            return
        f, i = target
        d0 = f[i]
        v = g.dart_head(d0)
        cum = sk.corner[d0]
        j = i
        hit = None
        for step in range(1, len(f)):
            j = (i + step) % len(f)
            if cum == 1:
                hit = f[j]
                break
            cum += sk.corner[f[j]]
        if hit is None:
            raise AssertionError("no chord target found in face")
        he = hit[0]
        w = sk.fresh_vertex()
        orig = sk.origin.get(he)
        # split the hit dart's edge at w (preserving the forward direction
        # of the original segment)
        ea, eb = sk.edges.pop(he)
        s1 = sk.fresh_edge(ea, w, origin=orig)
        s2 = sk.fresh_edge(w, eb, origin=orig)
        for x, repl in ((ea, s1), (eb, s2)):
            cyc = sk.order[x]
            cyc[cyc.index(he)] = repl
        chord = sk.fresh_edge(w, v)
        sk.order[w] = [s1 if hit[1] == 0 else s2, chord,
                       s2 if hit[1] == 0 else s1]
        cyc = sk.order[v]
        k = cyc.index(d0[0])
        cyc[k + 1:k + 1] = [chord]

        # corner bookkeeping: the split dart's head corner moves to its
        # second half; the chord makes right angles at w on the split side
        # and a straight pass-through on the far side
        old = sk.corner.pop(hit)
        sk.corner[(s2, 0) if hit[1] == 0 else (s1, 1)] = old
        old_twin = sk.corner.pop((he, 1 - hit[1]))
        sk.corner[(s1, 1) if hit[1] == 0 else (s2, 0)] = old_twin
        if hit[1] == 0:
            sk.corner[(s1, 0)] = 1      # arrive via first half, turn onto chord
            sk.corner[(chord, 1)] = 1   # arrive via chord at w, continue
            sk.corner[(s2, 1)] = 0      # straight on the far side
        else:
            sk.corner[(s2, 1)] = 1
            sk.corner[(chord, 1)] = 1
            sk.corner[(s1, 0)] = 0
        rv = sk.corner.pop(d0)
        sk.corner[d0] = 0               # v: straight onto the chord
        sk.corner[(chord, 0)] = rv + 2  # remaining turn after the chord
        if sk.outer[0] == he:
            dd = sk.outer[1]
            sk.outer = (s1, 0) if dd == 0 else (s2, 1)


def _coordinates(sk: _Sketch):
    g = sk.graph()
    rot = sk.rot()
    fl = faces(g, rot)
    dart_dir: dict[Dart, int] = {}
    start = sk.outer
    dart_dir[start] = 0
    queue = [start]
    while queue:
        d = queue.pop()
        cur = dart_dir[d]
        nd = next_dart(g, rot, d)
        ndir = (cur + sk.corner[d]) % 4
        for cand, cdir in ((nd, ndir), (twin(d), (cur + 2) % 4)):
            if cand not in dart_dir:
                dart_dir[cand] = cdir
                queue.append(cand)
            elif dart_dir[cand] != cdir:
                raise AssertionError("inconsistent direction propagation")

    # column classes joined by vertical edges, row classes by horizontal
    parent: dict[tuple[str, str], tuple[str, str]] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for v in g.vertices:
        parent[("x", v)] = ("x", v)
        parent[("y", v)] = ("y", v)
    for e, (u, v) in sk.edges.items():
        d = dart_dir[(e, 0)]
        if d in (1, 3):
            union(("x", u), ("x", v))
        else:
            union(("y", u), ("y", v))

    succ_x: dict = {}
    succ_y: dict = {}
    for e, (u, v) in sk.edges.items():
        d = dart_dir[(e, 0)]
        if d == 0:
            succ_x.setdefault(find(("x", u)), set()).add(find(("x", v)))
        elif d == 2:
            succ_x.setdefault(find(("x", v)), set()).add(find(("x", u)))
        elif d == 3:
            succ_y.setdefault(find(("y", u)), set()).add(find(("y", v)))
        else:
            succ_y.setdefault(find(("y", v)), set()).add(find(("y", u)))

    def longest_path(succ, nodes):
        indeg = {n: 0 for n in nodes}
        for n, outs in succ.items():
            for m in outs:
                indeg[m] += 1
        level = {n: 0 for n in nodes}
        queue = [n for n in nodes if indeg[n] == 0]
        seen = 0
        while queue:
            n = queue.pop()
            seen += 1
            for m in succ.get(n, ()):
                level[m] = max(level[m], level[n] + 1)
                indeg[m] -= 1
                if indeg[m] == 0:
                    queue.append(m)
        if seen != len(nodes):
            raise AssertionError("cyclic coordinate constraints")
        return level

    xs = longest_path(succ_x, {find(("x", v)) for v in g.vertices})
    ys = longest_path(succ_y, {find(("y", v)) for v in g.vertices})
    return {
        v: (xs[find(("x", v))], ys[find(("y", v))]) for v in g.vertices
    }


def realize(rep: OrthoRep) -> GridDrawing:
    """A planar axis-aligned drawing inducing exactly the representation's
    rotation values."""
    problems = validate_rep(rep)
    if problems:
        raise ValueError(f"representation invalid: {problems}")
    for e, w in rep.widths.items():
        if w != (1, 1):
            raise ValueError("wide edges must be substituted before realizing")
    sk = _Sketch(rep)
    sk.check()
    _add_frame(sk)
    sk.check()
    _refine(sk)
    sk.check()
    coords = _coordinates(sk)

    polylines: dict[str, list[tuple[int, int]]] = {}
    chains: dict[str, list[str]] = {}
    for seg, orig in sk.origin.items():
        if orig is not None and seg in sk.edges:
            chains.setdefault(orig, []).append(seg)
    for e, (u, v) in rep.graph.edges.items():
        segs = chains.get(e, [])
        adj: dict[str, list[str]] = {}
        for seg in segs:
            a, b = sk.edges[seg]
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        path = [u]
        prev = None
        while path[-1] != v:
            cands = [x for x in adj[path[-1]] if x != prev]
            prev = path[-1]
            path.append(cands[0])
        pts = [coords[x] for x in path]
        # drop collinear interior points introduced by refinement splits
        out = [pts[0]]
        for i in range(1, len(pts) - 1):
            (x0, y0), (x1, y1), (x2, y2) = pts[i - 1], pts[i], pts[i + 1]
            if (x0 == x1 == x2) or (y0 == y1 == y2):
                continue
            out.append(pts[i])
        out.append(pts[-1])
        polylines[e] = out
    return GridDrawing(
        {v: coords[v] for v in rep.graph.vertices}, polylines
    )


# -- checking and export -------------------------------------------------------------


def drawing_rotations(drawing: GridDrawing, rep: OrthoRep):
    """Extract per-edge forward-side rotations back out of the geometry."""
    out = {}
    for e, pts in drawing.polylines.items():
        total = 0
        for (x0, y0), (x1, y1), (x2, y2) in zip(pts, pts[1:], pts[2:]):
            d1 = (x1 - x0, y1 - y0)
            d2 = (x2 - x1, y2 - y1)
            cross = d1[0] * d2[1] - d1[1] * d2[0]
            total += -1 if cross > 0 else 1
        out[e] = total
    return out


def check_drawing(drawing: GridDrawing, rep: OrthoRep) -> list[str]:
    report = []
    rots = drawing_rotations(drawing, rep)
    for e in rep.graph.edges:
        if rots[e] != rep.rot_edge[(e, 0)]:
            report.append(
                f"edge {e!r}: geometric rotation {rots[e]} != {rep.rot_edge[(e, 0)]}"
            )
    segs = drawing.segments()
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if _segments_conflict(segs[i], segs[j]):
                report.append(f"segments cross: {segs[i]} / {segs[j]}")
    return report


def _segments_conflict(s1, s2) -> bool:
    e1, a1, b1 = s1
    e2, a2, b2 = s2
    (x1, y1), (x2, y2) = sorted((a1, b1))
    (x3, y3), (x4, y4) = sorted((a2, b2))
    v1 = x1 == x2
    v2 = x3 == x4
    if v1 and v2:
        if x1 != x3:
            return False
        lo, hi = max(y1, y3), min(y2, y4)
        if lo > hi:
            return False
        overlap_len = hi - lo
        if overlap_len > 0:
            return True
        # touching at an endpoint is fine only for consecutive segments of
        # one polyline or a shared vertex; flag interior touches
        return not ((x1, lo) in (a1, b1) and (x1, lo) in (a2, b2))
    if not v1 and not v2:
        if y1 != y3:
            return False
        lo, hi = max(x1, x3), min(x2, x4)
        if lo > hi:
            return False
        if hi - lo > 0:
            return True
        return not ((lo, y1) in (a1, b1) and (lo, y1) in (a2, b2))
    if v2:
        (x1, y1, x2, y2, x3, y3, x4, y4) = (x3, y3, x4, y4, x1, y1, x2, y2)
    # now segment 1 vertical (x1 == x2), segment 2 horizontal (y3 == y4)
    if not (x3 <= x1 <= x4 and y1 <= y3 <= y2):
        return False
    p = (x1, y3)
    end1 = p in (a1, b1) or p in ((x1, y1), (x1, y2))
    end2 = p in (a2, b2) or p in ((x3, y3), (x4, y4))
    strict1 = y1 < y3 < y2
    strict2 = x3 < x1 < x4
    if strict1 and strict2:
        return True
    # endpoint lying in the interior of the other segment: only legal when
    # they share that grid point as a common vertex of the drawing
    if (strict1 and not strict2) or (strict2 and not strict1):
        return not (p in (a1, b1) and p in (a2, b2))
    return False


SVG_SCALE = 32
SVG_MARGIN = 24


def to_svg(drawing: GridDrawing) -> str:
    """Render polylines and vertex dots; bends get small round markers."""
    xs = [x for x, _y in drawing.coords.values()]
    ys = [y for _x, y in drawing.coords.values()]
    for pts in drawing.polylines.values():
        xs.extend(p[0] for p in pts)
        ys.extend(p[1] for p in pts)
    if not xs:
        return "<svg xmlns='http://www.w3.org/2000/svg'/>\n"
    x0, y1 = min(xs), max(ys)

    def sx(x):
        return SVG_MARGIN + (x - x0) * SVG_SCALE

    def sy(y):
        return SVG_MARGIN + (y1 - y) * SVG_SCALE

    w = SVG_MARGIN * 2 + (max(xs) - x0) * SVG_SCALE
    h = SVG_MARGIN * 2 + (y1 - min(ys)) * SVG_SCALE
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        '<g fill="none" stroke="#334" stroke-width="2" '
        'stroke-linejoin="round">',
    ]
    for e, pts in sorted(drawing.polylines.items()):
        path = " ".join(
            f"{'M' if i == 0 else 'L'} {sx(x)} {sy(y)}"
            for i, (x, y) in enumerate(pts)
        )
        lines.append(f'  <path d="{path}"><title>{e}</title></path>')
    lines.append("</g>")
    for e, pts in sorted(drawing.polylines.items()):
        for x, y in pts[1:-1]:
            lines.append(
                f'  <circle cx="{sx(x)}" cy="{sy(y)}" r="3" fill="#c80"/>'
            )
    for v, (x, y) in sorted(drawing.coords.items()):
        lines.append(
            f'  <circle cx="{sx(x)}" cy="{sy(y)}" r="5" fill="#246"/>'
        )
        lines.append(
            f'  <text x="{sx(x) + 7}" y="{sy(y) - 7}" font-size="12" '
            f'fill="#222">{v}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
