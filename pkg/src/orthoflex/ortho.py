"""Orthogonal representations with wide edges, path rotations, and the
dual-cycle rebending machinery.

A representation fixes, for a planar embedding, one integer rotation per
edge-side (dart) and one per vertex corner.  Corners are keyed by the dart
*arriving* at the corner's vertex; edge sides are keyed by the dart lying in
that side's face (faces are walked with the face on the right, so the dart
u->v is keyed to the face right of u->v).

An edge may be declared to occupy (sigma, tau) incidence slots at its two
endpoints instead of (1, 1); such wide edges stand in for substituted
subgraphs and obey the shifted side-sum rule rot_left + rot_right =
2 - (sigma + tau).
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Dart, Graph, Instance, RotationSystem, faces, next_dart, twin


def beta_low(sigma: int, tau: int) -> int:
    """Minimum bend count of any representation occupying the given number
    of incidence slots at its two poles."""
    if not (1 <= sigma <= 4 and 1 <= tau <= 4):
        raise ValueError("occupied incidences must be in [1, 4]")
    return -((sigma + tau) // -2) - 1  # ceil((sigma+tau)/2) - 1


class OrthoRep:
    """An embedding plus rotation values for every incidence."""

    def __init__(self, graph: Graph, rot: RotationSystem, rot_edge, rot_corner,
                 widths=None):
        self.graph = graph
        self.rot = rot
        self.rot_edge: dict[Dart, int] = dict(rot_edge)
        self.rot_corner: dict[Dart, int] = dict(rot_corner)
        self.widths: dict[str, tuple[int, int]] = {
            e: (1, 1) for e in graph.edges
        }
        if widths:
            self.widths.update(widths)
        self.faces: list[tuple[Dart, ...]] = faces(graph, rot)
        self._face_of: dict[Dart, int] = {}
        for i, f in enumerate(self.faces):
            for d in f:
                self._face_of[d] = i
        if rot.outer is None:
            raise ValueError("representation needs an outer-face witness")
        self.outer_index = self._face_of[rot.outer]

    def face_of(self, d: Dart) -> int:
        return self._face_of[d]

    def outer_face(self) -> tuple[Dart, ...]:
        return self.faces[self.outer_index]

    def prev_in_face(self, d: Dart) -> Dart:
        f = self.faces[self._face_of[d]]
        return f[f.index(d) - 1]

    def width(self, e: str) -> tuple[int, int]:
        return self.widths.get(e, (1, 1))

    def occupancy(self, v: str) -> int:
        g = self.graph
        total = 0
        for e in g.incident(v):
            s, t = self.width(e)
            total += s if g.endpoints(e)[0] == v else t
        return total

    def edge_bends(self, e: str) -> int:
        return max(abs(self.rot_edge[(e, 0)]), abs(self.rot_edge[(e, 1)]))

    def copy(self) -> "OrthoRep":
        return OrthoRep(self.graph, self.rot, self.rot_edge, self.rot_corner,
                        self.widths)

    def mirrored(self) -> "OrthoRep":
        """The reflected representation (all cyclic orders reversed)."""
        rot = self.rot.mirrored()
        rot = RotationSystem(rot.order, twin(self.rot.outer))
        new_edge = {twin(d): r for d, r in self.rot_edge.items()}
        new_corner = {}
        for d, r in self.rot_corner.items():
            d_out = next_dart(self.graph, self.rot, d)
            new_corner[twin(d_out)] = r
        return OrthoRep(self.graph, rot, new_edge, new_corner, self.widths)

    # -- outer-boundary paths ------------------------------------------------

    def boundary_visits(self, v: str) -> int:
        return sum(1 for d in self.outer_face() if self.graph.dart_head(d) == v)

    def outer_path(self, s: str, t: str) -> list[Dart]:
        """Darts of the boundary walk from s to t (outer face on the right,
        i.e. counter-clockwise).  Requires a unique boundary visit of s."""
        cyc = self.outer_face()
        g = self.graph
        starts = [i for i, d in enumerate(cyc) if g.dart_tail(d) == s]
        if len(starts) != 1:
            raise ValueError(f"pole {s!r} must lie exactly once on the outer face")
        i = starts[0]
        path = []
        for k in range(len(cyc)):
            d = cyc[(i + k) % len(cyc)]
            path.append(d)
            if g.dart_head(d) == t:
                return path
        raise ValueError(f"pole {t!r} not found on the outer face")

    def rot_path(self, path: list[Dart]) -> int:
        """Rotation of a face-aligned walk: edge-side rotations plus corners
        at the walk's internal vertices."""
        total = sum(self.rot_edge[d] for d in path)
        total += sum(self.rot_corner[d] for d in path[:-1])
        return total

    def rot_vertex_outer(self, v: str) -> int:
        cyc = self.outer_face()
        for d in cyc:
            if self.graph.dart_head(d) == v:
                return self.rot_corner[d]
        raise ValueError(f"{v!r} not on outer face")


def bends_st(r: OrthoRep, s: str, t: str) -> tuple[int, int, int]:
    """(bends, sigma, tau) of an st-graph representation: bends is the larger
    of the two boundary-path rotation magnitudes, and sigma = rot(s) + 3 in
    the outer face."""
    rot_st = r.rot_path(r.outer_path(s, t))
    rot_ts = r.rot_path(r.outer_path(t, s))
    beta = max(abs(rot_st), abs(rot_ts))
    sigma = r.rot_vertex_outer(s) + 3
    tau = r.rot_vertex_outer(t) + 3
    return beta, sigma, tau


def validate_rep(r: OrthoRep, inst: Instance | None = None,
                 poles: tuple[str, str] | None = None) -> list[str]:
    """Check the four rotation properties (wide-edge form); optionally also
    report cost-domain violations (bends beyond an edge's finite-cost cap)
    as separate "validity" entries."""
    report: list[str] = []
    g = r.graph
    for e in g.edges:
        s, t = r.width(e)
        want = 2 - (s + t)
        got = r.rot_edge[(e, 0)] + r.rot_edge[(e, 1)]
        if got != want:
            report.append(f"property 2 fails at edge {e!r}: side sum {got} != {want}")
    for i, f in enumerate(r.faces):
        total = sum(r.rot_edge[d] + r.rot_corner[d] for d in f)
        want = -4 if i == r.outer_index else 4
        if total != want:
            report.append(f"property 1 fails at face {i}: sum {total} != {want}")
    for v in g.vertices:
        corners = [r.rot_corner[d] for d in r.rot_corner
                   if g.dart_head(d) == v]
        occ = sum(
            (r.width(e)[0] if g.endpoints(e)[0] == v else r.width(e)[1]) + 1
            for e in g.incident(v)
        )
        if sum(corners) != occ - 4:
            report.append(
                f"property 3 fails at vertex {v!r}: sum {sum(corners)} != {occ - 4}"
            )
        if r.occupancy(v) > 4:
            report.append(f"vertex {v!r} occupies {r.occupancy(v)} > 4 incidences")
    for d, val in r.rot_corner.items():
        if not -2 <= val <= 1:
            report.append(f"property 4 fails at corner {d}: {val}")
    if inst is not None:
        for e in g.edges:
            if e in inst.costs and r.edge_bends(e) > inst.cap(e):
                report.append(
                    f"validity: edge {e!r} has {r.edge_bends(e)} bends, "
                    f"cap {inst.cap(e)}"
                )
    return report


def rep_cost(r: OrthoRep, inst: Instance) -> float:
    return sum(inst.costs[e].cost(r.edge_bends(e)) for e in r.graph.edges)


# -- valid dual edges and bending along cycles --------------------------------


@dataclass(frozen=True)
class DualStep:
    """One dual arc of a rebending cycle: the primal dart identifies the
    crossed edge and the target face; the justification says what absorbs the
    rotation shift."""

    dart: Dart
    kind: str                      # "edge" or "vertex"
    vertex: str | None = None
    corner_to: Dart | None = None  # corner gaining 1 (in the target face)
    corner_from: Dart | None = None  # corner losing 1 (in the source face)


ValidCycle = tuple[DualStep, ...]


def _corners_flanking(r: OrthoRep, d: Dart, v: str) -> tuple[Dart, Dart]:
    """Corner keys of v adjacent to d's edge: (in d's face, in the twin
    face)."""
    g = r.graph
    if g.dart_head(d) == v:
        return d, r.prev_in_face(twin(d))
    return r.prev_in_face(d), twin(d)


def dual_steps(r: OrthoRep, inst: Instance, d: Dart,
               poles: tuple[str, str] | None) -> list[DualStep]:
    """All justifications making the dual arc across dart d valid.

    The arc runs from the face of twin(d) into the face of d; it is valid if
    the edge still has slack on d's side, or an endpoint that is not a pole
    has a corner below 1 in d's face.
    """
    e = d[0]
    out: list[DualStep] = []
    if r.rot_edge[d] < inst.cap(e):
        out.append(DualStep(d, "edge"))
    excluded = set(poles) if poles else set()
    for v in r.graph.endpoints(e):
        if v in excluded:
            continue
        c_to, c_from = _corners_flanking(r, d, v)
        if r.rot_corner[c_to] < 1:
            out.append(DualStep(d, "vertex", v, c_to, c_from))
    return out


def valid_dual_edges(r: OrthoRep, inst: Instance,
                     poles: tuple[str, str] | None = None) -> dict[Dart, DualStep]:
    """One valid justification per crossable dart (edge slack preferred)."""
    out = {}
    for d in r.graph.darts():
        steps = dual_steps(r, inst, d, poles)
        if steps:
            out[d] = steps[0]
    return out


def bend_along(r: OrthoRep, cycle: ValidCycle, inst: Instance | None = None) -> OrthoRep:
    """Apply a rebending cycle: each crossed edge shifts one unit of rotation
    from the source face to the target face, either on the edge itself or on
    the witnessing corner pair."""
    new = r.copy()
    for step in cycle:
        if step.kind == "edge":
            new.rot_edge[step.dart] += 1
            new.rot_edge[twin(step.dart)] -= 1
        else:
            new.rot_corner[step.corner_to] += 1
            new.rot_corner[step.corner_from] -= 1
    problems = validate_rep(new, inst)
    if problems:
        raise ValueError(f"cycle was not valid for this representation: {problems}")
    return new


def find_valid_cycle(r: OrthoRep, inst: Instance, s: str, t: str) -> ValidCycle | None:
    """A rebending cycle through the outer face that crosses the s->t
    boundary path outward and the t->s path inward (so s ends up strictly
    left and t strictly right).  Bending along it raises rot(pi(t, s)) by 1.

    Returns None when no such cycle exists.
    """
    poles = (s, t)
    g = r.graph
    outer = r.outer_index
    path_st = set(r.outer_path(s, t))
    path_ts = set(r.outer_path(t, s))

    # Arcs leaving the outer face cross an edge of pi(s, t); arcs entering it
    # cross an edge of pi(t, s).
    leave: list[DualStep] = []
    enter: list[DualStep] = []
    inner_arcs: dict[int, list[tuple[int, DualStep]]] = {}
    for d in g.darts():
        steps = dual_steps(r, inst, d, poles)
        if not steps:
            continue
        src = r.face_of(twin(d))
        dst = r.face_of(d)
        step = steps[0]
        if src == outer and dst == outer:
            if twin(d) in path_st and d in path_ts:
                return (step,)
            continue
        if src == outer:
            if twin(d) in path_st:
                leave.append(step)
        elif dst == outer:
            if d in path_ts:
                enter.append(step)
        else:
            inner_arcs.setdefault(src, []).append((dst, step))

    enter_by_face = {}
    for step in enter:
        enter_by_face.setdefault(r.face_of(twin(step.dart)), step)

    for start in leave:
        f0 = r.face_of(start.dart)
        # BFS over inner faces only
        prev: dict[int, tuple[int, DualStep]] = {f0: (-1, start)}
        queue = [f0]
        found = None
        while queue and found is None:
            f = queue.pop(0)
            if f in enter_by_face:
                found = f
                break
            for dst, step in inner_arcs.get(f, ()):
                if dst not in prev:
                    prev[dst] = (f, step)
                    queue.append(dst)
        if found is None:
            continue
        steps = [enter_by_face[found]]
        f = found
        while f != -1:
            pf, step = prev[f]
            steps.append(step)
            f = pf
        steps.reverse()
        return tuple(steps)
    return None


# -- substitution of wide edges ------------------------------------------------


def _bundle_at_pole(sub: OrthoRep, pole: str, first_edge: str) -> list[str]:
    cyc = sub.rot.order[pole]
    i = cyc.index(first_edge)
    return [cyc[(i + k) % len(cyc)] for k in range(len(cyc))]


def substitute(host: OrthoRep, e: str, sub: OrthoRep, s: str, t: str) -> OrthoRep:
    """Replace wide edge e = (u, v) of the host by a representation of an
    st-graph whose poles take over u and v.

    The sub-representation's s->t boundary rotation must match the host's
    rotation on the u->v side (the sub is mirrored automatically if its
    reflection matches instead); pole slot widths must agree.
    """
    g = host.graph
    u, v = g.endpoints(e)
    sigma, tau = host.width(e)
    b, sig2, tau2 = bends_st(sub, s, t)
    if (sig2, tau2) != (sigma, tau):
        raise ValueError(
            f"slot mismatch: edge {e!r} is ({sigma},{tau}), sub is ({sig2},{tau2})"
        )
    want = host.rot_edge[(e, 0)] if g.endpoints(e) == (u, v) else None
    d_uv = g.dart_from(e, u)
    want = host.rot_edge[d_uv]
    if sub.rot_path(sub.outer_path(s, t)) != want:
        sub = sub.mirrored()
        if sub.rot_path(sub.outer_path(s, t)) != want:
            raise ValueError("sub-representation bends do not match the host edge")

    shared = set(sub.graph.edges) & (set(g.edges) - {e})
    if shared:
        raise ValueError(f"edge ids collide during substitution: {shared}")

    rename = {s: u, t: v}
    sub_edges = {
        se: (rename.get(a, a), rename.get(b, b))
        for se, (a, b) in sub.graph.edges.items()
    }
    new_vertices = [w for w in g.vertices] + [
        w for w in sub.graph.vertices if w not in (s, t)
    ]
    new_edges = {se: ep for se, ep in g.edges.items() if se != e}
    new_edges.update(sub_edges)
    new_graph = Graph(new_vertices, new_edges)

    p_st = sub.outer_path(s, t)
    p_ts = sub.outer_path(t, s)
    first_st, last_st = p_st[0], p_st[-1]
    first_ts, last_ts = p_ts[0], p_ts[-1]

    order = {w: host.rot.order[w] for w in g.vertices}
    for w in sub.graph.vertices:
        if w not in (s, t):
            order[w] = sub.rot.order[w]
    bundle_s = _bundle_at_pole(sub, s, first_st[0])
    bundle_t = _bundle_at_pole(sub, t, first_ts[0])
    cyc_u = list(order[u])
    cyc_u[cyc_u.index(e):cyc_u.index(e) + 1] = bundle_s
    order[u] = tuple(cyc_u)
    cyc_v = list(order[v])
    cyc_v[cyc_v.index(e):cyc_v.index(e) + 1] = bundle_t
    order[v] = tuple(cyc_v)

    outer = host.rot.outer
    if outer[0] == e:
        outer = first_st if outer == d_uv else first_ts
    new_rot = RotationSystem(order, outer)

    rot_edge = {d: rv for d, rv in host.rot_edge.items() if d[0] != e}
    rot_edge.update(sub.rot_edge)

    rot_corner = {}
    for d, rv in host.rot_corner.items():
        if d[0] != e:
            rot_corner[d] = rv
    # pole corners: the sub's own outer-face gap at each pole disappears and
    # the host corners that flanked the wide edge take over, re-keyed to the
    # sub's boundary darts.
    for d, rv in sub.rot_corner.items():
        if d not in (last_ts, last_st):
            rot_corner[d] = rv
    rot_corner[last_st] = host.rot_corner[d_uv]       # host corner at v
    rot_corner[last_ts] = host.rot_corner[twin(d_uv)]  # host corner at u

    widths = {se: host.width(se) for se in g.edges if se != e}
    widths.update({se: sub.width(se) for se in sub.graph.edges})
    return OrthoRep(new_graph, new_rot, rot_edge, rot_corner, widths)


# -- elementary representation builders ----------------------------------------


def single_edge_rep(e: str, u: str, v: str, rotation: int) -> OrthoRep:
    """The one-edge st-graph drawn with the given s->t side rotation."""
    g = Graph([u, v], {e: (u, v)})
    rot = RotationSystem({u: (e,), v: (e,)}, (e, 0))
    rot_edge = {(e, 0): rotation, (e, 1): -rotation}
    rot_corner = {(e, 0): -2, (e, 1): -2}
    return OrthoRep(g, rot, rot_edge, rot_corner)


def compose_rep_series(r1: OrthoRep, s1: str, v: str, r2: OrthoRep, t2: str,
                       a: int, b: int) -> OrthoRep:
    """Glue two pole-disjoint representations at the shared vertex v with
    outer corners a (on the s->t side) and b (on the t->s side)."""
    g1, g2 = r1.graph, r2.graph
    p1_st = r1.outer_path(s1, v)
    p1_ts = r1.outer_path(v, s1)
    p2_st = r2.outer_path(v, t2)
    p2_ts = r2.outer_path(t2, v)

    vertices = list(g1.vertices) + [w for w in g2.vertices if w != v]
    edges = dict(g1.edges)
    edges.update(g2.edges)
    graph = Graph(vertices, edges)

    order = {w: r1.rot.order[w] for w in g1.vertices if w != v}
    order.update({w: r2.rot.order[w] for w in g2.vertices if w != v})
    bundle1 = _bundle_at_pole(r1, v, p1_ts[0][0])   # t-pole cut of r1
    bundle2 = _bundle_at_pole(r2, v, p2_st[0][0])   # s-pole cut of r2
    order[v] = tuple(bundle1 + bundle2)

    rot_edge = dict(r1.rot_edge)
    rot_edge.update(r2.rot_edge)
    rot_corner = {d: rv for d, rv in r1.rot_corner.items() if d != p1_st[-1]}
    rot_corner.update(
        {d: rv for d, rv in r2.rot_corner.items() if d != p2_ts[-1]}
    )
    rot_corner[p1_st[-1]] = a
    rot_corner[p2_ts[-1]] = b

    widths = dict(r1.widths)
    widths.update(r2.widths)
    rot = RotationSystem(order, p1_st[0])
    return OrthoRep(graph, rot, rot_edge, rot_corner, widths)


def compose_rep_parallel(r1: OrthoRep, r2: OrthoRep, s: str, t: str,
                         m_s: int, m_t: int, sigma: int, tau: int) -> OrthoRep:
    """Glue two representations sharing both poles; r1 keeps the outer s->t
    side, r2 the outer t->s side, with middle-face corners m_s and m_t."""
    g1, g2 = r1.graph, r2.graph
    p1_st = r1.outer_path(s, t)
    p1_ts = r1.outer_path(t, s)
    p2_st = r2.outer_path(s, t)
    p2_ts = r2.outer_path(t, s)

    vertices = list(g1.vertices) + [w for w in g2.vertices if w not in (s, t)]
    edges = dict(g1.edges)
    edges.update(g2.edges)
    graph = Graph(vertices, edges)

    order = {w: r1.rot.order[w] for w in g1.vertices if w not in (s, t)}
    order.update({w: r2.rot.order[w] for w in g2.vertices if w not in (s, t)})
    order[s] = tuple(
        _bundle_at_pole(r1, s, p1_st[0][0]) + _bundle_at_pole(r2, s, p2_st[0][0])
    )
    order[t] = tuple(
        _bundle_at_pole(r2, t, p2_ts[0][0]) + _bundle_at_pole(r1, t, p1_ts[0][0])
    )

    rot_edge = dict(r1.rot_edge)
    rot_edge.update(r2.rot_edge)
    rot_corner = {
        d: rv for d, rv in r1.rot_corner.items() if d not in (p1_ts[-1], p1_st[-1])
    }
    rot_corner.update(
        {d: rv for d, rv in r2.rot_corner.items() if d not in (p2_ts[-1], p2_st[-1])}
    )
    rot_corner[p1_ts[-1]] = m_s              # middle face at s
    rot_corner[p2_st[-1]] = m_t              # middle face at t
    rot_corner[p2_ts[-1]] = sigma - 3        # outer corner at s
    rot_corner[p1_st[-1]] = tau - 3          # outer corner at t

    widths = dict(r1.widths)
    widths.update(r2.widths)
    rot = RotationSystem(order, p1_st[0])
    return OrthoRep(graph, rot, rot_edge, rot_corner, widths)
