"""Constructors for the wheel/bend-gadget family and the instance
transformations built from them.

These fix concrete wirings for structures whose defining property is
behavioral (forced bend counts, forced outer shapes, feasibility-preserving
vertex replacements); the properties are re-checked by tests against the
solver and the exhaustive oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .model import EdgeCost, Graph, Instance, flex_cost, twin


@dataclass
class GadgetInstance:
    instance: Instance
    attachments: dict[str, str] = field(default_factory=dict)
    expected: dict = field(default_factory=dict)


def _wheel_edges(prefix: str, rim_flex=1, spoke_flex=1, top_flex=None):
    """Edges of a size-4 wheel on vertices {prefix}v1..v4 and hub {prefix}u.

    top_flex overrides the flexibility of the rim edge v3-v4.
    """
    p = prefix
    edges = []
    rim = [(f"{p}v1", f"{p}v2"), (f"{p}v2", f"{p}v3"),
           (f"{p}v3", f"{p}v4"), (f"{p}v4", f"{p}v1")]
    for i, (a, b) in enumerate(rim):
        fx = rim_flex
        if top_flex is not None and i == 2:
            fx = top_flex
        edges.append((f"{p}r{i}", a, b, fx))
    for i in range(1, 5):
        edges.append((f"{p}s{i}", f"{p}u", f"{p}v{i}", spoke_flex))
    return edges


def wheel_w4(prefix: str = "") -> GadgetInstance:
    """The size-4 wheel, every edge flexibility 1.  Every valid drawing has
    a rectangular outer shape with one rim vertex per side."""
    edges = _wheel_edges(prefix)
    verts = sorted({v for _e, a, b, _f in edges for v in (a, b)})
    inst = Instance(
        Graph(verts, {e: (a, b) for e, a, b, _f in edges}),
        {e: flex_cost(f) for e, a, b, f in edges},
    )
    return GadgetInstance(
        inst,
        {f"v{i}": f"{prefix}v{i}" for i in range(1, 5)},
        {"outer_shape": "rectangle"},
    )


def bend_gadget_b12(prefix: str = "", s: str | None = None,
                    t: str | None = None) -> GadgetInstance:
    """The forced-bend st-graph: a wheel with inflexible leads attached to
    two adjacent rim vertices and flexibility 2 on the opposite rim edge.
    Every valid drawing bends it once or twice, never zero times."""
    p = prefix
    s = s if s is not None else f"{p}s"
    t = t if t is not None else f"{p}t"
    edges = _wheel_edges(p, top_flex=2)
    edges.append((f"{p}es", s, f"{p}v1", 0))
    edges.append((f"{p}et", t, f"{p}v2", 0))
    verts = sorted({v for _e, a, b, _f in edges for v in (a, b)})
    inst = Instance(
        Graph(verts, {e: (a, b) for e, a, b, _f in edges}),
        {e: flex_cost(f) for e, a, b, f in edges},
        poles=(s, t),
    )
    return GadgetInstance(inst, {"s": s, "t": t}, {"bend_set": {1, 2}})


def w3_prime(prefix: str = "") -> GadgetInstance:
    """A triangle of forced-bend gadgets around a hub: in every valid
    drawing two of the gadgets bend once and the third twice.  Attachment
    vertices {prefix}a1..a3 hang on inflexible edges."""
    p = prefix
    tri = [f"{p}w{i}" for i in (1, 2, 3)]
    edge_list: list[tuple[str, str, str, int]] = []
    for i, w in enumerate(tri, start=1):
        edge_list.append((f"{p}hub{i}", f"{p}u", w, 1))
        edge_list.append((f"{p}pin{i}", w, f"{p}a{i}", 0))
    gadget_ids = []
    for i, j in ((1, 2), (2, 3), (3, 1)):
        gp = f"{p}g{i}{j}"
        gadget_ids.append((gp, i, j))
        edge_list.extend(
            (e, a, b, f)
            for e, a, b, f in _wheel_edges(gp, top_flex=2)
        )
        edge_list.append((f"{gp}es", tri[i - 1], f"{gp}v1", 0))
        edge_list.append((f"{gp}et", tri[j - 1], f"{gp}v2", 0))
        # anchor the free rim slots to the neighboring attachment vertices
        edge_list.append((f"{gp}fs", f"{p}a{i}", f"{gp}v4", 1))
        edge_list.append((f"{gp}ft", f"{p}a{j}", f"{gp}v3", 1))
    verts = sorted({v for _e, a, b, _f in edge_list for v in (a, b)})
    inst = Instance(
        Graph(verts, {e: (a, b) for e, a, b, _f in edge_list}),
        {e: flex_cost(f) for e, a, b, f in edge_list},
    )
    return GadgetInstance(
        inst,
        {f"a{i}": f"{p}a{i}" for i in (1, 2, 3)},
        {"gadget_bends": "two once, one twice",
         "gadgets": [gp for gp, _i, _j in gadget_ids]},
    )


def subgraph_bends(rep, edge_ids: set[str], x: str, y: str) -> int:
    """Bend count of an embedded subgraph with designated end vertices x
    and y: the larger boundary-rotation magnitude of the subgraph's own
    outline, read off a representation of the host graph.

    Edges of the host may leave the subgraph at outline vertices; the walk
    skips them, and each skipped edge slot folds its two flanking corners
    into one outline turn (angles add, so the turn is the corner sum minus
    two per skipped slot)."""
    g = rep.graph

    def boundary_rotation(start_pole, end_pole):
        cyc = rep.rot.order[start_pole]
        first = None
        for e in cyc:
            if e in edge_ids and rep.rot.prev_cw(start_pole, e) not in edge_ids:
                first = e
                break
        if first is None:           # pole has only component edges
            first = next(e for e in cyc if e in edge_ids)
        d = g.dart_from(first, start_pole)
        total = 0
        steps = 0
        while True:
            total += rep.rot_edge[d]
            head = g.dart_head(d)
            if head == end_pole:
                return total
            # fold the corners at head (skipping non-subgraph edges) into
            # one outline turn: angles add, each extra slot costs -2
            total += rep.rot_corner[d]
            e = rep.rot.next_cw(head, d[0])
            while e not in edge_ids:
                in_dart = twin(g.dart_from(e, head))
                total += rep.rot_corner[in_dart] - 2
                e = rep.rot.next_cw(head, e)
            d = g.dart_from(e, head)
            steps += 1
            if steps > 4 * len(g.edges):
                raise ValueError("outline walk did not terminate")

    r1 = boundary_rotation(x, y)
    r2 = boundary_rotation(y, x)
    return max(abs(r1), abs(r2))


def gadget_bend_count(inst: Instance, rep, gadget_prefix: str,
                      x: str, y: str) -> int:
    """Bends of one embedded forced-bend gadget (edges named with the
    gadget's prefix, attached at x and y)."""
    sub = {e for e in inst.graph.edges if e.startswith(gadget_prefix)}
    return subgraph_bends(rep, sub, x, y)


def _check_degree(g: Graph, v: str, want: int):
    if g.degree(v) != want:
        raise ValueError(f"vertex {v!r} has degree {g.degree(v)}, need {want}")


def expand_deg3(inst: Instance, v: str, order=None) -> Instance:
    """Replace a degree-3 vertex by a triangle-of-gadgets block, attaching
    its former edges to the block's attachment vertices."""
    _check_degree(inst.graph, v, 3)
    gadget = w3_prime(prefix=f"{v}x_")
    return _splice(inst, v, gadget.instance,
                   [gadget.attachments[f"a{i}"] for i in (1, 2, 3)], order)


def expand_deg4(inst: Instance, v: str, order=None) -> Instance:
    """Replace a degree-4 vertex by a flexibility-1 wheel, attaching its
    former edges to the rim in the given cyclic order."""
    _check_degree(inst.graph, v, 4)
    gadget = wheel_w4(prefix=f"{v}x_")
    return _splice(inst, v, gadget.instance,
                   [gadget.attachments[f"v{i}"] for i in (1, 2, 3, 4)], order)


def _splice(inst: Instance, v: str, block: Instance, ports: list[str],
            order) -> Instance:
    g = inst.graph
    if order is None:
        # attach in a planar cyclic order around v so the replacement's rim
        # can take over the incidences without crossings
        from .model import planar_embedding
        order = list(planar_embedding(g).order[v])
    incident = list(order)
    if len(incident) != len(ports):
        raise ValueError("attachment count mismatch")
    new_edges = {}
    for e, (a, b) in g.edges.items():
        if e in incident:
            port = ports[incident.index(e)]
            a2 = port if a == v else a
            b2 = port if b == v else b
            new_edges[e] = (a2, b2)
        else:
            new_edges[e] = (a, b)
    new_edges.update(block.graph.edges)
    verts = [x for x in g.vertices if x != v] + list(block.graph.vertices)
    costs = dict(inst.costs)
    costs.update(block.costs)
    return Instance(Graph(verts, new_edges), costs,
                    restrict_90=inst.restrict_90)


def reduce_flex(inst: Instance) -> Instance:
    """Equivalent instance in which every flexibility is 0 or 1: an edge of
    flexibility f >= 2 becomes a wheel with a flexibility-1 lead on one side
    and a flexibility-(f-1) lead on the other, applied repeatedly."""
    serial = itertools.count()
    work = dict(inst.costs)
    edges = dict(inst.graph.edges)
    while True:
        over = [e for e in sorted(work) if work[e].is_flex and work[e].flex >= 2]
        if not over:
            break
        e = over[0]
        a, b = edges.pop(e)
        f = work.pop(e).flex
        p = f"rf{next(serial)}_"
        for we, wa, wb, wf in _wheel_edges(p):
            edges[we] = (wa, wb)
            work[we] = flex_cost(wf)
        edges[f"{p}la"] = (a, f"{p}v1")
        work[f"{p}la"] = flex_cost(1)
        edges[f"{p}lb"] = (b, f"{p}v3")
        work[f"{p}lb"] = flex_cost(f - 1)
    verts = sorted({x for uv in edges.values() for x in uv})
    return Instance(Graph(verts, edges), work, restrict_90=inst.restrict_90)


def amplify(inst: Instance, rounds: int) -> Instance:
    """Repeatedly blow up the degree-4 endpoints of inflexible edges into
    wheels, pushing the inflexible edges pairwise further apart while
    preserving feasibility."""
    cur = inst
    for _ in range(rounds):
        inflexible = [e for e in sorted(cur.graph.edges)
                      if cur.costs[e].cap() == 0]
        targets = []
        for e in inflexible:
            for x in cur.graph.edges[e]:
                if cur.graph.degree(x) == 4 and x not in targets:
                    targets.append(x)
        for x in targets:
            cur = expand_deg4(cur, x)
    return cur
