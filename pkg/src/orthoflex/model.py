"""Graph, embedding, and instance primitives.

Everything downstream works with 4-planar multigraphs (max degree 4, no
self-loops) whose combinatorial embeddings are given as rotation systems:
a clockwise cyclic order of incident edge ids per vertex plus an outer-face
witness dart.  Faces are traversed with the face to the *right* of the walk
direction, so inner faces come out clockwise and the outer face
counter-clockwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import networkx as nx

# A dart is one of the two directions of an edge: (edge id, direction), where
# direction 0 runs source -> target and 1 runs target -> source.
Dart = tuple[str, int]

INFINITY = float("inf")


def twin(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


class Graph:
    """An undirected multigraph with string vertex and edge ids."""

    def __init__(self, vertices, edges):
        """edges: mapping edge id -> (u, v) or iterable of (id, u, v)."""
        self.vertices: tuple[str, ...] = tuple(vertices)
        if isinstance(edges, dict):
            self.edges: dict[str, tuple[str, str]] = {
                e: (u, v) for e, (u, v) in edges.items()
            }
        else:
            self.edges = {e: (u, v) for e, u, v in edges}
        self._incident: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e, (u, v) in self.edges.items():
            if u in self._incident:
                self._incident[u].append(e)
            if v in self._incident and v != u:
                self._incident[v].append(e)

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: str) -> list[str]:
        return self._incident[v]

    def degree(self, v: str) -> int:
        return len(self._incident[v])

    def endpoints(self, e: str) -> tuple[str, str]:
        return self.edges[e]

    def other_end(self, e: str, v: str) -> str:
        u, w = self.edges[e]
        return w if v == u else u

    def dart_tail(self, d: Dart) -> str:
        u, v = self.edges[d[0]]
        return u if d[1] == 0 else v

    def dart_head(self, d: Dart) -> str:
        u, v = self.edges[d[0]]
        return v if d[1] == 0 else u

    def dart_from(self, e: str, tail: str) -> Dart:
        u, v = self.edges[e]
        return (e, 0) if tail == u else (e, 1)

    def darts(self) -> list[Dart]:
        return [(e, d) for e in self.edges for d in (0, 1)]

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e, (u, v) in self.edges.items():
            g.add_edge(u, v, key=e)
        return g

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        return nx.is_connected(self.to_networkx())

    def subgraph(self, edge_ids) -> "Graph":
        edge_ids = list(edge_ids)
        verts = sorted({v for e in edge_ids for v in self.edges[e]})
        return Graph(verts, {e: self.edges[e] for e in edge_ids})


@dataclass(frozen=True)
class RotationSystem:
    """Clockwise edge order per vertex plus a dart on the outer face."""

    order: dict[str, tuple[str, ...]]
    outer: Dart | None = None

    def position(self, v: str, e: str) -> int:
        return self.order[v].index(e)

    def next_cw(self, v: str, e: str) -> str:
        cyc = self.order[v]
        return cyc[(cyc.index(e) + 1) % len(cyc)]

    def prev_cw(self, v: str, e: str) -> str:
        cyc = self.order[v]
        return cyc[(cyc.index(e) - 1) % len(cyc)]

    def mirrored(self) -> "RotationSystem":
        return RotationSystem(
            {v: tuple(reversed(c)) for v, c in self.order.items()}, self.outer
        )


def next_dart(g: Graph, rot: RotationSystem, d: Dart) -> Dart:
    """Successor of d along its face (face kept on the right)."""
    v = g.dart_head(d)
    e = rot.next_cw(v, d[0])
    return g.dart_from(e, v)


def faces(g: Graph, rot: RotationSystem) -> list[tuple[Dart, ...]]:
    """All faces of the embedding as cyclic dart sequences.

    Raises ValueError if the rotation system is inconsistent with g or the
    face count violates Euler's formula (the embedding is not planar).
    """
    for v in g.vertices:
        if sorted(rot.order.get(v, ())) != sorted(g.incident(v)):
            raise ValueError(f"rotation system inconsistent at vertex {v!r}")
    out: list[tuple[Dart, ...]] = []
    seen: set[Dart] = set()
    for start in g.darts():
        if start in seen:
            continue
        walk = []
        d = start
        while True:
            walk.append(d)
            seen.add(d)
            d = next_dart(g, rot, d)
            if d == start:
                break
            if d in seen:
                raise ValueError("rotation system traversal is not a permutation")
        out.append(tuple(walk))
    if g.vertices and not g.is_connected():
        raise ValueError("faces() requires a connected graph")
    if g.m and len(out) != g.m - g.n + 2:
        raise ValueError(
            f"embedding is not planar: {len(out)} faces, expected {g.m - g.n + 2}"
        )
    return out


def planar_embedding(g: Graph, outer: Dart | None = None) -> RotationSystem:
    """Some planar rotation system for g (networkx Boyer-Myrvold).

    The outer face defaults to the face containing the first dart.
    """
    ok, emb = nx.check_planarity(_keyed_digraphable(g))
    if not ok:
        raise ValueError("graph is not planar")
    order: dict[str, tuple[str, ...]] = {}
    for v in g.vertices:
        nbrs = list(emb.neighbors_cw_order(v)) if g.degree(v) else []
        order[v] = tuple(_subdivision_to_edge(g, v, w) for w in nbrs)
    if outer is None and g.m:
        e0 = next(iter(g.edges))
        outer = (e0, 0)
    return RotationSystem(order, outer)


def _keyed_digraphable(g: Graph) -> nx.Graph:
    # networkx planar embeddings are per neighbor-vertex, which collapses
    # parallel edges; subdivide every edge with a marker node keyed by its id.
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for e, (u, v) in g.edges.items():
        h.add_edge(u, ("__edge__", e))
        h.add_edge(("__edge__", e), v)
    return h

def _subdivision_to_edge(g: Graph, v: str, w) -> str:
    if isinstance(w, tuple) and len(w) == 2 and w[0] == "__edge__":
        return w[1]
    raise ValueError("unexpected neighbor in subdivided planarity graph")


@dataclass(frozen=True)
class StGraph:
    """A graph with designated poles whose closure (adding st) stays planar
    and biconnected."""

    graph: Graph
    s: str
    t: str


@dataclass(frozen=True)
class EdgeCost:
    """Bend cost of a single edge.

    Either a flexibility (bends up to flex are free, more are forbidden) or a
    monotone table costs[b] for b bends, forbidden past the end of the table.
    """

    flex: int | None = None
    costs: tuple[float, ...] | None = None

    def __post_init__(self):
        if (self.flex is None) == (self.costs is None):
            raise ValueError("exactly one of flex/costs must be given")

    @property
    def is_flex(self) -> bool:
        return self.flex is not None

    def cap(self) -> int:
        """Largest bend count with finite cost."""
        if self.flex is not None:
            return self.flex
        return len(self.costs) - 1

    def cost(self, bends: int) -> float:
        if bends < 0:
            return INFINITY
        if self.flex is not None:
            return 0.0 if bends <= self.flex else INFINITY
        return self.costs[bends] if bends < len(self.costs) else INFINITY

    def is_convex(self) -> bool:
        if self.flex is not None:
            return True
        deltas = [b - a for a, b in zip(self.costs, self.costs[1:])]
        return all(x <= y for x, y in zip(deltas, deltas[1:]))


def flex_cost(flex: int) -> EdgeCost:
    return EdgeCost(flex=flex)


def table_cost(costs) -> EdgeCost:
    return EdgeCost(costs=tuple(float(c) for c in costs))


@dataclass(frozen=True)
class Instance:
    """A bend-minimization problem instance."""

    graph: Graph
    costs: dict[str, EdgeCost]
    poles: tuple[str, str] | None = None
    embedding: RotationSystem | None = None
    restrict_90: frozenset[str] = frozenset()
    bend_cap_override: int | None = None

    @property
    def is_flex(self) -> bool:
        return all(c.is_flex for c in self.costs.values())

    def flex(self, e: str) -> int:
        c = self.costs[e]
        if not c.is_flex:
            raise ValueError(f"edge {e!r} carries a cost table, not a flexibility")
        return c.flex

    def cap(self, e: str) -> int:
        return self.costs[e].cap()

    def bend_cap(self) -> int:
        """Global cap on the number of bends of any subgraph."""
        if self.bend_cap_override is not None:
            return self.bend_cap_override
        return 2 * self.graph.n + 4

    def with_graph(self, graph: Graph, costs=None) -> "Instance":
        return Instance(
            graph,
            dict(costs if costs is not None else self.costs),
            self.poles,
            None,
            self.restrict_90,
        )


def instance_from_flex(vertices, edge_list, poles=None, restrict_90=()) -> Instance:
    """Convenience constructor: edge_list of (id, u, v, flex)."""
    g = Graph(vertices, [(e, u, v) for e, u, v, _ in edge_list])
    costs = {e: flex_cost(fx) for e, _, _, fx in edge_list}
    return Instance(g, costs, poles=poles, restrict_90=frozenset(restrict_90))


def validate_instance(inst: Instance) -> list[str]:
    """Report every well-formedness violation; the instance is valid iff the
    report is empty."""
    report: list[str] = []
    g = inst.graph
    vset = set(g.vertices)
    if len(vset) != len(g.vertices):
        report.append("duplicate vertex ids")
    for e, (u, v) in g.edges.items():
        if u == v:
            report.append(f"self-loop on edge {e!r}")
        if u not in vset or v not in vset:
            report.append(f"edge {e!r} has a dangling endpoint")
    for v in g.vertices:
        if g.degree(v) > 4:
            report.append(f"vertex {v!r} has degree {g.degree(v)} > 4")
    if set(inst.costs) != set(g.edges):
        report.append("cost map does not cover the edge set exactly")
    for e, c in inst.costs.items():
        if c.is_flex:
            if c.flex < 0:
                report.append(f"edge {e!r} has negative flexibility")
        else:
            if not c.costs:
                report.append(f"edge {e!r} has an empty cost table")
            elif any(b < a for a, b in zip(c.costs, c.costs[1:])):
                report.append(f"edge {e!r} has a non-monotone cost table")
            elif any(x < 0 for x in c.costs):
                report.append(f"edge {e!r} has negative costs")
    if g.m and not any("self-loop" in r or "dangling" in r for r in report):
        if not nx.check_planarity(_keyed_digraphable(g))[0]:
            report.append("graph is not planar")
    if inst.poles is not None:
        for p in inst.poles:
            if p not in vset:
                report.append(f"pole {p!r} is not a vertex")
    for v in inst.restrict_90:
        if v not in vset:
            report.append(f"restricted vertex {v!r} is not a vertex")
        elif g.degree(v) != 2:
            report.append(f"restricted vertex {v!r} does not have degree 2")
    if inst.embedding is not None:
        try:
            faces(g, inst.embedding)
        except ValueError as exc:
            report.append(f"embedding invalid: {exc}")
        else:
            if inst.embedding.outer is None:
                report.append("embedding lacks an outer-face witness")
    return report


def classify_edge(e: str, st: StGraph, inst: Instance) -> str:
    """Classify an edge as flexible, semi-critical, or critical.

    Inflexible edges are critical when an endpoint has degree 4, or when an
    endpoint is a pole of degree >= 2 (poles acquire extra neighbors once the
    subgraph is plugged into a host graph).  Other inflexible edges are
    semi-critical.
    """
    if inst.costs[e].cap() > 0:
        return "flexible"
    g = st.graph
    for v in g.endpoints(e):
        if g.degree(v) == 4:
            return "critical"
        if v in (st.s, st.t) and g.degree(v) >= 2:
            return "critical"
    return "semi-critical"


def count_critical(st: StGraph, inst: Instance) -> int:
    return sum(
        1 for e in st.graph.edges if classify_edge(e, st, inst) == "critical"
    )


@dataclass
class ChainMerge:
    """Back-mapping of merge_degree2: per merged edge, the replaced chain."""

    merged: Instance
    # merged edge id -> ordered list of (edge id, dart direction) from the
    # chain's first anchor to its last, plus interior vertices in between.
    chains: dict[str, list[str]] = field(default_factory=dict)
    interior: dict[str, list[str]] = field(default_factory=dict)


def merge_degree2(inst: Instance) -> ChainMerge:
    """Collapse maximal chains through plain degree-2 vertices.

    Each chain of edges e1..er through r-1 interior degree-2 vertices becomes
    one edge with flexibility sum(flex(ei)) + (r - 1): an interior vertex can
    stand in for one extra turn.  Poles, restricted vertices, and cost-table
    edges refuse to merge.
    """
    g = inst.graph
    anchors = {
        v
        for v in g.vertices
        if g.degree(v) != 2
        or (inst.poles and v in inst.poles)
        or v in inst.restrict_90
    }
    for v in set(g.vertices) - anchors:
        for e in g.incident(v):
            if not inst.costs[e].is_flex:
                raise ValueError(f"cannot merge cost-table edge {e!r}")

    # pure cycles have no anchor; keep two vertices so no self-loop arises
    gx = g.to_networkx()
    for comp in nx.connected_components(gx):
        if not comp & anchors:
            ordered = sorted(comp)
            anchors.update(ordered[:2])

    while True:
        result = _merge_with_anchors(inst, anchors)
        if result is not None:
            return result
        # a chain closed back on its own anchor; _merge_with_anchors promoted
        # an interior vertex into `anchors`, retry


def _merge_with_anchors(inst: Instance, anchors: set[str]) -> ChainMerge | None:
    g = inst.graph
    new_edges: dict[str, tuple[str, str]] = {}
    new_costs: dict[str, EdgeCost] = {}
    chains: dict[str, list[str]] = {}
    interior: dict[str, list[str]] = {}
    used: set[str] = set()
    serial = itertools.count()

    for v in sorted(anchors):
        for e0 in sorted(g.incident(v)):
            if e0 in used:
                continue
            chain = [e0]
            used.add(e0)
            cur = g.other_end(e0, v)
            inner: list[str] = []
            while cur not in anchors:
                inner.append(cur)
                nxt = [e for e in g.incident(cur) if e != chain[-1]]
                (e_next,) = nxt
                chain.append(e_next)
                used.add(e_next)
                cur = g.other_end(e_next, cur)
            if cur == v and inner:
                anchors.add(inner[0])
                return None
            if len(chain) == 1:
                new_edges[e0] = g.edges[e0]
                new_costs[e0] = inst.costs[e0]
            else:
                eid = f"merged{next(serial)}"
                new_edges[eid] = (v, cur)
                new_costs[eid] = flex_cost(
                    sum(inst.flex(e) for e in chain) + len(inner)
                )
                chains[eid] = chain
                interior[eid] = inner
    kept = sorted(anchors)
    merged = Instance(
        Graph(kept, new_edges),
        new_costs,
        inst.poles,
        None,
        inst.restrict_90,
    )
    return ChainMerge(merged, chains, interior)
