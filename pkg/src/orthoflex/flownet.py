"""Flow networks whose feasible flows are exactly the valid orthogonal
representations of an embedded graph (wide edges included).

One node per vertex, face, and edge; one arc per edge-side and per corner,
carrying the rotation value as (possibly negative) flow.  Face nodes demand
+4 (outer: -4), edge nodes demand sigma + tau - 2, vertex nodes demand
4 - sum(sigma_i + 1); corner arcs are bounded to [-2, 1].

Feasibility and bound-range queries run through a C max-flow kernel after
the usual lower-bound transformation; cost minimization uses an own
successive-shortest-path solver with potentials (convex per-arc cost tables
are decomposed into parallel arcs with ascending marginals).
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .model import Dart, Graph, Instance, RotationSystem, faces, twin
from .ortho import OrthoRep

INF = float("inf")

stats = {"solves": 0, "range_queries": 0}


@dataclass
class Arc:
    key: object
    src: object
    dst: object
    lo: int
    hi: int
    cost: float = 0.0


@dataclass
class FlowNetwork:
    demands: dict[object, int] = field(default_factory=dict)
    arcs: list[Arc] = field(default_factory=list)

    def add_node(self, node, demand=0):
        self.demands[node] = self.demands.get(node, 0) + demand

    def add_arc(self, key, src, dst, lo, hi, cost=0.0):
        if lo > hi:
            raise ValueError(f"arc {key}: empty bound interval [{lo}, {hi}]")
        self.add_node(src)
        self.add_node(dst)
        self.arcs.append(Arc(key, src, dst, lo, hi, cost))

    def add_convex_arc(self, key, src, dst, lo, hi, cost_at):
        """An arc with convex cost: cost_at(x) for flow x in [lo, hi].
        Decomposed into parallel arcs with ascending marginal costs."""
        marginals = [cost_at(x) - cost_at(x - 1) for x in range(lo + 1, hi + 1)]
        if any(b < a - 1e-12 for a, b in zip(marginals, marginals[1:])):
            raise ValueError(f"arc {key}: cost table is not convex on [{lo},{hi}]")
        self.add_node(src)
        self.add_node(dst)
        # mandatory base flow lo at the (constant) cost of cost_at(lo)
        self.arcs.append(Arc(key, src, dst, lo, lo, 0.0))
        for i, m in enumerate(marginals):
            self.arcs.append(Arc(key, src, dst, 0, 1, m))

    def has_costs(self) -> bool:
        return any(a.cost for a in self.arcs)

    # -- solving ---------------------------------------------------------

    def _transformed(self):
        """Lower-bound shifted network: per-arc middle nodes keep parallel
        arcs separate in the matrix form."""
        nodes = list(self.demands)
        idx = {n: i for i, n in enumerate(nodes)}
        supply = {n: -d for n, d in self.demands.items()}
        # demand d means net inflow d; shifting arc flow x -> x - lo moves lo
        # units from src to dst unconditionally
        caps = []
        for a in self.arcs:
            supply[a.src] -= a.lo
            supply[a.dst] += a.lo
            caps.append(a.hi - a.lo)
        return nodes, idx, supply, caps

    def solve(self) -> dict | None:
        """A feasible integral flow minimizing total arc cost, as a map
        arc key -> flow (parallel arcs with one key summed), or None."""
        stats["solves"] += 1
        if self.has_costs():
            raw = self._solve_mincost()
        else:
            raw = self._solve_feasible()
        if raw is None:
            return None
        out: dict = {}
        for a, x in zip(self.arcs, raw):
            out[a.key] = out.get(a.key, 0) + x
        return out

    def _solve_feasible(self):
        nodes, idx, supply, caps = self._transformed()
        n = len(nodes)
        S, T = n + len(self.arcs), n + len(self.arcs) + 1
        rows, cols, vals = [], [], []
        for i, a in enumerate(self.arcs):
            if caps[i] <= 0:
                continue
            mid = n + i
            rows.append(idx[a.src]); cols.append(mid); vals.append(caps[i])
            rows.append(mid); cols.append(idx[a.dst]); vals.append(caps[i])
        total = 0
        for node, s in supply.items():
            if s > 0:
                rows.append(S); cols.append(idx[node]); vals.append(s)
                total += s
            elif s < 0:
                rows.append(idx[node]); cols.append(T); vals.append(-s)
        size = n + len(self.arcs) + 2
        mat = csr_matrix(
            (np.array(vals, dtype=np.int64), (rows, cols)), shape=(size, size)
        ).astype(np.int32)
        res = maximum_flow(mat, S, T)
        if res.flow_value != total:
            return None
        flow = res.flow
        out = []
        for i, a in enumerate(self.arcs):
            x = int(flow[idx[a.src], n + i]) if caps[i] > 0 else 0
            out.append(a.lo + x)
        return out

    def _solve_mincost(self):
        nodes, idx, supply, caps = self._transformed()
        n = len(nodes)
        S, T = n, n + 1
        # residual arc lists: (dst, cap, cost, reverse-index)
        adj: list[list] = [[] for _ in range(n + 2)]

        def add(u, v, cap, cost):
            adj[u].append([v, cap, cost, len(adj[v])])
            adj[v].append([u, 0, -cost, len(adj[u]) - 1])

        arc_ref = []
        for i, a in enumerate(self.arcs):
            u, v = idx[a.src], idx[a.dst]
            arc_ref.append((v, len(adj[u])) if caps[i] > 0 else None)
            if caps[i] > 0:
                add(u, v, caps[i], float(a.cost))
        total = 0
        for node, s in supply.items():
            if s > 0:
                add(S, idx[node], s, 0.0)
                total += s
            elif s < 0:
                add(idx[node], T, -s, 0.0)

        size = n + 2
        # Bellman-Ford potentials (costs may be negative)
        pot = [0.0] * size
        for _ in range(size):
            changed = False
            for u in range(size):
                for v, cap, cost, _r in adj[u]:
                    if cap > 0 and pot[u] + cost < pot[v] - 1e-12:
                        pot[v] = pot[u] + cost
                        changed = True
            if not changed:
                break

        sent = 0
        while sent < total:
            dist = [INF] * size
            dist[S] = 0.0
            prev: list = [None] * size
            heap = [(0.0, S)]
            while heap:
                d, u = heapq.heappop(heap)
                if d > dist[u] + 1e-12:
                    continue
                for ai, (v, cap, cost, _r) in enumerate(adj[u]):
                    if cap <= 0:
                        continue
                    nd = d + cost + pot[u] - pot[v]
                    if nd < dist[v] - 1e-12:
                        dist[v] = nd
                        prev[v] = (u, ai)
                        heapq.heappush(heap, (nd, v))
            if dist[T] == INF:
                return None
            for u in range(size):
                if dist[u] < INF:
                    pot[u] += dist[u]
            bottleneck = total - sent
            v = T
            while prev[v] is not None:
                u, ai = prev[v]
                bottleneck = min(bottleneck, adj[u][ai][1])
                v = u
            v = T
            while prev[v] is not None:
                u, ai = prev[v]
                arc = adj[u][ai]
                arc[1] -= bottleneck
                adj[v][arc[3]][1] += bottleneck
                v = u
            sent += bottleneck

        out = []
        for i, a in enumerate(self.arcs):
            if arc_ref[i] is None:
                out.append(a.lo)
            else:
                v, ai = arc_ref[i]
                used = adj[idx[a.src]][ai]
                out.append(a.lo + (caps[i] - used[1]))
        return out

    # -- range of the flow on one arc ------------------------------------

    def arc_range(self, key) -> tuple[int, int] | None:
        """[min, max] of the flow on the (unique) arc with this key over all
        feasible flows; every integer in between is achievable.  Requires a
        zero-cost network."""
        stats["range_queries"] += 1
        if self.has_costs():
            raise ValueError("arc_range expects a zero-cost network")
        base = self._solve_feasible()
        if base is None:
            return None
        (k,) = [i for i, a in enumerate(self.arcs) if a.key == key]
        bridge = self.arcs[k]
        x = base[k]
        up = self._residual_slack(base, k, forward=True)
        down = self._residual_slack(base, k, forward=False)
        return (x - min(down, x - bridge.lo), x + min(up, bridge.hi - x))

    def _residual_slack(self, base, k, forward: bool) -> int:
        """Max extra circulation through arc k (forward) or against it."""
        nodes, idx, supply, caps = self._transformed()
        n = len(nodes)
        rows, cols, vals = [], [], []
        for i, a in enumerate(self.arcs):
            if i == k:
                continue
            u, v, mid = idx[a.src], idx[a.dst], n + i
            fwd = a.hi - base[i]
            bwd = base[i] - a.lo
            if fwd > 0:
                rows.append(u); cols.append(mid); vals.append(fwd)
                rows.append(mid); cols.append(v); vals.append(fwd)
            if bwd > 0:
                rows.append(v); cols.append(mid); vals.append(bwd)
                rows.append(mid); cols.append(u); vals.append(bwd)
        bridge = self.arcs[k]
        src = idx[bridge.dst] if forward else idx[bridge.src]
        dst = idx[bridge.src] if forward else idx[bridge.dst]
        if src == dst:
            return 0
        size = n + len(self.arcs)
        mat = csr_matrix(
            (np.array(vals, dtype=np.int64), (rows, cols)), shape=(size, size)
        ).astype(np.int32)
        return int(maximum_flow(mat, src, dst).flow_value)


# -- bridge between representations and flows ---------------------------------


def build_network(g: Graph, rot: RotationSystem, *,
                  widths: dict[str, tuple[int, int]] | None = None,
                  edge_bounds: dict[Dart, tuple[int, int]],
                  poles: tuple[str, str] | None = None,
                  sigma_tau: tuple[int, int] | None = None,
                  edge_costs=None,
                  split_keys=None) -> FlowNetwork:
    """Flow network of an embedded graph.

    edge_bounds gives [lo, hi] for the rotation on each dart's side; poles
    plus sigma_tau pin the two outer corners to sigma-3 and tau-3.  With
    split_keys (a set of arc keys), those arcs are re-routed into a split
    copy of the outer face node connected by a ('bridge',) arc, whose flow
    equals the summed rotation along the split incidences.  edge_costs maps
    an edge id to a convex function of the (e, 0)-side rotation.
    """
    widths = widths or {}
    face_list = faces(g, rot)
    face_of = {}
    for i, f in enumerate(face_list):
        for d in f:
            face_of[d] = i
    if rot.outer is None:
        raise ValueError("embedding lacks an outer-face witness")
    outer = face_of[rot.outer]

    net = FlowNetwork()
    for i in range(len(face_list)):
        net.add_node(("F", i), 4 if i != outer else -4)
    for e in g.edges:
        s, t = widths.get(e, (1, 1))
        net.add_node(("E", e), s + t - 2)
    for v in g.vertices:
        occ_slots = 0
        occ_plus = 0
        for e in g.incident(v):
            s, t = widths.get(e, (1, 1))
            w = s if g.endpoints(e)[0] == v else t
            occ_slots += w
            occ_plus += w + 1
        if occ_slots > 4:
            raise ValueError(f"width overflow at vertex {v!r}")
        net.add_node(("V", v), 4 - occ_plus)

    split_keys = set(split_keys or ())
    if split_keys:
        net.add_node(("Fsplit",), 0)
        span = sum(hi - lo for lo, hi in edge_bounds.values()) + 8 * g.n
        net.add_arc(("bridge",), ("Fsplit",), ("F", outer), -span, span)

    def face_node(key, i):
        if key in split_keys:
            if i != outer:
                raise ValueError("split keys must lie on the outer face")
            return ("Fsplit",)
        return ("F", i)

    pole_corners = {}
    if poles is not None and sigma_tau is not None:
        s, t = poles
        for d in face_list[outer]:
            if g.dart_head(d) == s:
                pole_corners[d] = sigma_tau[0] - 3
            elif g.dart_head(d) == t:
                pole_corners[d] = sigma_tau[1] - 3

    for d in g.darts():
        key = ("edge", d)
        lo, hi = edge_bounds[d]
        dst = face_node(key, face_of[d])
        if edge_costs and d[0] in edge_costs:
            fn = edge_costs[d[0]]
            if d[1] == 0:
                net.add_convex_arc(key, ("E", d[0]), dst, lo, hi, fn)
            else:
                net.add_arc(key, ("E", d[0]), dst, lo, hi)
        else:
            net.add_arc(key, ("E", d[0]), dst, lo, hi)
    for d in g.darts():
        v = g.dart_head(d)
        key = ("corner", d)
        if d in pole_corners:
            lo = hi = pole_corners[d]
        else:
            lo, hi = -2, 1
        net.add_arc(key, ("V", v), face_node(key, face_of[d]), lo, hi)
    return net


def rep_to_flow(rep: OrthoRep) -> dict:
    """Rotation values as arc flows (the identity translation)."""
    out = {}
    for d, r in rep.rot_edge.items():
        out[("edge", d)] = r
    for d, r in rep.rot_corner.items():
        out[("corner", d)] = r
    return out


def flow_to_rep(g: Graph, rot: RotationSystem, assignment: dict,
                widths=None) -> OrthoRep:
    rot_edge = {}
    rot_corner = {}
    for key, x in assignment.items():
        if key[0] == "edge":
            rot_edge[key[1]] = x
        elif key[0] == "corner":
            rot_corner[key[1]] = x
    return OrthoRep(g, rot, rot_edge, rot_corner, widths)


def network_for_instance(inst: Instance, rot: RotationSystem,
                         with_costs: bool = False) -> FlowNetwork:
    """Fixed-embedding network of a plain instance; bends bounded by each
    edge's finite-cost cap plus the global cap."""
    g = inst.graph
    cap = inst.bend_cap()
    bounds = {}
    for e in g.edges:
        c = min(inst.cap(e), cap)
        bounds[(e, 0)] = (-c, c)
        bounds[(e, 1)] = (-c, c)
    costs = None
    if with_costs:
        costs = {}
        for e in g.edges:
            table = inst.costs[e]
            if not table.is_convex():
                raise ValueError(f"edge {e!r} has a non-convex cost table")
            costs[e] = (lambda t: (lambda x: t.cost(abs(x))))(table)
    return build_network(g, rot, edge_bounds=bounds, edge_costs=costs)


def rotation_range(net: FlowNetwork) -> tuple[int, int] | None:
    """Feasible range of the split-bridge flow (see build_network)."""
    return net.arc_range(("bridge",))


def dump_dimacs(net: FlowNetwork) -> str:
    """Text dump of a network in a DIMACS-like format, for debugging."""
    lines = [f"p min {len(net.demands)} {len(net.arcs)}"]
    ids = {n: i + 1 for i, n in enumerate(net.demands)}
    for n, d in net.demands.items():
        if d:
            lines.append(f"n {ids[n]} {d}  c {n}")
    for a in net.arcs:
        lines.append(
            f"a {ids[a.src]} {ids[a.dst]} {a.lo} {a.hi} {a.cost}  c {a.key}"
        )
    return "\n".join(lines) + "\n"
