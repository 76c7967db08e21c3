"""Top-level deciders and optimizers.

A connected instance is solved block by block over its block-cut tree: each
block is decomposed by its split-pair tree and the children's cost profiles
are composed bottom-up (series chains inside polygon nodes, parallel merges
inside bond nodes, flow-network rounds inside rigid nodes).  Every adjacent
vertex pair of a block is tried as the pole pair; profiles are memoized per
(tree node, parent edge), so re-rooting costs nothing.

Cutvertices shared by two blocks of local degree 2 must form 90-degree
angles so the per-block optima stay combinable; that restriction is threaded
through the series compositions and the admissible pole slot counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (Graph, Instance, StGraph, count_critical, faces,
                    validate_instance)
from .decomposition import SPQRTree, build_bc, build_spqr
from .compose import (CostProfile, bends_for, build_rep, check_gap_bounds,
                      parallel, profile_of_edge, rigid, series)
from .ortho import OrthoRep, validate_rep, rep_cost
from . import flownet

INF = float("inf")


@dataclass
class Solution:
    status: str                      # "feasible", "optimal", or "infeasible"
    cost: float = INF
    witness: OrthoRep | None = None
    bends: dict[str, int] = field(default_factory=dict)
    trace: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"

    def to_json_dict(self) -> dict:
        out = {
            "status": self.status,
            "cost": None if self.cost == INF else self.cost,
            "bends": dict(sorted(self.bends.items())),
            "trace": self.trace,
        }
        if self.witness is not None:
            out["rotations"] = {
                f"{e}/{d}": r for (e, d), r in sorted(self.witness.rot_edge.items())
            }
        return out


def _merge_profiles(profiles, poles, cap) -> CostProfile:
    out = CostProfile(poles, cap)
    for p in profiles:
        for (sigma, tau), bucket in p.entries.items():
            for beta, e in bucket.items():
                out.add(sigma, tau, beta, e.cost, e.recipe)
    return out


class BlockEngine:
    """Profile machinery for one biconnected block."""

    def __init__(self, inst: Instance, flags: frozenset[str],
                 flex_mode: bool, forbid_rigid: bool = False):
        self.inst = inst
        self.flags = flags
        self.flex_mode = flex_mode
        self.forbid_rigid = forbid_rigid
        self.g = inst.graph
        self.cap = inst.bend_cap()
        e0 = next(iter(self.g.edges))
        u0, v0 = self.g.edges[e0]
        self.tree: SPQRTree = build_spqr(StGraph(self.g, u0, v0))
        self._profiles: dict[tuple[str, str], CostProfile] = {}
        self._finals: dict[str, CostProfile] = {}
        self._k: dict[tuple[str, str] | str, int] = {}

    # -- critical-edge counts -------------------------------------------------

    def _has_inflexible(self) -> bool:
        return any(self.inst.costs[e].cap() == 0 for e in self.g.edges)

    def k_of(self, nid: str | None, parent_edge: str | None) -> int:
        """Critical-edge count of the pertinent graph, plus one per
        90-degree-restricted interior vertex (a forced corner constrains the
        achievable bend set exactly like one more critical edge)."""
        key = (nid, parent_edge)
        if key in self._k:
            return self._k[key]
        if not self._has_inflexible() and not self.flags:
            self._k[key] = 0
            return 0
        if nid is None:
            s, t = self.g.edges[parent_edge]
            st = StGraph(self.g, s, t)
        else:
            eids = self.tree.pertinent_edges(nid, parent_edge)
            s, t = self.tree.nodes[nid].edges[parent_edge]
            st = StGraph(self.g.subgraph(eids), s, t)
        k = count_critical(st, self.inst)
        k += sum(1 for v in self.flags
                 if v in st.graph.vertices and v not in (st.s, st.t))
        self._k[key] = k
        return k

    # -- profiles ---------------------------------------------------------------

    def edge_profile(self, e: str) -> CostProfile:
        return profile_of_edge(e, self.g.edges[e], self.inst.costs[e], self.cap)

    def _oriented(self, profile: CostProfile, want: tuple[str, str]) -> CostProfile:
        if profile.poles == want:
            return profile
        if profile.poles == (want[1], want[0]):
            return profile.flipped()
        raise ValueError(f"pole mismatch {profile.poles} vs {want}")

    def child_profile(self, nid: str, e: str) -> CostProfile:
        node = self.tree.nodes[nid]
        if e in node.virtual:
            other = self.tree.comp_for_virtual(e, nid)
            return self.node_profile(other, e)
        return self.edge_profile(e)

    def node_profile(self, nid: str, parent_edge: str) -> CostProfile:
        key = (nid, parent_edge)
        if key in self._profiles:
            return self._profiles[key]
        node = self.tree.nodes[nid]
        s, t = node.edges[parent_edge]
        kids = self.tree.children_of(nid, parent_edge)
        if node.kind == "S":
            prof = self._series_chain(nid, parent_edge, s, t, kids)
        elif node.kind == "P":
            parts = [
                self._oriented(self.child_profile(nid, e), (s, t)) for e in kids
            ]
            if len(parts) == 1:
                prof = parts[0]
            elif len(parts) == 2:
                prof = parallel(parts[0], parts[1])
            else:
                merged = []
                for i in range(len(parts)):
                    rest = [p for j, p in enumerate(parts) if j != i]
                    inner = parallel(rest[0], rest[1])
                    merged.append(parallel(inner, parts[i]))
                prof = _merge_profiles(merged, (s, t), self.cap)
        elif node.kind == "R":
            if self.forbid_rigid:
                raise ValueError("instance is not series-parallel")
            skel = Graph(
                sorted(node.vertices()),
                {e: uv for e, uv in node.edges.items() if e != parent_edge},
            )
            children = {
                e: self.child_profile(nid, e)
                for e in node.edges if e != parent_edge
            }
            prof = rigid(skel, (s, t), children, self.cap,
                         flex_mode=self.flex_mode)
        else:
            raise ValueError(f"unexpected node kind {node.kind}")
        if self.flex_mode and not prof.is_empty():
            check_gap_bounds(prof, self.k_of(nid, parent_edge))
        self._profiles[key] = prof
        return prof

    def _series_chain(self, nid, parent_edge, s, t, kids) -> CostProfile:
        node = self.tree.nodes[nid]
        nxt: dict[str, list[str]] = {}
        for e in kids:
            a, b = node.edges[e]
            nxt.setdefault(a, []).append(e)
            nxt.setdefault(b, []).append(e)
        chain = []
        cur, prev_edge = s, None
        while cur != t or not chain:
            (e,) = [x for x in nxt[cur] if x != prev_edge]
            chain.append((e, cur))
            cur = node.edges[e][1] if node.edges[e][0] == cur else node.edges[e][0]
            prev_edge = e
        prof = None
        for e, tail in chain:
            head = (node.edges[e][1] if node.edges[e][0] == tail
                    else node.edges[e][0])
            child = self._oriented(self.child_profile(nid, e), (tail, head))
            if prof is None:
                prof = child
            else:
                prof = series(prof, child, restrict=tail in self.flags)
        return prof

    def final_profile(self, ref: str) -> CostProfile:
        """Profile of the whole block with the reference edge on the outer
        face, poles at its endpoints."""
        if ref in self._finals:
            return self._finals[ref]
        owner = self.tree.real_owner[ref]
        node = self.tree.nodes[owner]
        if len(self.g.edges) == 1:
            prof = self.edge_profile(ref)
        else:
            inner = self.node_profile(owner, ref)
            prof = parallel(inner, self.edge_profile(ref))
        if self.flex_mode and not prof.is_empty():
            check_gap_bounds(prof, self.k_of(None, ref))
        self._finals[ref] = prof
        return prof

    # -- pole filters -------------------------------------------------------------

    def allowed_sigma(self, pole: str, insert_limit: int | None = None):
        out = {1, 2, 3, 4}
        if pole in self.flags:
            out &= {2, 4}
        if insert_limit is not None:
            out &= set(range(1, insert_limit + 1))
        return out

    def best(self, sigma_sets=None):
        """Cheapest entry over all pole pairs: (cost, ref, sigma, tau, beta).
        Under flexibility semantics the first admissible entry is already
        optimal (cost 0), so the pole scan stops early."""
        best = None
        for ref in sorted(self.g.edges):
            prof = self.final_profile(ref)
            u, v = self.g.edges[ref]
            su = self.allowed_sigma(u)
            sv = self.allowed_sigma(v)
            for (sigma, tau), bucket in sorted(prof.entries.items()):
                if sigma not in su or tau not in sv:
                    continue
                for beta, e in sorted(bucket.items()):
                    key = (e.cost, beta, sigma + tau)
                    if best is None or key < best[0]:
                        best = (key, ref, sigma, tau, beta)
            if best is not None and self.flex_mode:
                break
        if best is None:
            return None
        return best[0][0], best[1], best[2], best[3], best[4]

    def best_with_pole(self, v: str, insert_limit: int):
        """Cheapest entry among representations with v on the outer face and
        at most insert_limit occupied slots at v."""
        best = None
        for ref in sorted(self.g.incident(v)):
            prof = self.final_profile(ref)
            a, b = self.g.edges[ref]
            at_first = a == v
            sv = self.allowed_sigma(v, insert_limit)
            so = self.allowed_sigma(b if at_first else a)
            for (sigma, tau), bucket in sorted(prof.entries.items()):
                v_sig = sigma if at_first else tau
                o_sig = tau if at_first else sigma
                if v_sig not in sv or o_sig not in so:
                    continue
                for beta, e in sorted(bucket.items()):
                    key = (e.cost, beta, sigma + tau)
                    if best is None or key < best[0]:
                        best = (key, ref, sigma, tau, beta)
            if best is not None and self.flex_mode:
                break
        if best is None:
            return None
        return best[0][0], best[1], best[2], best[3], best[4]

    def build_witness(self, ref, sigma, tau, beta) -> OrthoRep:
        prof = self.final_profile(ref)
        return build_rep(prof, sigma, tau, -beta)


# -- assembling block witnesses at cutvertices -----------------------------------


def _bundle_at_pole(rep: OrthoRep, pole: str, first_edge: str) -> list[str]:
    cyc = rep.rot.order[pole]
    i = cyc.index(first_edge)
    return [cyc[(i + k) % len(cyc)] for k in range(len(cyc))]


def insert_block(host: OrthoRep, child: OrthoRep, v: str, w: str) -> OrthoRep:
    """Embed a child block representation (poles v, w; v shared with the
    host) into a host corner at v with enough angular room."""
    p_st = child.outer_path(v, w)
    p_ts = child.outer_path(w, v)
    sigma_c = child.rot_vertex_outer(v) + 3
    corner = None
    for d in sorted(host.rot_corner):
        if host.graph.dart_head(d) == v and host.rot_corner[d] <= 1 - sigma_c:
            if corner is None or host.rot_corner[d] < host.rot_corner[corner]:
                corner = d
    if corner is None:
        raise AssertionError(f"no corner at {v!r} admits a {sigma_c}-slot block")
    rho = host.rot_corner[corner]

    g_h, g_c = host.graph, child.graph
    vertices = list(g_h.vertices) + [x for x in g_c.vertices if x != v]
    edges = dict(g_h.edges)
    edges.update(g_c.edges)
    graph = Graph(vertices, edges)

    order = {x: host.rot.order[x] for x in g_h.vertices if x != v}
    order.update({x: child.rot.order[x] for x in g_c.vertices if x != v})
    bundle = _bundle_at_pole(child, v, p_st[0][0])
    cyc = list(host.rot.order[v])
    # the corner sits clockwise-after its in-dart's edge
    i = cyc.index(corner[0])
    cyc[i + 1:i + 1] = bundle
    order[v] = tuple(cyc)

    rot_edge = dict(host.rot_edge)
    rot_edge.update(child.rot_edge)
    rot_corner = dict(host.rot_corner)
    for d, rv in child.rot_corner.items():
        if d != p_ts[-1]:
            rot_corner[d] = rv
    rot_corner[corner] = 1
    rot_corner[p_ts[-1]] = rho + sigma_c

    widths = dict(host.widths)
    widths.update(child.widths)
    from .model import RotationSystem
    rot = RotationSystem(order, host.rot.outer)
    return OrthoRep(graph, rot, rot_edge, rot_corner, widths)


# -- shared driver -----------------------------------------------------------------


def _block_flags(g: Graph, bc, user_flags: frozenset[str]) -> list[frozenset[str]]:
    """Per block: vertices forced to 90 degrees.  A cutvertex is flagged in a
    block where it has degree 2 whenever another block also holds it with
    degree 2; user-restricted vertices are flagged in their (unique) block."""
    deg_in = []
    for edges in bc.blocks:
        d: dict[str, int] = {}
        for e in edges:
            for x in g.edges[e]:
                d[x] = d.get(x, 0) + 1
        deg_in.append(d)
    flags = []
    for i, edges in enumerate(bc.blocks):
        f = set()
        for v, d in deg_in[i].items():
            if d != 2:
                continue
            if v in user_flags:
                f.add(v)
            elif any(deg_in[j].get(v) == 2 for j in range(len(bc.blocks)) if j != i):
                f.add(v)
        flags.append(frozenset(f))
    return flags


def _solve_connected(inst: Instance, flex_mode: bool,
                     forbid_rigid: bool = False) -> Solution:
    problems = validate_instance(inst)
    if problems:
        raise ValueError("; ".join(problems))
    g = inst.graph
    if not g.is_connected():
        raise ValueError("instance is not connected")
    if g.m == 0:
        return Solution("optimal" if not flex_mode else "feasible", 0.0)
    bc = build_bc(g)
    flags = _block_flags(g, bc, inst.restrict_90)
    engines = []
    for i, edges in enumerate(bc.blocks):
        sub = Graph(sorted({x for e in edges for x in g.edges[e]}),
                    {e: g.edges[e] for e in edges})
        sub_inst = Instance(sub, {e: inst.costs[e] for e in edges},
                            restrict_90=flags[i])
        engines.append(BlockEngine(sub_inst, flags[i], flex_mode,
                                   forbid_rigid))

    deg_out: dict[tuple[int, str], int] = {}
    for i, edges in enumerate(bc.blocks):
        for v in bc.block_cuts[i]:
            inside = sum(1 for e in edges if v in g.edges[e])
            deg_out[(i, v)] = g.degree(v) - inside

    # per block, the best entry when hung off each of its cutvertices
    free_best = [eng.best() for eng in engines]
    hung_best: dict[tuple[int, str], tuple | None] = {}
    for i, eng in enumerate(engines):
        for v in bc.block_cuts[i]:
            limit = 4 - deg_out[(i, v)]
            hung_best[(i, v)] = eng.best_with_pole(v, limit)

    # BC-tree adjacency
    cut_blocks: dict[str, list[int]] = {}
    for i in range(len(bc.blocks)):
        for v in bc.block_cuts[i]:
            cut_blocks.setdefault(v, []).append(i)

    best_total, best_root, best_order = INF, None, None
    for root in range(len(bc.blocks)):
        if free_best[root] is None:
            continue
        total = free_best[root][0]
        bfs_order: list[tuple[int, str]] = []
        queue = [root]
        seen = {root}
        ok = True
        while queue and ok:
            i = queue.pop(0)
            for v in bc.block_cuts[i]:
                for j in cut_blocks[v]:
                    if j in seen:
                        continue
                    seen.add(j)
                    entry = hung_best[(j, v)]
                    if entry is None:
                        ok = False
                        break
                    bfs_order.append((j, v))
                    total += entry[0]
                    queue.append(j)
                if not ok:
                    break
        if ok and total < best_total:
            best_total, best_root, best_order = total, root, bfs_order

    if best_root is None or best_total == INF:
        return Solution("infeasible")

    # assemble the witness top-down
    _, ref, sigma, tau, beta = free_best[best_root]
    rep = engines[best_root].build_witness(ref, sigma, tau, beta)
    for j, v in best_order:
        _, refj, sj, tj, bj = hung_best[(j, v)]
        child = engines[j].build_witness(refj, sj, tj, bj)
        a, b = g.edges[refj]
        w = b if a == v else a
        rep = insert_block(rep, child, v, w)

    bad = validate_rep(rep, inst)
    if bad:
        raise AssertionError(f"assembled witness invalid: {bad}")
    cost = rep_cost(rep, inst)
    if abs(cost - best_total) > 1e-9:
        raise AssertionError(f"witness cost {cost} != reported {best_total}")
    status = "feasible" if flex_mode else "optimal"
    return Solution(status, best_total, rep,
                    {e: rep.edge_bends(e) for e in g.edges},
                    trace={"root_block": best_root,
                           "blocks": len(bc.blocks)})


# -- public solvers ------------------------------------------------------------------


def solve_st(inst: Instance, s: str, t: str) -> CostProfile:
    """Cost profile of an st-instance with both poles on the outer face
    (witnesses via compose.build_rep).

    With an s-t edge present this is the profile of the whole graph with
    that edge on the outer face.  Without one, an auxiliary closure edge
    roots the decomposition and the profile of the open graph is returned
    (the closure must still leave the graph planar and biconnected).
    """
    g = inst.graph
    ref = None
    for e, (a, b) in g.edges.items():
        if {a, b} == {s, t}:
            ref = e
            break
    flags = frozenset(v for v in inst.restrict_90 if g.degree(v) == 2)
    if ref is not None:
        eng = BlockEngine(inst, flags, flex_mode=inst.is_flex)
        prof = eng.final_profile(ref)
        if g.edges[ref] != (s, t):
            prof = prof.flipped()
        return prof
    from .model import flex_cost
    aux = "closure0"
    while aux in g.edges:
        aux += "x"
    g_aux = Graph(g.vertices, {**g.edges, aux: (s, t)})
    costs = dict(inst.costs)
    costs[aux] = flex_cost(0)
    inst_aux = Instance(g_aux, costs, restrict_90=inst.restrict_90)
    eng = BlockEngine(inst_aux, flags, flex_mode=inst.is_flex)
    owner = eng.tree.real_owner[aux]
    if len(g_aux.edges) == 1:
        raise ValueError("empty instance")
    prof = eng.node_profile(owner, aux)
    if eng.tree.nodes[owner].edges[aux] != (s, t):
        prof = prof.flipped()
    return prof


def solve_flexdraw_fpt(inst: Instance) -> Solution:
    """Feasibility of drawing with each edge's bends within its flexibility;
    exponential only in the number of critical inflexible edges."""
    if not inst.is_flex:
        raise ValueError("flexibility semantics required")
    sol = _solve_connected(inst, flex_mode=True)
    return sol


def solve_optimal(inst: Instance) -> Solution:
    """Minimum total bend cost over all planar embeddings (monotone cost
    tables)."""
    return _solve_connected(inst, flex_mode=False)


def solve_sp_optimal(inst: Instance) -> Solution:
    """solve_optimal restricted to series-parallel instances (rejects
    instances whose decomposition contains a rigid node)."""
    return _solve_connected(inst, flex_mode=False, forbid_rigid=True)


def solve_fixed_embedding(inst: Instance, emb=None) -> Solution:
    """Minimum-cost representation for one fixed embedding (convex cost
    tables)."""
    rot = emb if emb is not None else inst.embedding
    if rot is None:
        raise ValueError("an embedding is required")
    if rot.outer is None:
        raise ValueError("the embedding needs an outer-face witness")
    for e in inst.graph.edges:
        if not inst.costs[e].is_convex():
            raise ValueError(f"edge {e!r} has a non-convex cost table")
    net = flownet.network_for_instance(inst, rot, with_costs=True)
    flow = net.solve()
    if flow is None:
        return Solution("infeasible")
    rep = flownet.flow_to_rep(inst.graph, rot, flow)
    bad = validate_rep(rep, inst)
    if bad:
        raise AssertionError(f"flow produced an invalid representation: {bad}")
    cost = rep_cost(rep, inst)
    return Solution("optimal", cost, rep,
                    {e: rep.edge_bends(e) for e in inst.graph.edges},
                    trace={"mode": "fixed-embedding"})
