"""Split-pair decomposition trees (SPQR) and block-cut trees.

The SPQR tree is built by repeated splitting at separation pairs followed by
merging of adjacent bonds and adjacent polygons, which yields the canonical
decomposition into bonds (P), polygons (S), and triconnected skeletons (R);
every real edge additionally gets a Q leaf.  Construction is quadratic-ish,
which is fine at the instance sizes this package targets; degree-2 chains
are compressed wholesale so long cycles do not degenerate the splitting.

Virtual edges carry stable ids, so cost profiles computed for a subtree stay
attached across re-rootings.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import networkx as nx

from .model import Graph, StGraph


@dataclass
class SPQRNode:
    node_id: str
    kind: str                       # "S", "P", "R", or "Q"
    edges: dict[str, tuple[str, str]]
    virtual: set[str] = field(default_factory=set)

    def vertices(self) -> set[str]:
        return {v for uv in self.edges.values() for v in uv}


class SPQRTree:
    """Unrooted skeleton tree plus a designated reference (root) edge."""

    def __init__(self, graph: Graph, comps: list[SPQRNode], root_edge: str):
        self.graph = graph
        self.nodes: dict[str, SPQRNode] = {}
        self.vedge_owners: dict[str, list[str]] = {}
        self.real_owner: dict[str, str] = {}
        for comp in comps:
            self.nodes[comp.node_id] = comp
            for e in comp.edges:
                if e in comp.virtual:
                    self.vedge_owners.setdefault(e, []).append(comp.node_id)
                else:
                    self.real_owner[e] = comp.node_id
        for e, owners in self.vedge_owners.items():
            if len(owners) != 2:
                raise ValueError(f"virtual edge {e!r} owned by {owners}")
        if root_edge not in self.real_owner:
            raise ValueError(f"reference edge {root_edge!r} not in the graph")
        self.root_edge = root_edge
        self._check()

    # -- structure -----------------------------------------------------------

    def _check(self):
        for nid, node in self.nodes.items():
            if node.kind == "P":
                k = len(node.edges)
                pair = {v for uv in node.edges.values() for v in uv}
                # a 2-edge bond is only legal as a whole-graph digon
                if len(pair) != 2 or k < 3 and node.virtual:
                    raise ValueError(f"malformed bond {nid}")
            if node.kind == "S":
                if any(
                    sum(1 for uv in node.edges.values() if v in uv) != 2
                    for v in node.vertices()
                ):
                    raise ValueError(f"malformed polygon {nid}")
        for e, owners in self.vedge_owners.items():
            kinds = {self.nodes[o].kind for o in owners}
            if kinds == {"P"} or kinds == {"S"}:
                raise ValueError(f"adjacent {kinds} nodes share {e!r}")

    def neighbors(self, nid: str) -> list[tuple[str, str]]:
        """(virtual edge id, neighbor comp id) pairs."""
        out = []
        for e in self.nodes[nid].virtual:
            a, b = self.vedge_owners[e]
            out.append((e, b if a == nid else a))
        return out

    # -- rooted view -----------------------------------------------------------

    def reroot(self, edge: str) -> "SPQRTree":
        if edge not in self.graph.edges:
            raise ValueError(f"unknown edge {edge!r}")
        t = SPQRTree.__new__(SPQRTree)
        t.graph = self.graph
        t.nodes = self.nodes
        t.vedge_owners = self.vedge_owners
        t.real_owner = self.real_owner
        t.root_edge = edge
        return t

    def parent_of(self) -> dict[str, str | None]:
        """Comp id -> the skeleton edge that acts as its parent marker under
        the current root."""
        start = self.real_owner[self.root_edge]
        parent: dict[str, str | None] = {start: self.root_edge}
        stack = [start]
        while stack:
            nid = stack.pop()
            for e, nb in self.neighbors(nid):
                if nb not in parent:
                    parent[nb] = e
                    stack.append(nb)
        return parent

    def children_of(self, nid: str, parent_edge: str) -> list[str]:
        """Skeleton edges of nid other than the parent marker (each is a Q
        child if real, a comp child if virtual)."""
        return [e for e in self.nodes[nid].edges if e != parent_edge]

    def poles_of_edge(self, nid: str, e: str) -> tuple[str, str]:
        return self.nodes[nid].edges[e]

    def comp_for_virtual(self, e: str, not_nid: str) -> str:
        a, b = self.vedge_owners[e]
        return b if a == not_nid else a

    # -- pertinent graphs -------------------------------------------------------

    def pertinent_edges(self, nid: str, parent_edge: str) -> set[str]:
        """Real edge ids of the pertinent graph hanging below nid."""
        out: set[str] = set()
        stack = [(nid, parent_edge)]
        while stack:
            cur, pe = stack.pop()
            node = self.nodes[cur]
            for e in node.edges:
                if e == pe:
                    continue
                if e in node.virtual:
                    stack.append((self.comp_for_virtual(e, cur), e))
                else:
                    out.add(e)
        return out

    def dump(self) -> str:
        payload = {
            "root_edge": self.root_edge,
            "nodes": [
                {
                    "id": nid,
                    "kind": node.kind,
                    "edges": {
                        e: {"ends": list(uv), "virtual": e in node.virtual}
                        for e, uv in sorted(node.edges.items())
                    },
                }
                for nid, node in sorted(self.nodes.items())
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def pertinent(tree: SPQRTree, nid: str | None = None,
              parent_edge: str | None = None) -> StGraph:
    """The pertinent graph below a node as an st-graph (poles = parent-edge
    endpoints under the current rooting).  nid None means the root Q-node,
    whose pertinent graph is the whole graph."""
    if nid is None:
        s, t = tree.graph.edges[tree.root_edge]
        return StGraph(tree.graph, s, t)
    if parent_edge is None:
        parent_edge = tree.parent_of()[nid]
    s, t = tree.nodes[nid].edges[parent_edge]
    eids = tree.pertinent_edges(nid, parent_edge)
    return StGraph(tree.graph.subgraph(eids), s, t)


# -- construction ---------------------------------------------------------------


def _separation_classes(edges: dict[str, tuple[str, str]], u: str, v: str):
    """Edge classes w.r.t. the pair {u, v}: direct u-v edges are singleton
    classes, other edges are grouped by the component of the rest."""
    comp_of: dict[str, int] = {}
    adj: dict[str, list[tuple[str, str]]] = {}
    for e, (a, b) in edges.items():
        if {a, b} == {u, v}:
            continue
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    classes: list[list[str]] = []
    seen_v: set[str] = set()
    for w in adj:
        if w in (u, v) or w in seen_v:
            continue
        group: list[str] = []
        stack = [w]
        seen_v.add(w)
        while stack:
            x = stack.pop()
            for e, y in adj.get(x, ()):
                comp_of.setdefault(e, len(classes))
                if y not in (u, v) and y not in seen_v:
                    seen_v.add(y)
                    stack.append(y)
        classes.append(group)
    grouped: dict[int, list[str]] = {}
    for e, ci in comp_of.items():
        grouped.setdefault(ci, []).append(e)
    out = list(grouped.values())
    for e, (a, b) in edges.items():
        if {a, b} == {u, v}:
            out.append([e])
    return out


def _is_cycle(edges: dict[str, tuple[str, str]]) -> bool:
    deg: dict[str, int] = {}
    for a, b in edges.values():
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    verts = set(deg)
    # connected 2-regular graph with |E| == |V| is a single cycle
    return len(edges) == len(verts) and _connected(edges)


def _connected(edges) -> bool:
    verts = {v for uv in edges.values() for v in uv}
    if not verts:
        return True
    adj: dict[str, list[str]] = {v: [] for v in verts}
    for a, b in edges.values():
        adj[a].append(b)
        adj[b].append(a)
    seen = {next(iter(verts))}
    stack = list(seen)
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def _is_bond(edges) -> bool:
    pairs = {frozenset(uv) for uv in edges.values()}
    return len(pairs) == 1 and len(next(iter(pairs))) == 2


def _find_separation_pair(edges):
    """Some pair admitting a canonical split, or None (then the component is
    triconnected, a cycle, or a bond)."""
    verts = sorted({v for uv in edges.values() for v in uv})
    by_pair: dict[frozenset, int] = {}
    for uv in edges.values():
        by_pair[frozenset(uv)] = by_pair.get(frozenset(uv), 0) + 1
    # parallel edges in a component that is not a bond always split
    for pair, cnt in sorted(by_pair.items(), key=lambda kv: sorted(kv[0])):
        if cnt >= 2 and len(edges) > cnt:
            u, v = sorted(pair)
            classes = _separation_classes(edges, u, v)
            if _splittable(classes):
                return u, v, classes
    simple = nx.Graph()
    simple.add_nodes_from(verts)
    simple.add_edges_from([tuple(uv) for uv in edges.values()])
    for u in verts:
        h = simple.copy()
        h.remove_node(u)
        for v in sorted(nx.articulation_points(h)):
            classes = _separation_classes(edges, u, v)
            if _splittable(classes):
                return (u, v, classes) if u < v else (v, u, classes)
    # adjacent pairs with >= 3 classes (not caught by articulation)
    for pair in sorted(by_pair, key=sorted):
        u, v = sorted(pair)
        classes = _separation_classes(edges, u, v)
        if _splittable(classes):
            return u, v, classes
    return None


def _splittable(classes) -> bool:
    if len(classes) < 2:
        return False
    if len(classes) == 2 and min(len(c) for c in classes) == 1:
        return False
    if len(classes) == 3 and all(len(c) == 1 for c in classes):
        return False
    return True


def _compress_chains(edges, fresh_vid):
    """Split every maximal degree-2 chain off as a polygon component."""
    deg: dict[str, int] = {}
    for a, b in edges.values():
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    anchors = {v for v, d in deg.items() if d != 2}
    if not anchors or _is_cycle(edges):
        return edges, [], set()
    adj: dict[str, list[tuple[str, str]]] = {}
    for e, (a, b) in edges.items():
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    polygons = []
    used: set[str] = set()
    new_edges = dict(edges)
    new_vids: set[str] = set()
    for a in sorted(anchors):
        for e0, w in sorted(adj.get(a, ())):
            if e0 in used or w in anchors:
                continue
            chain = [e0]
            used.add(e0)
            cur = w
            while cur not in anchors:
                (nxt,) = [(e, y) for e, y in adj[cur] if e != chain[-1]]
                chain.append(nxt[0])
                used.add(nxt[0])
                cur = nxt[1]
            vid = fresh_vid()
            poly = {e: edges[e] for e in chain}
            poly[vid] = (a, cur)
            polygons.append((poly, {vid}))
            for e in chain:
                del new_edges[e]
            new_edges[vid] = (a, cur)
            new_vids.add(vid)
    return new_edges, polygons, new_vids


def _triconnected_components(g: Graph):
    """Canonical components: list of (edges, virtual-id set)."""
    serial = itertools.count()

    def fresh_vid() -> str:
        while True:
            vid = f"virt{next(serial)}"
            if vid not in g.edges:
                return vid

    work = [(dict(g.edges), set())]
    done: list[tuple[dict, set]] = []
    while work:
        edges, virt = work.pop()
        if len(edges) <= 2 or _is_bond(edges) or _is_cycle(edges):
            done.append((edges, virt))
            continue
        compressed, polys, new_vids = _compress_chains(edges, fresh_vid)
        if polys:
            for poly, pvirt in polys:
                done.append((poly, (set(poly) & virt) | pvirt))
            work.append((compressed, (virt & set(compressed)) | new_vids))
            continue
        found = _find_separation_pair(edges)
        if found is None:
            done.append((edges, virt))
            continue
        u, v, classes = found
        if len(classes) == 2:
            # binary split, one shared virtual edge
            vid = fresh_vid()
            for cls in classes:
                part = {e: edges[e] for e in cls}
                part[vid] = (u, v)
                work.append((part, (virt & set(part)) | {vid}))
        else:
            hub: dict[str, tuple[str, str]] = {}
            hub_virt: set[str] = set()
            for cls in classes:
                if len(cls) == 1:
                    e = cls[0]
                    hub[e] = edges[e]
                    if e in virt:
                        hub_virt.add(e)
                else:
                    vid = fresh_vid()
                    part = {e: edges[e] for e in cls}
                    part[vid] = (u, v)
                    work.append((part, (virt & set(part)) | {vid}))
                    hub[vid] = (u, v)
                    hub_virt.add(vid)
            done.append((hub, hub_virt))

    # merge adjacent bonds and adjacent polygons over shared virtual edges
    changed = True
    while changed:
        changed = False
        owners: dict[str, list[int]] = {}
        for i, (edges, virt) in enumerate(done):
            for e in virt:
                owners.setdefault(e, []).append(i)
        for e, idx in owners.items():
            if len(idx) != 2:
                continue
            i, j = idx
            a_edges, a_virt = done[i]
            b_edges, b_virt = done[j]
            both_bonds = _is_bond(a_edges) and _is_bond(b_edges)
            both_cycles = _is_cycle(a_edges) and _is_cycle(b_edges)
            if not (both_bonds or both_cycles):
                continue
            merged = {k: val for k, val in a_edges.items() if k != e}
            merged.update({k: val for k, val in b_edges.items() if k != e})
            mvirt = (a_virt | b_virt) - {e}
            done = [c for k, c in enumerate(done) if k not in (i, j)]
            done.append((merged, mvirt))
            changed = True
            break
    return done


def build_spqr(st: StGraph) -> SPQRTree:
    """Decomposition tree of a biconnected graph, rooted at an edge joining
    the poles."""
    g = st.graph
    ref = None
    for e, (a, b) in g.edges.items():
        if {a, b} == {st.s, st.t}:
            ref = e
            break
    if ref is None:
        raise ValueError("the poles must be joined by an edge")
    gx = g.to_networkx()
    if g.n > 2 and (not nx.is_connected(gx) or list(nx.articulation_points(gx))):
        raise ValueError("graph is not biconnected")
    comps = []
    if g.m == 1:
        comps = [SPQRNode("n0", "Q", dict(g.edges), set())]
        # single edge: degenerate tree, the lone Q node is the root
        return SPQRTree(g, comps, ref)
    for i, (edges, virt) in enumerate(_triconnected_components(g)):
        if _is_bond(edges):
            kind = "P"
        elif _is_cycle(edges):
            kind = "S"
        else:
            kind = "R"
        comps.append(SPQRNode(f"n{i}", kind, edges, set(virt)))
    return SPQRTree(g, comps, ref)


def reroot(tree: SPQRTree, edge: str) -> SPQRTree:
    return tree.reroot(edge)


# -- block-cut trees --------------------------------------------------------------


@dataclass
class BCTree:
    blocks: list[set[str]]                  # edge-id sets
    cutvertices: set[str]
    block_cuts: list[set[str]]              # cutvertices per block

    def blocks_at(self, v: str) -> list[int]:
        return [i for i, cuts in enumerate(self.block_cuts) if v in cuts]

    def block_vertices(self, g: Graph, i: int) -> set[str]:
        return {v for e in self.blocks[i] for v in g.edges[e]}


def build_bc(g: Graph) -> BCTree:
    if not g.is_connected():
        raise ValueError("block-cut tree needs a connected graph")
    gx = nx.Graph(g.to_networkx())
    cuts = set(nx.articulation_points(gx))
    blocks = []
    for verts in nx.biconnected_components(gx):
        blocks.append({
            e for e, (u, v) in g.edges.items() if u in verts and v in verts
        })
    blocks.sort(key=lambda s: sorted(s))
    block_cuts = []
    for b in blocks:
        verts = {v for e in b for v in g.edges[e]}
        block_cuts.append(verts & cuts)
    return BCTree(blocks, cuts, block_cuts)
