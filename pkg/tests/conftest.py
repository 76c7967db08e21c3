import random

import networkx as nx
import pytest

from orthoflex.model import (Graph, Instance, flex_cost, instance_from_flex,
                             table_cost)


def octahedron(flex: int) -> Instance:
    V = list("uvwxyz")
    E = [("e%d" % i, a, b) for i, (a, b) in enumerate([
        ("u", "v"), ("u", "w"), ("u", "x"), ("u", "y"),
        ("z", "v"), ("z", "w"), ("z", "x"), ("z", "y"),
        ("v", "w"), ("w", "x"), ("x", "y"), ("y", "v")])]
    return instance_from_flex(V, [(e, a, b, flex) for e, a, b in E])


def k4(flex: int) -> Instance:
    E = [("ab", "a", "b"), ("ac", "a", "c"), ("ad", "a", "d"),
         ("bc", "b", "c"), ("bd", "b", "d"), ("cd", "c", "d")]
    return instance_from_flex(list("abcd"), [(e, a, b, flex) for e, a, b in E])


def square(flex: int) -> Instance:
    return instance_from_flex(
        list("abcd"),
        [("e1", "a", "b", flex), ("e2", "b", "c", flex),
         ("e3", "c", "d", flex), ("e4", "d", "a", flex)],
    )


def digon(f1: int, f2: int) -> Instance:
    return instance_from_flex(
        ["s", "t"], [("a", "s", "t", f1), ("b", "s", "t", f2)]
    )


def triangle_cost(table=(0, 1, 2, 3, 4)) -> Instance:
    g = Graph(list("abc"), {"ab": ("a", "b"), "bc": ("b", "c"),
                            "ca": ("c", "a")})
    return Instance(g, {e: table_cost(table) for e in g.edges})


def random_connected_4planar(n: int, extra_edges: int, rng: random.Random,
                             multi: bool = True) -> nx.MultiGraph:
    G = nx.MultiGraph()
    G.add_nodes_from(range(n))
    nodes = list(range(n))
    rng.shuffle(nodes)
    for i in range(1, n):
        a = nodes[i]
        b = rng.choice(nodes[:i])
        if G.degree(a) >= 4 or G.degree(b) >= 4:
            b = min((nodes[x] for x in range(i)), key=G.degree)
        G.add_edge(a, b)
    for _ in range(extra_edges):
        a, b = rng.sample(range(n), 2)
        if G.degree(a) >= 4 or G.degree(b) >= 4:
            continue
        if not multi and G.has_edge(a, b):
            continue
        G.add_edge(a, b)
        if not nx.check_planarity(nx.Graph(G))[0]:
            G.remove_edge(a, b)
    return G


def nx_to_instance(G: nx.MultiGraph, costs) -> Instance:
    edges = {}
    cost_map = {}
    for i, (u, v, _k) in enumerate(G.edges(keys=True)):
        eid = f"e{i}"
        edges[eid] = (str(u), str(v))
        cost_map[eid] = costs(i)
    return Instance(Graph([str(v) for v in G.nodes()], edges), cost_map)


def random_flex_instance(trial: int, n_max: int = 6,
                         flexes=(0, 1, 2)) -> Instance:
    rng = random.Random(77000 + trial)
    n = rng.randint(2, n_max)
    G = random_connected_4planar(n, rng.randint(0, n), rng)
    return nx_to_instance(G, lambda i, r=rng: flex_cost(r.choice(flexes)))


def random_sp_graph(rng: random.Random, max_edges: int = 8):
    """A series-parallel multigraph built by random compositions, as
    (edge dict, pole pair)."""
    serial = [0]

    def fresh_vertex():
        serial[0] += 1
        return f"n{serial[0]}"

    def build(budget):
        if budget <= 1 or rng.random() < 0.3:
            return {f"se{fresh_vertex()}": ("s", "t")}, 1
        left = rng.randint(1, budget - 1)
        e1, used1 = build(left)
        e2, used2 = build(budget - used1)
        if rng.random() < 0.5:
            # series: rename t of first / s of second to a fresh middle
            mid = fresh_vertex()
            out = {}
            for eid, (a, b) in e1.items():
                out[eid + "a"] = (a if a != "t" else mid, b if b != "t" else mid)
            for eid, (a, b) in e2.items():
                out[eid + "b"] = (a if a != "s" else mid, b if b != "s" else mid)
            return out, used1 + used2
        out = {}
        for eid, (a, b) in e1.items():
            out[eid + "a"] = (a, b)
        for eid, (a, b) in e2.items():
            out[eid + "b"] = (a, b)
        return out, used1 + used2

    edges, _ = build(rng.randint(1, max_edges))
    # uniqueify internal vertex names already unique; relabel edge ids
    out = {}
    for i, (eid, ab) in enumerate(sorted(edges.items())):
        out[f"e{i}"] = ab
    return out


def random_sp_instance(trial: int, max_edges: int = 7,
                       table_len: int = 3) -> Instance | None:
    rng = random.Random(31000 + trial)
    edges = random_sp_graph(rng, max_edges)
    verts = sorted({v for ab in edges.values() for v in ab})
    deg = {}
    for a, b in edges.values():
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    if max(deg.values()) > 4 or len(verts) > 8:
        return None
    costs = {}
    for e in edges:
        length = rng.randint(1, table_len)
        vals = [0.0]
        for _ in range(length - 1):
            vals.append(vals[-1] + rng.randint(0, 3))
        costs[e] = table_cost(vals)
    return Instance(Graph(verts, edges), costs)
