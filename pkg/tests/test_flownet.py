import pytest

from orthoflex.flownet import (FlowNetwork, build_network, dump_dimacs,
                               flow_to_rep, network_for_instance, rep_to_flow,
                               rotation_range)
from orthoflex.model import instance_from_flex, planar_embedding
from orthoflex.oracle import enumerate_reps
from orthoflex.ortho import validate_rep

from conftest import digon, square


def test_square_network_feasible_and_valid():
    inst = square(1)
    rot = planar_embedding(inst.graph)
    net = network_for_instance(inst, rot)
    flow = net.solve()
    assert flow is not None
    rep = flow_to_rep(inst.graph, rot, flow)
    assert validate_rep(rep, inst) == []


def test_square_node_count():
    inst = square(1)
    rot = planar_embedding(inst.graph)
    net = network_for_instance(inst, rot)
    # 4 vertex + 4 edge + 2 face nodes
    assert len(net.demands) == 10


def test_digon_flex0_infeasible():
    inst = digon(0, 0)
    net = network_for_instance(inst, planar_embedding(inst.graph))
    assert net.solve() is None


def test_zero_network():
    net = FlowNetwork()
    net.add_node("a", 0)
    net.add_node("b", 0)
    net.add_arc("x", "a", "b", 0, 0)
    assert net.solve() == {"x": 0}


def test_conservation_on_solutions():
    inst = square(1)
    rot = planar_embedding(inst.graph)
    net = network_for_instance(inst, rot)
    flow_by_key = net.solve()
    arcs_by_key = {a.key: a for a in net.arcs}
    influx = {n: 0 for n in net.demands}
    for key, x in flow_by_key.items():
        arc = arcs_by_key[key]
        assert arc.lo <= x <= arc.hi
        influx[arc.dst] += x
        influx[arc.src] -= x
    for n, d in net.demands.items():
        assert influx[n] == d


def test_wide_edge_demands():
    # one (2,3)-edge and one (2,2)-edge: edge-node demands are sigma+tau-2
    from orthoflex.model import Graph
    g = Graph(list("cxy"), {"a": ("c", "x"), "b": ("c", "y")})
    rot = planar_embedding(g)
    bounds = {(e, d): (-4, 4) for e in g.edges for d in (0, 1)}
    net = build_network(g, rot, widths={"a": (2, 3), "b": (2, 2)},
                        edge_bounds=bounds)
    assert net.demands[("E", "a")] == 3
    assert net.demands[("E", "b")] == 2


def test_width_overflow_rejected():
    inst = digon(1, 1)
    rot = planar_embedding(inst.graph)
    bounds = {(e, d): (-2, 2) for e in inst.graph.edges for d in (0, 1)}
    with pytest.raises(ValueError):
        build_network(inst.graph, rot, widths={"a": (3, 3), "b": (2, 2)},
                      edge_bounds=bounds)


def test_rotation_range_single_edge():
    inst = instance_from_flex(["s", "t"], [("e", "s", "t", 1)])
    rot = planar_embedding(inst.graph)
    bounds = {("e", 0): (-1, 1), ("e", 1): (-1, 1)}
    net = build_network(inst.graph, rot, edge_bounds=bounds,
                        split_keys={("edge", ("e", 0))})
    assert rotation_range(net) == (-1, 1)


def test_rotation_range_endpoints_realizable():
    inst = square(1)
    rot = planar_embedding(inst.graph)
    g = inst.graph
    bounds = {(e, d): (-1, 1) for e in g.edges for d in (0, 1)}
    key = ("edge", (next(iter(g.edges)), 0))
    net = build_network(g, rot, edge_bounds=bounds, split_keys={key})
    lo, hi = rotation_range(net)
    for pin in (lo, hi):
        pinned = build_network(g, rot, edge_bounds=bounds, split_keys={key})
        for a in pinned.arcs:
            if a.key == ("bridge",):
                a.lo = a.hi = pin
        flow = pinned.solve()
        assert flow is not None
        rep = flow_to_rep(g, rot, flow)
        assert validate_rep(rep, inst) == []


def test_rotation_range_infeasible_empty():
    inst = digon(0, 0)
    rot = planar_embedding(inst.graph)
    bounds = {(e, d): (0, 0) for e in inst.graph.edges for d in (0, 1)}
    net = build_network(inst.graph, rot, edge_bounds=bounds,
                        split_keys={("edge", ("a", 0))})
    assert rotation_range(net) is None


def test_roundtrip_identity_corpus():
    for inst in (square(1), digon(1, 1)):
        for rep in enumerate_reps(inst):
            back = flow_to_rep(rep.graph, rep.rot, rep_to_flow(rep))
            assert back.rot_edge == rep.rot_edge
            assert back.rot_corner == rep.rot_corner


def test_digon_pinned_22_range():
    inst = digon(1, 1)
    rot = planar_embedding(inst.graph)
    g = inst.graph
    bounds = {(e, d): (-1, 1) for e in g.edges for d in (0, 1)}
    # pi(s, t) along edge a; pin both pole corners to sigma = tau = 2
    net = build_network(g, rot, edge_bounds=bounds, poles=("s", "t"),
                        sigma_tau=(2, 2), split_keys={("edge", ("a", 0))})
    rng = rotation_range(net)
    assert rng == (-1, -1)  # -rot(pi(s,t)) is forced to 1


def test_convex_cost_arcs():
    net = FlowNetwork()
    net.add_node("a", -2)
    net.add_node("b", 2)
    net.add_convex_arc("x", "a", "b", 0, 3, lambda x: float(x * x))
    flow = net.solve()
    assert flow == {"x": 2}


def test_nonconvex_cost_rejected():
    net = FlowNetwork()
    net.add_node("a", -1)
    net.add_node("b", 1)
    table = {0: 0.0, 1: 3.0, 2: 4.0, 3: 10.0}
    with pytest.raises(ValueError):
        net.add_convex_arc("x", "a", "b", 0, 3,
                           lambda x: [0.0, 3.0, 4.0, 10.0][x] if x != 2 else 1.0)


def test_dimacs_dump_smoke():
    inst = square(1)
    net = network_for_instance(inst, planar_embedding(inst.graph))
    text = dump_dimacs(net)
    assert text.startswith("p min") and "a " in text
