import pytest

from orthoflex.decomposition import build_bc, build_spqr, pertinent, reroot
from orthoflex.model import Graph, StGraph

from conftest import k4


def tri_comp_kinds(tree):
    return sorted(n.kind for n in tree.nodes.values())


def test_single_edge_degenerate():
    g = Graph(["s", "t"], {"e": ("s", "t")})
    tree = build_spqr(StGraph(g, "s", "t"))
    assert len(tree.nodes) == 1
    assert pertinent(tree).graph.edges == g.edges


def test_digon_one_bond():
    g = Graph(["s", "t"], {"a": ("s", "t"), "b": ("s", "t")})
    tree = build_spqr(StGraph(g, "s", "t"))
    assert tri_comp_kinds(tree) == ["P"]
    (node,) = tree.nodes.values()
    assert set(node.edges) == {"a", "b"}


def test_k4_single_rigid():
    tree = build_spqr(StGraph(k4(1).graph, "a", "b"))
    assert tri_comp_kinds(tree) == ["R"]
    (node,) = tree.nodes.values()
    assert len(node.edges) == 6 and not node.virtual


def test_triangle_polygon():
    g = Graph(list("abc"), {"ab": ("a", "b"), "bc": ("b", "c"),
                            "ca": ("c", "a")})
    tree = build_spqr(StGraph(g, "a", "b"))
    assert tri_comp_kinds(tree) == ["S"]


def test_square_with_chord():
    g = Graph(list("abcd"), {"ab": ("a", "b"), "bc": ("b", "c"),
                             "cd": ("c", "d"), "da": ("d", "a"),
                             "ac": ("a", "c")})
    tree = build_spqr(StGraph(g, "a", "c"))
    assert tri_comp_kinds(tree) == ["P", "S", "S"]
    bond = next(n for n in tree.nodes.values() if n.kind == "P")
    # the chord plus one virtual edge per path: at most 3 + parent edges
    assert len(bond.edges) == 3


def test_no_adjacent_same_kind():
    g = Graph(list("abcdef"),
              {"ab": ("a", "b"), "bc": ("b", "c"), "cd": ("c", "d"),
               "de": ("d", "e"), "ea": ("e", "a"), "bf": ("b", "f"),
               "fd": ("f", "d"), "bd": ("b", "d")})
    tree = build_spqr(StGraph(g, "b", "d"))
    for e, owners in tree.vedge_owners.items():
        kinds = {tree.nodes[o].kind for o in owners}
        assert kinds not in ({"S"}, {"P"})


def test_reroot_identity_and_sharing():
    tree = build_spqr(StGraph(k4(1).graph, "a", "b"))
    same = reroot(tree, tree.root_edge)
    assert same.root_edge == tree.root_edge
    other = reroot(tree, "cd")
    assert other.nodes is tree.nodes
    assert other.root_edge == "cd"


def test_reroot_series_parent_markers():
    g = Graph(list("abcd"), {"e1": ("a", "b"), "e2": ("b", "c"),
                             "e3": ("c", "d"), "e4": ("d", "a")})
    tree = build_spqr(StGraph(g, "a", "b"))
    p1 = tree.parent_of()
    tree2 = reroot(tree, "e2")
    p2 = tree2.parent_of()
    (nid,) = tree.nodes
    assert p1[nid] == "e1" and p2[nid] == "e2"


def test_pertinent_reconstruction_everywhere():
    g = Graph(list("abcdef"),
              {"ab": ("a", "b"), "bc": ("b", "c"), "cd": ("c", "d"),
               "de": ("d", "e"), "ea": ("e", "a"), "bf": ("b", "f"),
               "fd": ("f", "d"), "bd": ("b", "d")})
    tree = build_spqr(StGraph(g, "a", "b"))
    assert set(pertinent(tree).graph.edges) == set(g.edges)
    parents = tree.parent_of()
    # expanding any node's pertinent graph and the remainder partitions G
    for nid in tree.nodes:
        below = tree.pertinent_edges(nid, parents[nid])
        assert below <= set(g.edges)
        assert parents[nid] in tree.nodes[nid].edges


def test_pertinent_examples():
    g = Graph(["s", "t"], {"a": ("s", "t"), "b": ("s", "t")})
    tree = build_spqr(StGraph(g, "s", "t"))
    (nid,) = tree.nodes
    sub = pertinent(tree, nid, "a")
    assert set(sub.graph.edges) == {"b"}


def test_bond_size_bound():
    # four parallel edges: bond with 4 edges, i.e. 3 children plus parent
    g = Graph(["s", "t"], {f"e{i}": ("s", "t") for i in range(4)})
    tree = build_spqr(StGraph(g, "s", "t"))
    (node,) = tree.nodes.values()
    assert node.kind == "P" and len(node.edges) == 4


def test_not_biconnected_rejected():
    g = Graph(list("abc"), {"ab": ("a", "b"), "ab2": ("a", "b"),
                            "bc": ("b", "c"), "bc2": ("b", "c")})
    with pytest.raises(ValueError):
        build_spqr(StGraph(g, "a", "b"))


def test_unknown_reference_rejected():
    tree = build_spqr(StGraph(k4(1).graph, "a", "b"))
    with pytest.raises(ValueError):
        reroot(tree, "nope")


def test_dump_json():
    import json
    tree = build_spqr(StGraph(k4(1).graph, "a", "b"))
    doc = json.loads(tree.dump())
    assert doc["root_edge"] == "ab"
    assert doc["nodes"][0]["kind"] == "R"


def test_bc_biconnected_single_block():
    bc = build_bc(k4(1).graph)
    assert len(bc.blocks) == 1 and not bc.cutvertices


def test_bc_two_triangles():
    g = Graph(list("abcde"),
              {"ab": ("a", "b"), "bc": ("b", "c"), "ca": ("c", "a"),
               "cd": ("c", "d"), "de": ("d", "e"), "ec": ("e", "c")})
    bc = build_bc(g)
    assert len(bc.blocks) == 2 and bc.cutvertices == {"c"}


def test_bc_path():
    g = Graph(list("abc"), {"ab": ("a", "b"), "bc": ("b", "c")})
    bc = build_bc(g)
    assert sorted(map(sorted, bc.blocks)) == [["ab"], ["bc"]]
    assert bc.cutvertices == {"b"}
