import pytest

from orthoflex.model import (Graph, Instance, flex_cost, instance_from_flex,
                             planar_embedding, table_cost)
from orthoflex.oracle import oracle_feasible, oracle_optimal
from orthoflex.ortho import rep_cost, validate_rep
from orthoflex.solve import (solve_fixed_embedding, solve_flexdraw_fpt,
                             solve_optimal, solve_sp_optimal, solve_st)

from conftest import (digon, k4, octahedron, random_flex_instance, square,
                      triangle_cost)


def test_solve_st_digon():
    prof = solve_st(digon(1, 1), "s", "t")
    assert prof.bend_costs(2, 2) == {1: 0.0}


def test_solve_st_single_edge():
    inst = instance_from_flex(["s", "t"], [("e", "s", "t", 1)])
    prof = solve_st(inst, "s", "t")
    assert prof.bend_costs(1, 1) == {0: 0.0, 1: 0.0}


def test_solve_st_k4_feasibility_matches_oracle():
    inst = k4(1)
    prof = solve_st(inst, "a", "b")
    assert prof.is_empty() == (not oracle_feasible(inst))


def test_triangle_cost_one():
    sol = solve_sp_optimal(triangle_cost())
    assert sol.status == "optimal" and sol.cost == 1


def test_two_triangles_cutvertex_cost_two():
    g = Graph(list("abcde"),
              {"ab": ("a", "b"), "bc": ("b", "c"), "ca": ("c", "a"),
               "cd": ("c", "d"), "de": ("d", "e"), "ec": ("e", "c")})
    inst = Instance(g, {e: table_cost([0, 1, 2, 3, 4]) for e in g.edges})
    sol = solve_optimal(inst)
    assert sol.cost == 2 == oracle_optimal(inst)


def test_tree_cost_zero():
    inst = Instance(
        Graph(list("abcd"), {"ab": ("a", "b"), "bc": ("b", "c"),
                             "bd": ("b", "d")}),
        {e: table_cost([0, 1]) for e in ("ab", "bc", "bd")},
    )
    assert solve_optimal(inst).cost == 0


def test_sp_two_edge_path():
    inst = Instance(
        Graph(list("abc"), {"ab": ("a", "b"), "bc": ("b", "c")}),
        {e: table_cost([0, 1, 2]) for e in ("ab", "bc")},
    )
    assert solve_sp_optimal(inst).cost == 0


def test_sp_digon_tables():
    g = Graph(["s", "t"], {"a": ("s", "t"), "b": ("s", "t")})
    inst = Instance(g, {"a": table_cost([0, 5]), "b": table_cost([0, 1])})
    sol = solve_sp_optimal(inst)
    assert sol.cost == oracle_optimal(inst) == 6


def test_sp_rejects_rigid():
    with pytest.raises(ValueError):
        solve_sp_optimal(Instance(
            k4(1).graph, {e: table_cost([0, 1, 2, 3]) for e in k4(1).graph.edges}
        ))


def test_octahedron_boundary():
    assert not solve_flexdraw_fpt(octahedron(2)).feasible
    assert solve_flexdraw_fpt(octahedron(3)).feasible


def test_fixed_embedding_square():
    inst = square(1)
    rot = planar_embedding(inst.graph)
    tabled = Instance(inst.graph,
                      {e: table_cost([0, 1, 2]) for e in inst.graph.edges})
    sol = solve_fixed_embedding(tabled, rot)
    assert sol.cost == 0


def test_fixed_embedding_digon():
    g = Graph(["s", "t"], {"a": ("s", "t"), "b": ("s", "t")})
    inst = Instance(g, {e: table_cost([0, 0]) for e in g.edges})
    sol = solve_fixed_embedding(inst, planar_embedding(g))
    assert sol.cost == 0 and sol.bends == {"a": 1, "b": 1}


def test_fixed_embedding_triangle():
    inst = triangle_cost()
    sol = solve_fixed_embedding(inst, planar_embedding(inst.graph))
    assert sol.cost == 1


def test_fixed_embedding_rejects_nonconvex():
    g = Graph(["s", "t"], {"a": ("s", "t"), "b": ("s", "t")})
    inst = Instance(g, {"a": table_cost([0, 3, 4]), "b": table_cost([0, 0])})
    with pytest.raises(ValueError):
        solve_fixed_embedding(inst, planar_embedding(g))


def test_disconnected_rejected():
    g = Graph(list("abcd"), {"ab": ("a", "b"), "cd": ("c", "d")})
    inst = Instance(g, {e: flex_cost(1) for e in g.edges})
    with pytest.raises(ValueError):
        solve_flexdraw_fpt(inst)


def test_witness_soundness_random():
    for trial in range(40):
        inst = random_flex_instance(trial)
        from orthoflex.model import validate_instance
        if validate_instance(inst):
            continue
        sol = solve_flexdraw_fpt(inst)
        if sol.feasible:
            assert sol.witness is not None
            assert validate_rep(sol.witness, inst) == []
            assert rep_cost(sol.witness, inst) == sol.cost == 0


def test_monotone_relaxation_metamorphic():
    # raising one edge's flexibility never breaks feasibility
    for trial in range(25):
        inst = random_flex_instance(trial)
        from orthoflex.model import validate_instance
        if validate_instance(inst):
            continue
        base = solve_flexdraw_fpt(inst).feasible
        if not base:
            continue
        for e in sorted(inst.graph.edges)[:2]:
            costs = dict(inst.costs)
            costs[e] = flex_cost(inst.flex(e) + 1)
            relaxed = Instance(inst.graph, costs)
            assert solve_flexdraw_fpt(relaxed).feasible


def test_solution_json_shape():
    sol = solve_flexdraw_fpt(square(1))
    doc = sol.to_json_dict()
    assert doc["status"] == "feasible"
    assert set(doc["bends"]) == set(square(1).graph.edges)
    assert "rotations" in doc
