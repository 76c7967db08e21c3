import pytest

from orthoflex.model import instance_from_flex
from orthoflex.oracle import (BudgetExceeded, EnumerationBudget,
                              enumerate_reps, oracle_feasible, oracle_optimal,
                              oracle_profile)
from orthoflex.ortho import validate_rep

from conftest import digon, square, triangle_cost


def test_single_edge_flex1_three_reps():
    inst = instance_from_flex(["s", "t"], [("e", "s", "t", 1)])
    reps = list(enumerate_reps(inst))
    assert len(reps) == 3
    assert sorted(r.rot_edge[("e", 0)] for r in reps) == [-1, 0, 1]


def test_digon_flex0_empty():
    assert not oracle_feasible(digon(0, 0))


def test_square_flex0_is_the_square():
    reps = list(enumerate_reps(square(0)))
    # one embedding, two outer-face choices; every corner is a right angle
    assert len(reps) == 2
    for rep in reps:
        assert all(r == 0 for r in rep.rot_edge.values())
        assert sorted(rep.rot_corner.values()) in ([-1, -1, -1, -1, 1, 1, 1, 1],)


def test_all_emitted_reps_validate():
    inst = triangle_cost((0, 1, 2))
    count = 0
    for rep in enumerate_reps(inst):
        assert validate_rep(rep, inst) == []
        count += 1
    assert count > 0


def test_oracle_optimal_triangle():
    assert oracle_optimal(triangle_cost()) == 1


def test_tree_feasible_cost0():
    inst = triangle_cost()
    tree = instance_from_flex(
        list("abc"), [("ab", "a", "b", 0), ("bc", "b", "c", 0)]
    )
    assert oracle_feasible(tree)


def test_budget_vertices():
    inst = instance_from_flex(
        [f"v{i}" for i in range(9)],
        [(f"e{i}", f"v{i}", f"v{i+1}", 1) for i in range(8)],
    )
    with pytest.raises(BudgetExceeded):
        list(enumerate_reps(inst, EnumerationBudget(max_vertices=8)))


def test_budget_reps():
    inst = square(2)
    with pytest.raises(BudgetExceeded):
        list(enumerate_reps(inst, EnumerationBudget(max_reps=5)))


def test_isomorphism_invariance():
    a = instance_from_flex(
        list("abc"), [("e1", "a", "b", 1), ("e2", "b", "c", 0),
                      ("e3", "c", "a", 1)]
    )
    b = instance_from_flex(
        list("xyz"), [("f1", "x", "y", 1), ("f2", "y", "z", 0),
                      ("f3", "z", "x", 1)]
    )
    assert oracle_feasible(a) == oracle_feasible(b)
    assert len(list(enumerate_reps(a))) == len(list(enumerate_reps(b)))


def test_profile_of_digon():
    prof = oracle_profile(digon(1, 1), "s", "t")
    assert prof == {(2, 2): {1: 0.0}}


def test_fixed_embedding_restriction():
    from orthoflex.model import planar_embedding, Instance
    inst = square(1)
    rot = planar_embedding(inst.graph)
    fixed = Instance(inst.graph, inst.costs, embedding=rot)
    free = len(list(enumerate_reps(inst)))
    pinned = len(list(enumerate_reps(fixed)))
    assert 0 < pinned < free
