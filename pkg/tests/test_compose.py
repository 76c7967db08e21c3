import pytest

from orthoflex.compose import (CostProfile, build_rep, gap, parallel,
                               profile_of_edge, rigid, rotation_intervals,
                               series)
from orthoflex.model import Graph, flex_cost, table_cost
from orthoflex.oracle import oracle_profile
from orthoflex.ortho import bends_st, validate_rep
from orthoflex.solve import solve_st

from conftest import digon, k4

CAP = 12


def edge_profile(eid, ends, cost):
    return profile_of_edge(eid, ends, cost, CAP)


def test_profile_of_flex_edge():
    p = edge_profile("e", ("s", "t"), flex_cost(1))
    assert p.bend_costs(1, 1) == {0: 0.0, 1: 0.0}
    p0 = edge_profile("e", ("s", "t"), flex_cost(0))
    assert p0.bend_costs(1, 1) == {0: 0.0}


def test_profile_of_table_edge():
    p = edge_profile("e", ("s", "t"), table_cost([0, 1, 3]))
    assert p.bend_costs(1, 1) == {0: 0.0, 1: 1.0, 2: 3.0}


def test_series_two_flex1():
    p1 = edge_profile("e1", ("s", "v"), flex_cost(1))
    p2 = edge_profile("e2", ("v", "t"), flex_cost(1))
    out = series(p1, p2)
    assert sorted(out.bend_costs(1, 1)) == [0, 1, 2, 3]


def test_series_two_flex0():
    p1 = edge_profile("e1", ("s", "v"), flex_cost(0))
    p2 = edge_profile("e2", ("v", "t"), flex_cost(0))
    out = series(p1, p2)
    assert sorted(out.bend_costs(1, 1)) == [0, 1]


def test_series_restricted():
    # the forced corner at the shared vertex removes the straight options
    p1 = edge_profile("e1", ("s", "v"), flex_cost(1))
    p2 = edge_profile("e2", ("v", "t"), flex_cost(1))
    out = series(p1, p2, restrict=True)
    free = series(p1, p2)
    # oracle: bend counts still 0..3 but e.g. the straight-line drawing dies
    from orthoflex.model import instance_from_flex
    from orthoflex.oracle import enumerate_reps
    inst = instance_from_flex(
        ["s", "v", "t"],
        [("e1", "s", "v", 1), ("e2", "v", "t", 1)],
        restrict_90=["v"],
    )
    achievable = set()
    for rep in enumerate_reps(inst, poles=("s", "t")):
        if abs(rep.rot_vertex_outer("v")) != 1:
            continue
        beta, sigma, tau = bends_st(rep, "s", "t")
        if (sigma, tau) == (1, 1):
            achievable.add(beta)
    assert set(out.bend_costs(1, 1)) == achievable


def test_parallel_digon():
    p1 = edge_profile("a", ("s", "t"), flex_cost(1))
    p2 = edge_profile("b", ("s", "t"), flex_cost(1))
    out = parallel(p1, p2)
    assert out.bend_costs(2, 2) == {1: 0.0}


def test_parallel_flex0_infeasible():
    p1 = edge_profile("a", ("s", "t"), flex_cost(0))
    p2 = edge_profile("b", ("s", "t"), flex_cost(0))
    assert parallel(p1, p2).is_empty()


def test_parallel_flex2():
    p1 = edge_profile("a", ("s", "t"), flex_cost(2))
    p2 = edge_profile("b", ("s", "t"), flex_cost(2))
    out = parallel(p1, p2)
    assert sorted(out.bend_costs(2, 2)) == [1, 2]


def test_parallel_matches_oracle_per_sigma_tau():
    inst = digon(1, 2)
    p1 = edge_profile("a", ("s", "t"), flex_cost(1))
    p2 = edge_profile("b", ("s", "t"), flex_cost(2))
    out = parallel(p1, p2)
    want = oracle_profile(inst, "s", "t")
    got = {st: out.bend_costs(*st) for st in out.entries if out.entries[st]}
    assert {st: set(b) for st, b in got.items() if b} == \
           {st: set(b) for st, b in want.items()}


def synthetic_profile(bends, sigma=1, tau=1):
    p = CostProfile(("s", "t"), CAP)
    for b in bends:
        p.add(sigma, tau, b, 0.0, ("edge", "x", ("s", "t")))
    return p


def test_gap_examples():
    assert gap(synthetic_profile({0, 1, 2}), 1, 1) == 0
    assert gap(synthetic_profile({1, 3, 4, 5}, 2, 2), 2, 2) == 2
    with pytest.raises(ValueError):
        gap(synthetic_profile(set()), 1, 1)


def test_rotation_intervals_single_edge():
    p = edge_profile("e", ("s", "t"), flex_cost(1))
    assert rotation_intervals(p, 1, 1) == [(-1, 1)]


def test_rotation_intervals_gap0_single():
    p = synthetic_profile({0, 1, 2, 3})
    assert len(rotation_intervals(p, 1, 1)) == 1


def test_rotation_intervals_bounded_by_gap():
    p = synthetic_profile({1, 2}, 1, 1)   # gap 1
    assert len(rotation_intervals(p, 1, 1)) <= 2


def test_rigid_k4_matches_oracle():
    inst = k4(1)
    prof = solve_st(inst, "a", "b")
    want = oracle_profile(inst, "a", "b")
    got = {st: set(prof.bend_costs(st[0], st[1]))
           for st in prof.entries if prof.entries[st]}
    assert got == {st: set(b) for st, b in want.items()}


def test_rigid_k4_flex2_matches_oracle():
    inst = k4(2)
    prof = solve_st(inst, "a", "b")
    want = oracle_profile(inst, "a", "b")
    got = {st: set(prof.bend_costs(*st))
           for st in prof.entries if prof.entries[st]}
    assert got == {st: set(b) for st, b in want.items()}


def test_rigid_union_order_independent():
    # composing the same children in any dict order yields the same profile
    inst = k4(2)
    import itertools
    base = None
    for perm in itertools.islice(itertools.permutations(sorted(inst.graph.edges)), 2):
        prof = solve_st(inst, "a", "b")
        snap = {st: prof.bend_costs(*st) for st in prof.entries}
        if base is None:
            base = snap
        assert snap == base


def test_witness_reconstruction_small():
    inst = digon(1, 1)
    prof = solve_st(inst, "s", "t")
    rep = build_rep(prof, 2, 2, -1)
    assert validate_rep(rep, inst) == []
    assert bends_st(rep, "s", "t") == (1, 2, 2)


def test_witness_reconstruction_k4():
    inst = k4(2)
    prof = solve_st(inst, "a", "b")
    for (sigma, tau), bucket in prof.entries.items():
        for beta in bucket:
            rep = build_rep(prof, sigma, tau, -beta)
            assert validate_rep(rep, inst) == []
            assert bends_st(rep, "a", "b") == (beta, sigma, tau)
