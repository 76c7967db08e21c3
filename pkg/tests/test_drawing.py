import itertools

import pytest

from orthoflex.drawing import (check_drawing, drawing_rotations, realize,
                               to_svg)
from orthoflex.model import instance_from_flex
from orthoflex.oracle import enumerate_reps
from orthoflex.ortho import single_edge_rep
from orthoflex.solve import solve_flexdraw_fpt

from conftest import digon, k4, square


def test_single_edge_straight():
    d = realize(single_edge_rep("e", "s", "t", 0))
    assert d.polylines["e"] == [d.coords["s"], d.coords["t"]]


def test_single_edge_one_bend_is_l_shaped():
    d = realize(single_edge_rep("e", "s", "t", 1))
    assert len(d.polylines["e"]) == 3


def test_square_unit():
    inst = square(0)
    rep = next(iter(enumerate_reps(inst)))
    d = realize(rep)
    xs = sorted({x for x, _ in d.coords.values()})
    ys = sorted({y for _, y in d.coords.values()})
    assert len(xs) == 2 and len(ys) == 2
    assert check_drawing(d, rep) == []


def test_rotation_roundtrip_many():
    for inst in (square(1), digon(2, 2), k4(2)):
        for rep in itertools.islice(enumerate_reps(inst), 60):
            d = realize(rep)
            assert drawing_rotations(d, rep) == {
                e: rep.rot_edge[(e, 0)] for e in rep.graph.edges
            }
            assert check_drawing(d, rep) == []


def test_tree_with_tips():
    inst = instance_from_flex(
        list("abcde"),
        [("ab", "a", "b", 1), ("bc", "b", "c", 1), ("bd", "b", "d", 1),
         ("de", "d", "e", 0)],
    )
    for rep in itertools.islice(enumerate_reps(inst), 40):
        d = realize(rep)
        assert check_drawing(d, rep) == []


def test_wide_edges_rejected():
    rep = single_edge_rep("e", "s", "t", -1)
    rep.widths["e"] = (2, 2)
    rep.rot_edge[("e", 1)] = -1
    rep.rot_corner[("e", 0)] = -1
    rep.rot_corner[("e", 1)] = -1
    with pytest.raises(ValueError):
        realize(rep)


def test_invalid_rep_rejected():
    rep = single_edge_rep("e", "s", "t", 1)
    rep.rot_edge[("e", 1)] = 1
    with pytest.raises(ValueError):
        realize(rep)


def test_witness_drawing_via_solver():
    sol = solve_flexdraw_fpt(k4(2))
    d = realize(sol.witness)
    assert check_drawing(d, sol.witness) == []


def test_svg_output():
    rep = next(iter(enumerate_reps(square(0))))
    svg = to_svg(realize(rep))
    assert svg.startswith("<svg") and "<path" in svg and "circle" in svg
