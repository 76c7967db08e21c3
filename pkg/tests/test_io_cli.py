import json

import pytest

from orthoflex.cli import main
from orthoflex.io import (dump_instance, instance_from_dict,
                          instance_to_dict, load_instance, parse_edge_list)
from orthoflex.model import Instance, planar_embedding

from conftest import digon, octahedron, square, triangle_cost


def test_roundtrip_identity():
    inst = triangle_cost()
    doc = instance_to_dict(inst)
    again = instance_from_dict(doc)
    assert instance_to_dict(again) == doc


def test_roundtrip_with_embedding_and_poles():
    base = square(1)
    rot = planar_embedding(base.graph)
    inst = Instance(base.graph, base.costs, poles=("a", "c"), embedding=rot,
                    restrict_90=frozenset())
    doc = instance_to_dict(inst)
    again = instance_from_dict(doc)
    assert instance_to_dict(again) == doc
    assert again.poles == ("a", "c")
    assert again.embedding.outer == rot.outer


def test_dump_deterministic():
    inst = octahedron(2)
    assert dump_instance(inst) == dump_instance(inst)


def test_edge_list_shim():
    inst = parse_edge_list("a b 1\nb c\n# comment\nc a 0\n")
    assert inst.graph.m == 3
    assert inst.flex("e1") == 1


def test_schema_errors():
    with pytest.raises(ValueError):
        instance_from_dict({"vertices": []})
    with pytest.raises(ValueError):
        instance_from_dict({
            "vertices": ["a", "b"],
            "edges": [{"id": "e", "source": "a", "target": "b"}],
        })
    with pytest.raises(ValueError):
        instance_from_dict({
            "vertices": ["a", "b"],
            "edges": [
                {"id": "e", "source": "a", "target": "b", "flex": 1},
                {"id": "e", "source": "a", "target": "b", "flex": 1},
            ],
        })


def write(tmp_path, inst, name="inst.json"):
    p = tmp_path / name
    p.write_text(dump_instance(inst))
    return str(p)


def test_cli_check_ok(tmp_path, capsys):
    path = write(tmp_path, square(1))
    assert main(["check", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["valid"]


def test_cli_check_bad(tmp_path, capsys):
    doc = instance_to_dict(square(1))
    doc["edges"][0]["source"] = "nope"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert main(["check", str(p)]) == 2


def test_cli_solve_feasible_writes_svg(tmp_path, capsys):
    path = write(tmp_path, square(1))
    svg = tmp_path / "out.svg"
    code = main(["solve", path, "--mode", "flexdraw", "--svg", str(svg)])
    assert code == 0
    assert svg.read_text().startswith("<svg")
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "feasible" and doc["mode"] == "flexdraw"


def test_cli_solve_octahedron_flex2_exit1(tmp_path, capsys):
    path = write(tmp_path, octahedron(2))
    assert main(["solve", path, "--mode", "flexdraw"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "infeasible"


def test_cli_solve_mode_error(tmp_path, capsys):
    path = write(tmp_path, square(1))  # no embedding present
    assert main(["solve", path, "--mode", "fixed-embedding"]) == 2


def test_cli_sp_optimal(tmp_path, capsys):
    path = write(tmp_path, triangle_cost())
    assert main(["solve", path, "--mode", "sp-optimal"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["cost"] == 1


def test_cli_gen_roundtrips(tmp_path, capsys):
    assert main(["gen", "b12"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    inst = instance_from_dict(doc)
    assert instance_to_dict(inst) == doc


def test_cli_gen_solve_pipe(tmp_path, capsys):
    assert main(["gen", "b12"]) == 0
    gen_out = capsys.readouterr().out
    p = tmp_path / "b12.json"
    p.write_text(gen_out)
    assert main(["solve", str(p), "--mode", "flexdraw"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "feasible"


def test_cli_oracle(tmp_path, capsys):
    path = write(tmp_path, square(0))
    assert main(["oracle", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["representations"] == 2 and doc["feasible"]


def test_cli_oracle_budget(tmp_path, capsys):
    path = write(tmp_path, octahedron(2))
    assert main(["oracle", path, "--budget", "4"]) == 2


def test_cli_determinism(tmp_path, capsys):
    path = write(tmp_path, square(1))
    main(["solve", path, "--mode", "flexdraw", "--seed", "7"])
    first = capsys.readouterr().out
    main(["solve", path, "--mode", "flexdraw", "--seed", "7"])
    second = capsys.readouterr().out
    assert first == second


def test_cli_missing_file():
    assert main(["check", "/nonexistent/file.json"]) == 2
