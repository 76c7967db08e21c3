"""Instance (de)serialization.

The JSON document carries vertices, edges with either a flexibility or a
monotone cost table, optional poles, an optional embedding (clockwise edge
ids per vertex plus an outer-face witness edge side), and optional
90-degree-restricted vertices.  A minimal edge-list text import is provided
for quick experiments.
"""

from __future__ import annotations

import json

from .model import (EdgeCost, Graph, Instance, RotationSystem, flex_cost,
                    table_cost)


def instance_to_dict(inst: Instance) -> dict:
    edges = []
    for e, (u, v) in sorted(inst.graph.edges.items()):
        rec: dict = {"id": e, "source": u, "target": v}
        c = inst.costs[e]
        if c.is_flex:
            rec["flex"] = c.flex
        else:
            rec["costs"] = list(c.costs)
        edges.append(rec)
    out: dict = {"vertices": sorted(inst.graph.vertices), "edges": edges}
    if inst.poles is not None:
        out["poles"] = {"s": inst.poles[0], "t": inst.poles[1]}
    if inst.embedding is not None:
        emb: dict = {
            "order": {v: list(c) for v, c in sorted(inst.embedding.order.items())}
        }
        if inst.embedding.outer is not None:
            emb["outer_face"] = list(inst.embedding.outer)
        out["embedding"] = emb
    if inst.restrict_90:
        out["restrict_90"] = sorted(inst.restrict_90)
    return out


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise ValueError("instance document must be a JSON object")
    for key in ("vertices", "edges"):
        if key not in doc:
            raise ValueError(f"missing {key!r}")
    vertices = [str(v) for v in doc["vertices"]]
    edges = {}
    costs = {}
    for rec in doc["edges"]:
        eid = str(rec["id"])
        if eid in edges:
            raise ValueError(f"duplicate edge id {eid!r}")
        edges[eid] = (str(rec["source"]), str(rec["target"]))
        if ("flex" in rec) == ("costs" in rec):
            raise ValueError(f"edge {eid!r} needs exactly one of flex/costs")
        if "flex" in rec:
            costs[eid] = flex_cost(int(rec["flex"]))
        else:
            costs[eid] = table_cost(rec["costs"])
    poles = None
    if "poles" in doc:
        poles = (str(doc["poles"]["s"]), str(doc["poles"]["t"]))
    embedding = None
    if "embedding" in doc:
        emb = doc["embedding"]
        order = {str(v): tuple(str(e) for e in cyc)
                 for v, cyc in emb["order"].items()}
        outer = None
        if "outer_face" in emb:
            eid, side = emb["outer_face"]
            outer = (str(eid), int(side))
        embedding = RotationSystem(order, outer)
    restrict = frozenset(str(v) for v in doc.get("restrict_90", ()))
    return Instance(Graph(vertices, edges), costs, poles, embedding, restrict)


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return instance_from_dict(json.loads(text))
    return parse_edge_list(text)


def dump_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2, sort_keys=True) + "\n"


def parse_edge_list(text: str) -> Instance:
    """Plain-text shim: one edge per line, "u v [flex]" (default flex 1)."""
    edges = {}
    costs = {}
    verts = []
    for i, line in enumerate(text.splitlines()):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"bad edge line: {line!r}")
        u, v = parts[0], parts[1]
        fx = int(parts[2]) if len(parts) == 3 else 1
        eid = f"e{i}"
        edges[eid] = (u, v)
        costs[eid] = flex_cost(fx)
        for x in (u, v):
            if x not in verts:
                verts.append(x)
    return Instance(Graph(verts, edges), costs)
