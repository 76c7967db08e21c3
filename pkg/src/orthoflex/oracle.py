"""Exhaustive ground truth for small instances.

Enumerates every combinatorial embedding (all rotation systems, planarity
filtered, every face tried as outer face) and, per embedding, every integer
rotation assignment within the per-edge bend caps.  Emitted representations
satisfy the four rotation properties by construction of the search; nothing
is pruned that could hide a solution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import Dart, Graph, Instance, RotationSystem
from .ortho import OrthoRep, bends_st, rep_cost

INF = float("inf")

_CORNER_OPTIONS = {
    1: [(-2,)],
    2: [(-1, 1), (0, 0), (1, -1)],
    3: [(0, 1, 1), (1, 0, 1), (1, 1, 0)],
    4: [(1, 1, 1, 1)],
}


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_vertices: int = 8
    max_bend: int | None = None
    max_reps: int | None = None

    def __post_init__(self):
        if self.max_vertices <= 0:
            raise ValueError("max_vertices must be positive")
        if self.max_bend is not None and self.max_bend < 0:
            raise ValueError("max_bend must be non-negative")
        if self.max_reps is not None and self.max_reps <= 0:
            raise ValueError("max_reps must be positive")


def _trace_faces(g: Graph, order: dict[str, tuple[str, ...]]):
    """Faces of a candidate rotation system, or None if not planar."""
    pos = {}
    for v, cyc in order.items():
        for i, e in enumerate(cyc):
            pos[(v, e)] = i
    out = []
    seen = set()
    for e0 in g.edges:
        for dr in (0, 1):
            start = (e0, dr)
            if start in seen:
                continue
            walk = []
            d = start
            while True:
                walk.append(d)
                seen.add(d)
                v = g.dart_head(d)
                cyc = order[v]
                nxt = cyc[(pos[(v, d[0])] + 1) % len(cyc)]
                d = g.dart_from(nxt, v)
                if d == start:
                    break
            out.append(tuple(walk))
    if len(out) != g.m - g.n + 2:
        return None
    return out


def rotation_systems(g: Graph):
    """All rotation systems (first incident edge pinned per vertex), planar
    ones only, as (order, faces) pairs."""
    verts = [v for v in g.vertices if g.degree(v) > 0]
    choices = []
    for v in verts:
        inc = g.incident(v)
        if len(inc) <= 2:
            choices.append([tuple(inc)])
        else:
            choices.append([
                (inc[0],) + p for p in itertools.permutations(inc[1:])
            ])
    for combo in itertools.product(*choices):
        order = {v: cyc for v, cyc in zip(verts, combo)}
        for v in g.vertices:
            if g.degree(v) == 0:
                order[v] = ()
        fl = _trace_faces(g, order)
        if fl is not None:
            yield order, fl


def _solve_rotations(g, inst, face_list, outer_idx, caps, pinned_corners):
    """DFS over corner tuples and edge rotations; yields
    (corner dict, edge-rotation dict) satisfying all face sums."""
    targets = [4] * len(face_list)
    targets[outer_idx] = -4

    in_darts = {v: [] for v in g.vertices}
    for fi, f in enumerate(face_list):
        for d in f:
            in_darts[g.dart_head(d)].append(d)

    # face index -> members; an edge variable x_e enters with sign +1 on the
    # (e, 0) dart and -1 on (e, 1)
    face_of: dict[Dart, int] = {}
    for fi, f in enumerate(face_list):
        for d in f:
            face_of[d] = fi

    vertex_opts = {}
    for v in g.vertices:
        deg = g.degree(v)
        if deg == 0:
            continue
        opts = []
        for tup in _CORNER_OPTIONS[deg]:
            assign = dict(zip(in_darts[v], tup))
            if any(assign[d] != val for d, val in pinned_corners.items()
                   if d in assign):
                continue
            opts.append(assign)
        vertex_opts[v] = opts

    # variable order: walk faces, pulling in each face's vertices then edges
    agenda = []
    seen_v, seen_e = set(), set()
    face_edge_count = [0] * len(face_list)
    for fi, f in enumerate(face_list):
        for d in f:
            v = g.dart_head(d)
            if v not in seen_v:
                seen_v.add(v)
                agenda.append(("v", v))
        for d in f:
            if d[0] not in seen_e:
                seen_e.add(d[0])
                agenda.append(("e", d[0]))

    edge_faces = {e: (face_of[(e, 0)], face_of[(e, 1)]) for e in g.edges}

    residual = list(targets)
    # residual after subtracting assigned members; track per-face pending
    # unknown counts so the last unknown edge can be forced
    pending_edges = [0] * len(face_list)
    pending_corners = [0] * len(face_list)
    pending_corner_lo = [0] * len(face_list)
    pending_corner_hi = [0] * len(face_list)
    pending_edge_span = [0] * len(face_list)
    for e in g.edges:
        f0, f1 = edge_faces[e]
        pending_edges[f0] += 1
        pending_edges[f1] += 1
        pending_edge_span[f0] += caps[e]
        pending_edge_span[f1] += caps[e]
    for v in g.vertices:
        for d in in_darts[v]:
            fi = face_of[d]
            pending_corners[fi] += 1
            pending_corner_lo[fi] += -2
            pending_corner_hi[fi] += 1

    corners: dict[Dart, int] = {}
    rotations: dict[str, int] = {}

    def feasible(fi):
        lo = pending_corner_lo[fi] - pending_edge_span[fi]
        hi = pending_corner_hi[fi] + pending_edge_span[fi]
        return lo <= residual[fi] <= hi

    def assign_vertex(v, assign):
        for d, val in assign.items():
            fi = face_of[d]
            residual[fi] -= val
            pending_corners[fi] -= 1
            pending_corner_lo[fi] += 2
            pending_corner_hi[fi] -= 1
            corners[d] = val

    def undo_vertex(v, assign):
        for d, val in assign.items():
            fi = face_of[d]
            residual[fi] += val
            pending_corners[fi] += 1
            pending_corner_lo[fi] -= 2
            pending_corner_hi[fi] += 1
            del corners[d]

    def rec(i):
        if i == len(agenda):
            if all(r == 0 for r in residual):
                yield dict(corners), dict(rotations)
            return
        kind, obj = agenda[i]
        if kind == "v":
            touched = {face_of[d] for d in in_darts[obj]}
            for assign in vertex_opts[obj]:
                assign_vertex(obj, assign)
                if all(feasible(fi) for fi in touched):
                    yield from rec(i + 1)
                undo_vertex(obj, assign)
            return
        e = obj
        f0, f1 = edge_faces[e]
        cap = caps[e]
        pending_edges[f0] -= 1
        pending_edges[f1] -= 1
        pending_edge_span[f0] -= cap
        pending_edge_span[f1] -= cap
        if f0 != f1 and pending_edges[f0] == 0 and pending_corners[f0] == 0:
            # x contributes +x to f0 and is its last unknown: forced
            values = [residual[f0]] if abs(residual[f0]) <= cap else []
        elif f0 != f1 and pending_edges[f1] == 0 and pending_corners[f1] == 0:
            values = [-residual[f1]] if abs(residual[f1]) <= cap else []
        else:
            values = range(-cap, cap + 1)
        for x in values:
            residual[f0] -= x
            residual[f1] += x
            rotations[e] = x
            if feasible(f0) and feasible(f1):
                yield from rec(i + 1)
            residual[f0] += x
            residual[f1] -= x
        rotations.pop(e, None)
        pending_edges[f0] += 1
        pending_edges[f1] += 1
        pending_edge_span[f0] += cap
        pending_edge_span[f1] += cap

    yield from rec(0)


def _same_rotation(g: Graph, a: dict, b: dict) -> bool:
    """Cyclic-order equality of two rotation systems."""
    for v in g.vertices:
        ca, cb = tuple(a.get(v, ())), tuple(b.get(v, ()))
        if len(ca) != len(cb):
            return False
        if not ca:
            continue
        if set(ca) != set(cb):
            return False
        i = cb.index(ca[0])
        if tuple(cb[(i + k) % len(cb)] for k in range(len(cb))) != ca:
            return False
    return True


def enumerate_reps(inst: Instance, budget: EnumerationBudget | None = None,
                   poles: tuple[str, str] | None = None,
                   sigma_tau: tuple[int, int] | None = None):
    """Every valid representation of the instance, embeddings included.

    With poles, only representations with both poles on the outer face are
    emitted; with sigma_tau, the poles' outer corners are pinned to the
    requested slot counts.
    """
    budget = budget or EnumerationBudget()
    g = inst.graph
    if g.n > budget.max_vertices:
        raise BudgetExceeded(
            f"{g.n} vertices exceeds the budget of {budget.max_vertices}"
        )
    if not g.is_connected():
        raise ValueError("oracle enumeration requires a connected graph")
    caps = {e: inst.cap(e) for e in g.edges}
    if budget.max_bend is not None:
        caps = {e: min(c, budget.max_bend) for e, c in caps.items()}
    emitted = 0
    fixed = inst.embedding
    for order, face_list in rotation_systems(g):
        if fixed is not None and not _same_rotation(g, fixed.order, order):
            continue
        for outer_idx in range(len(face_list)):
            outer_walk = face_list[outer_idx]
            if fixed is not None and fixed.outer is not None:
                if fixed.outer not in outer_walk:
                    continue
            pinned = {}
            if poles is not None:
                s, t = poles
                s_hits = [d for d in outer_walk if g.dart_head(d) == s]
                t_hits = [d for d in outer_walk if g.dart_head(d) == t]
                if len(s_hits) != 1 or len(t_hits) != 1:
                    continue
                if sigma_tau is not None:
                    pinned[s_hits[0]] = sigma_tau[0] - 3
                    pinned[t_hits[0]] = sigma_tau[1] - 3
            rs = RotationSystem(order, outer_walk[0])
            for corner_map, rot_map in _solve_rotations(
                g, inst, face_list, outer_idx, caps, pinned
            ):
                rot_edge = {}
                for e in g.edges:
                    rot_edge[(e, 0)] = rot_map[e]
                    rot_edge[(e, 1)] = -rot_map[e]
                rep = OrthoRep(g, rs, rot_edge, corner_map)
                emitted += 1
                if budget.max_reps is not None and emitted > budget.max_reps:
                    raise BudgetExceeded(
                        f"more than {budget.max_reps} representations"
                    )
                yield rep


def oracle_feasible(inst: Instance, budget: EnumerationBudget | None = None) -> bool:
    """Does any valid drawing respect every edge's bend cap?"""
    for _ in enumerate_reps(inst, budget):
        return True
    return False


def oracle_optimal(inst: Instance, budget: EnumerationBudget | None = None) -> float:
    """Exact minimum total bend cost (inf when infeasible)."""
    best = INF
    for rep in enumerate_reps(inst, budget):
        best = min(best, rep_cost(rep, inst))
    return best


def oracle_profile(inst: Instance, s: str, t: str,
                   budget: EnumerationBudget | None = None):
    """Ground-truth cost profile of an st-graph: {(sigma, tau): {bends: min
    cost}} over all representations with s, t on the outer face."""
    table: dict[tuple[int, int], dict[int, float]] = {}
    for rep in enumerate_reps(inst, budget, poles=(s, t)):
        beta, sigma, tau = bends_st(rep, s, t)
        cost = rep_cost(rep, inst)
        entry = table.setdefault((sigma, tau), {})
        if cost < entry.get(beta, INF):
            entry[beta] = cost
    return table
