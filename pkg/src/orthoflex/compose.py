"""Cost profiles of st-graphs and their series, parallel, and rigid
composition.

A profile records, per admissible pole slot pair (sigma, tau), the minimum
cost of a representation with a given bend count.  Bends relate to the
boundary rotation r = rot over the s->t outer path by
beta(r) = max(-r, r - (2 - sigma - tau)); a representation with beta bends
always has r in {-beta, 2 - sigma - tau + beta} (mirroring swaps the two).

Series and parallel composition enumerate the constant set of gluing
parameters directly (pole slot splits, corner rotations at the shared
vertices, per-child mirror orientation).  Rigid composition embeds the
triconnected skeleton, models the children as wide edges of a flow network,
pins each child's rotation to one of its achievable intervals (zero-cost
profiles) or to a maximal convex piece of its rotation-cost function (cost
mode), and reads the composite's achievable rotations off the network.

Every entry keeps a recipe, so a witness representation can be rebuilt
top-down by substitution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import Dart, EdgeCost, Graph, RotationSystem, faces, planar_embedding
from . import flownet
from .ortho import (OrthoRep, beta_low, compose_rep_parallel,
                    compose_rep_series, single_edge_rep, substitute)

INF = float("inf")


def bends_for(sigma: int, tau: int, r: int) -> int:
    return max(-r, r - (2 - sigma - tau))


@dataclass
class Entry:
    cost: float
    recipe: tuple


class CostProfile:
    def __init__(self, poles: tuple[str, str], cap: int):
        self.poles = poles
        self.cap = cap
        self.entries: dict[tuple[int, int], dict[int, Entry]] = {}

    def add(self, sigma, tau, beta, cost, recipe):
        if beta > self.cap or beta < beta_low(sigma, tau) or cost == INF:
            return
        bucket = self.entries.setdefault((sigma, tau), {})
        cur = bucket.get(beta)
        if cur is None or cost < cur.cost:
            bucket[beta] = Entry(cost, recipe)

    def bend_costs(self, sigma, tau) -> dict[int, float]:
        return {b: e.cost for b, e in self.entries.get((sigma, tau), {}).items()}

    def bend_set(self, sigma, tau) -> list[int]:
        return sorted(self.entries.get((sigma, tau), {}))

    def is_empty(self) -> bool:
        return not any(self.entries.values())

    def min_cost(self) -> float:
        best = INF
        for bucket in self.entries.values():
            for e in bucket.values():
                best = min(best, e.cost)
        return best

    def best_entry(self, sigma_filter=None):
        """(cost, sigma, tau, beta) minimizing cost, tie-broken by smallest
        (beta, sigma + tau)."""
        best = None
        for (sigma, tau), bucket in sorted(self.entries.items()):
            if sigma_filter is not None and sigma not in sigma_filter:
                continue
            for beta, e in sorted(bucket.items()):
                key = (e.cost, beta, sigma + tau)
                if best is None or key < best[0]:
                    best = (key, sigma, tau, beta)
        if best is None:
            return None
        return best[0][0], best[1], best[2], best[3]

    def rotation_costs(self, sigma, tau) -> dict[int, float]:
        """Achievable s->t rotations and their minimum costs."""
        c = 2 - sigma - tau
        out: dict[int, float] = {}
        for beta, e in self.entries.get((sigma, tau), {}).items():
            for r in (-beta, c + beta):
                if e.cost < out.get(r, INF):
                    out[r] = e.cost
        return out

    def flipped(self) -> "CostProfile":
        """The same graph with its poles swapped."""
        out = CostProfile((self.poles[1], self.poles[0]), self.cap)
        for (sigma, tau), bucket in self.entries.items():
            for beta, e in bucket.items():
                out.add(tau, sigma, beta, e.cost, ("flip", self))
        return out


def gap(profile: CostProfile, sigma: int, tau: int) -> int:
    """Size of the missing initial stretch of bend counts below the
    contiguous achievable range."""
    bends = profile.bend_set(sigma, tau)
    if not bends:
        raise ValueError(f"profile empty at ({sigma}, {tau})")
    present = set(bends)
    beta = bends[-1]
    while beta - 1 in present:
        beta -= 1
    return beta - beta_low(sigma, tau)


def rotation_intervals(profile: CostProfile, sigma: int, tau: int):
    """Achievable s->t rotation values as maximal integer intervals; the
    interval count never exceeds gap + 1."""
    rots = sorted(profile.rotation_costs(sigma, tau))
    if not rots:
        raise ValueError(f"profile empty at ({sigma}, {tau})")
    intervals = []
    lo = prev = rots[0]
    for r in rots[1:]:
        if r == prev + 1:
            prev = r
            continue
        intervals.append((lo, prev))
        lo = prev = r
    intervals.append((lo, prev))
    g = gap(profile, sigma, tau)
    if len(intervals) > g + 1:
        raise AssertionError(
            f"{len(intervals)} rotation intervals with gap {g} at ({sigma},{tau})"
        )
    return intervals


def check_gap_bounds(profile: CostProfile, k: int):
    """Zero-cost profiles of a subgraph with k critical edges have
    gap <= k when sigma + tau <= 5 and gap <= k + 1 at (3, 3); wider pole
    occupancies carry no bound."""
    for (sigma, tau), bucket in profile.entries.items():
        if not bucket:
            continue
        if (sigma, tau) == (3, 3):
            limit = k + 1
        elif sigma + tau <= 5:
            limit = k
        else:
            continue
        g = gap(profile, sigma, tau)
        if g > limit:
            raise AssertionError(
                f"gap {g} exceeds bound {limit} at ({sigma},{tau}), k={k}"
            )


def profile_of_edge(eid: str, ends: tuple[str, str], cost: EdgeCost,
                    cap: int) -> CostProfile:
    p = CostProfile(ends, cap)
    for beta in range(0, min(cost.cap(), cap) + 1):
        p.add(1, 1, beta, cost.cost(beta), ("edge", eid, ends))
    return p


# -- series -----------------------------------------------------------------


def series(p1: CostProfile, p2: CostProfile,
           restrict: bool = False) -> CostProfile:
    """Profile of the composition identifying p1's second pole with p2's
    first; restrict forces a 90-degree angle at the shared vertex."""
    if p1.poles[1] != p2.poles[0]:
        raise ValueError("series composition needs a shared middle pole")
    v = p1.poles[1]
    cap = min(p1.cap, p2.cap)
    out = CostProfile((p1.poles[0], p2.poles[1]), cap)
    for (s1, t1), bucket1 in p1.entries.items():
        for (s2, t2), bucket2 in p2.entries.items():
            if t1 + s2 > 4:
                continue
            c1 = 2 - s1 - t1
            c2 = 2 - s2 - t2
            for b1, e1 in bucket1.items():
                for r1 in {-b1, c1 + b1}:
                    for b2, e2 in bucket2.items():
                        for r2 in {-b2, c2 + b2}:
                            for a in (-1, 0, 1):
                                b = t1 + s2 - 2 - a
                                if not -1 <= b <= 1:
                                    continue
                                if restrict and 1 not in (a, b):
                                    continue
                                rot_st = r1 + a + r2
                                rot_ts = (c1 - r1) + b + (c2 - r2)
                                beta = max(-rot_st, -rot_ts)
                                out.add(
                                    s1, t2, beta, e1.cost + e2.cost,
                                    ("series", p1, (s1, t1, r1),
                                     p2, (s2, t2, r2), v, a, b, rot_st),
                                )
    return out


# -- parallel ---------------------------------------------------------------


def parallel(p1: CostProfile, p2: CostProfile) -> CostProfile:
    """Profile of the composition identifying both pole pairs."""
    if set(p1.poles) != set(p2.poles):
        raise ValueError("parallel composition needs identical poles")
    if p1.poles != p2.poles:
        p2 = p2.flipped()
    s, t = p1.poles
    cap = min(p1.cap, p2.cap)
    out = CostProfile((s, t), cap)
    for left, right in ((p1, p2), (p2, p1)):
        for (s1, t1), bucket1 in left.entries.items():
            for (s2, t2), bucket2 in right.entries.items():
                c1 = 2 - s1 - t1
                c2 = 2 - s2 - t2
                for sigma in range(max(2, s1 + s2), min(4, s1 + s2 + 2) + 1):
                    m_s = s1 + s2 + 1 - sigma
                    for tau in range(max(2, t1 + t2), min(4, t1 + t2 + 2) + 1):
                        m_t = t1 + t2 + 1 - tau
                        c = 2 - sigma - tau
                        for b1, e1 in bucket1.items():
                            for r1 in {-b1, c1 + b1}:
                                r2_ts = c - r1   # right child's t->s rotation
                                for b2 in {-r2_ts, r2_ts - c2}:
                                    e2 = bucket2.get(b2)
                                    if e2 is None:
                                        continue
                                    beta = max(-r1, -r2_ts)
                                    out.add(
                                        sigma, tau, beta, e1.cost + e2.cost,
                                        ("parallel", left, (s1, t1, r1),
                                         right, (s2, t2, c2 - r2_ts),
                                         m_s, m_t, sigma, tau, r1),
                                    )
    return out


# -- rigid -------------------------------------------------------------------


@dataclass
class RigidConfig:
    skeleton: Graph
    rot: RotationSystem
    widths: dict[str, tuple[int, int]]
    bounds: dict[Dart, tuple[int, int]]
    poles: tuple[str, str]
    sigma_tau: tuple[int, int]
    split_keys: frozenset
    children: dict[str, tuple[CostProfile, int, int]]
    with_costs: bool = False

    def network(self, bridge_pin: int | None = None):
        edge_costs = None
        if self.with_costs:
            edge_costs = {}
            for e, (child, su, sv) in self.children.items():
                table = child.rotation_costs(su, sv)
                edge_costs[e] = (lambda tb: (lambda x: tb.get(x, INF)))(table)
        net = flownet.build_network(
            self.skeleton, self.rot,
            widths=self.widths, edge_bounds=self.bounds,
            poles=self.poles, sigma_tau=self.sigma_tau,
            split_keys=self.split_keys, edge_costs=edge_costs,
        )
        if bridge_pin is not None:
            for a in net.arcs:
                if a.key == ("bridge",):
                    a.lo = a.hi = bridge_pin
        return net


def _skeleton_embeddings(h: Graph, s: str, t: str):
    """Embeddings of the open skeleton with both poles on one face.

    The open skeleton alone may have many embeddings, but together with its
    closure edge it is triconnected, so the closed embedding is unique up to
    reflection; the open rotation system is obtained by dropping the closure
    edge, and every face holding both poles once is an admissible outer
    face."""
    closure = "skelclosure"
    while closure in h.edges:
        closure += "x"
    k = Graph(h.vertices, {**h.edges, closure: (s, t)})
    witness = (next(iter(h.edges)), 0)
    base = planar_embedding(k, witness)
    for rot_k in (base, RotationSystem(base.mirrored().order, witness)):
        order = {
            v: tuple(e for e in cyc if e != closure)
            for v, cyc in rot_k.order.items()
        }
        rot = RotationSystem(order, witness)
        face_list = faces(h, rot)
        for f in face_list:
            heads = [h.dart_head(d) for d in f]
            if heads.count(s) == 1 and heads.count(t) == 1:
                yield RotationSystem(rot.order, f[0]), f


def _outer_path(h: Graph, face: tuple[Dart, ...], s: str, t: str):
    (i,) = [k for k, d in enumerate(face) if h.dart_tail(d) == s]
    path = []
    for k in range(len(face)):
        d = face[(i + k) % len(face)]
        path.append(d)
        if h.dart_head(d) == t:
            return path
    raise ValueError("pole not on face")


def _width_options(profile: CostProfile, side: int, at_pole: bool):
    present = sorted({st[side] for st in profile.entries})
    if at_pole:
        return present
    # skeleton-internal vertices leave no slack: a child occupies exactly
    # its pole degree there, which is 1 or 2
    return [w for w in present if w <= 2][:1]


def _convex_pieces(table: dict[int, float]):
    """Maximal runs of a rotation-cost table that are contiguous and convex."""
    rots = sorted(table)
    pieces = []
    i = 0
    while i < len(rots):
        j = i
        while j + 1 < len(rots) and rots[j + 1] == rots[j] + 1:
            lo, hi = rots[i], rots[j + 1]
            vals = [table[r] for r in range(lo, hi + 1)]
            deltas = [b - a for a, b in zip(vals, vals[1:])]
            if all(x <= y + 1e-12 for x, y in zip(deltas, deltas[1:])):
                j += 1
            else:
                break
        pieces.append((rots[i], rots[j]))
        i = j + 1
    return pieces


def rigid(skeleton: Graph, poles: tuple[str, str],
          children: dict[str, CostProfile], cap: int,
          flex_mode: bool = True) -> CostProfile:
    """Profile of a rigid composition.

    skeleton is the open skeleton (parent edge removed); children maps each
    skeleton edge id to the profile of the subgraph replacing it, oriented
    to the skeleton's stored edge tuple.
    """
    s, t = poles
    out = CostProfile(poles, cap)
    for rot, outer_face in _skeleton_embeddings(skeleton, s, t):
        path_st = _outer_path(skeleton, outer_face, s, t)
        split_keys = frozenset(
            [("edge", d) for d in path_st]
            + [("corner", d) for d in path_st[:-1]]
        )
        width_space = []
        for e in sorted(children):
            u, v = skeleton.edges[e]
            opts = [
                (e, su, sv)
                for su in _width_options(children[e], 0, u in poles)
                for sv in _width_options(children[e], 1, v in poles)
                if (su, sv) in children[e].entries
            ]
            width_space.append(opts)
        for combo in itertools.product(*width_space):
            widths = {e: (su, sv) for e, su, sv in combo}
            occ = {}
            for p in poles:
                occ[p] = sum(
                    widths[e][0] if skeleton.edges[e][0] == p else widths[e][1]
                    for e in skeleton.incident(p)
                )
            if occ[s] > 4 or occ[t] > 4:
                continue
            if flex_mode:
                pin_space = [
                    [(e, iv) for iv in rotation_intervals(children[e], su, sv)]
                    for e, su, sv in combo
                ]
            else:
                pin_space = [
                    [(e, piece) for piece in
                     _convex_pieces(children[e].rotation_costs(su, sv))]
                    for e, su, sv in combo
                ]
            for sigma in range(max(1, occ[s]), 5):
                for tau in range(max(1, occ[t]), 5):
                    for pins in itertools.product(*pin_space):
                        _rigid_round(out, skeleton, rot, widths, children,
                                     pins, poles, (sigma, tau), split_keys,
                                     cap, flex_mode)
    return out


def _rigid_round(out, skeleton, rot, widths, children, pins, poles,
                 sigma_tau, split_keys, cap, flex_mode):
    bounds: dict[Dart, tuple[int, int]] = {}
    for e, (lo, hi) in pins:
        su, sv = widths[e]
        c = 2 - su - sv
        bounds[(e, 0)] = (lo, hi)
        bounds[(e, 1)] = (c - hi, c - lo)
    config = RigidConfig(skeleton, rot, widths, bounds, poles, sigma_tau,
                         split_keys,
                         {e: (children[e], *widths[e]) for e in children},
                         with_costs=not flex_mode)
    sigma, tau = sigma_tau
    c = 2 - sigma - tau
    if flex_mode:
        rng = config.network().arc_range(("bridge",))
        if rng is None:
            return
        for r in range(rng[0], rng[1] + 1):
            out.add(sigma, tau, bends_for(sigma, tau, r), 0.0,
                    ("rigid", config, r))
    else:
        for r in range(-cap, cap + c + 1):
            if bends_for(sigma, tau, r) > cap:
                continue
            flow = config.network(bridge_pin=r).solve()
            if flow is None:
                continue
            total = 0.0
            for e, (child, su, sv) in config.children.items():
                total += child.rotation_costs(su, sv).get(
                    flow[("edge", (e, 0))], INF)
            if total < INF:
                out.add(sigma, tau, bends_for(sigma, tau, r), total,
                        ("rigid", config, r))


# -- witness reconstruction ----------------------------------------------------


def build_rep(profile: CostProfile, sigma: int, tau: int, r: int) -> OrthoRep:
    """Reconstruct a witness representation with the requested pole slots
    and s->t boundary rotation."""
    beta = bends_for(sigma, tau, r)
    entry = profile.entries.get((sigma, tau), {}).get(beta)
    if entry is None:
        raise KeyError(f"no entry at ({sigma},{tau}) with {beta} bends")
    recipe = entry.recipe
    if recipe[0] == "edge":
        _, eid, ends = recipe
        return single_edge_rep(eid, ends[0], ends[1], r)
    if recipe[0] == "flip":
        return build_rep(recipe[1], tau, sigma, (2 - sigma - tau) - r)
    rep, rot_st = _build_entry(recipe)
    if rot_st != r:
        rep = rep.mirrored()
    s, t = profile.poles
    got = rep.rot_path(rep.outer_path(s, t))
    if got != r:
        raise AssertionError(f"witness rotation {got} != requested {r}")
    return rep


def _build_entry(recipe: tuple) -> tuple[OrthoRep, int]:
    kind = recipe[0]
    if kind == "series":
        _, p1, (s1, t1, r1), p2, (s2, t2, r2), v, a, b, rot_st = recipe
        rep1 = build_rep(p1, s1, t1, r1)
        rep2 = build_rep(p2, s2, t2, r2)
        rep = compose_rep_series(rep1, p1.poles[0], v, rep2, p2.poles[1], a, b)
        return rep, rot_st
    if kind == "parallel":
        _, left, (s1, t1, r1), right, (s2, t2, r2), m_s, m_t, sg, tu, rot_st = recipe
        rep1 = build_rep(left, s1, t1, r1)
        rep2 = build_rep(right, s2, t2, r2)
        rep = compose_rep_parallel(rep1, rep2, left.poles[0], left.poles[1],
                                   m_s, m_t, sg, tu)
        return rep, rot_st
    if kind == "rigid":
        _, config, r0 = recipe
        flow = config.network(bridge_pin=r0).solve()
        if flow is None:
            raise AssertionError("rigid witness round became infeasible")
        rep = flownet.flow_to_rep(config.skeleton, config.rot, flow,
                                  config.widths)
        for e, (child, su, sv) in config.children.items():
            x = flow[("edge", (e, 0))]
            child_rep = build_rep(child, su, sv, x)
            rep = substitute(rep, e, child_rep,
                             child.poles[0], child.poles[1])
        return rep, r0
    raise ValueError(f"unknown recipe {kind!r}")
