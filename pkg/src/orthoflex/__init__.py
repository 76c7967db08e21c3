"""Bend-constrained planar orthogonal drawing.

Decides whether a 4-planar multigraph has an orthogonal drawing keeping
every edge within its flexibility, and minimizes summed per-edge bend costs,
over all planar embeddings.  Blocks are decomposed by split pairs and the
pieces' cost profiles are composed (series, parallel, or through flow
networks with wide edges for rigid skeletons); the feasibility solver is
exponential only in the number of critical inflexible edges.
"""

from .model import (EdgeCost, Graph, Instance, RotationSystem, StGraph,
                    classify_edge, count_critical, faces, flex_cost,
                    instance_from_flex, merge_degree2, planar_embedding,
                    table_cost, validate_instance)
from .ortho import (OrthoRep, bend_along, bends_st, beta_low,
                    find_valid_cycle, rep_cost, single_edge_rep, substitute,
                    valid_dual_edges, validate_rep)
from .oracle import (BudgetExceeded, EnumerationBudget, enumerate_reps,
                     oracle_feasible, oracle_optimal, oracle_profile)
from .flownet import (FlowNetwork, build_network, flow_to_rep,
                      network_for_instance, rep_to_flow, rotation_range)
from .decomposition import (BCTree, SPQRTree, build_bc, build_spqr,
                            pertinent, reroot)
from .compose import (CostProfile, build_rep, gap, parallel, profile_of_edge,
                      rigid, rotation_intervals, series)
from .solve import (Solution, solve_fixed_embedding, solve_flexdraw_fpt,
                    solve_optimal, solve_sp_optimal, solve_st)
from .gadgets import (GadgetInstance, amplify, bend_gadget_b12, expand_deg3,
                      expand_deg4, gadget_bend_count, reduce_flex,
                      subgraph_bends, w3_prime, wheel_w4)
from .drawing import GridDrawing, check_drawing, realize, to_svg
from .io import (dump_instance, instance_from_dict, instance_to_dict,
                 load_instance, parse_edge_list)

__version__ = "0.1.0"
