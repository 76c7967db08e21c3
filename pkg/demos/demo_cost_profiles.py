"""Cost profiles: how a subgraph's drawing options compress into a table.

An st-graph is summarized, per pole slot pair (sigma, tau), by the minimum
cost of drawing it with a given number of bends.  The solver composes these
tables bottom-up; this script prints them for a few tiny graphs and shows
they coincide with brute-force enumeration.
"""

from orthoflex import (instance_from_flex, oracle_profile, rotation_intervals,
                       gap, solve_st)


def show(name, inst, s, t):
    prof = solve_st(inst, s, t)
    print(f"{name} (poles {s}, {t}):")
    for (sigma, tau) in sorted(prof.entries):
        costs = prof.bend_costs(sigma, tau)
        if not costs:
            continue
        ivs = rotation_intervals(prof, sigma, tau)
        print(f"  ({sigma},{tau}): bends->cost {dict(sorted(costs.items()))}"
              f"  gap {gap(prof, sigma, tau)}  rotations {ivs}")
    truth = oracle_profile(inst, s, t)
    match = all(
        set(prof.bend_costs(*st_)) == set(bends)
        for st_, bends in truth.items()
    )
    print(f"  matches exhaustive enumeration: {match}")
    print()


def main():
    show("single edge, flexibility 2",
         instance_from_flex(["s", "t"], [("e", "s", "t", 2)]), "s", "t")
    show("two parallel edges, flexibility 1 each",
         instance_from_flex(["s", "t"], [("a", "s", "t", 1),
                                         ("b", "s", "t", 1)]), "s", "t")
    show("triangle, one rigid edge",
         instance_from_flex(list("abc"),
                            [("ab", "a", "b", 0), ("bc", "b", "c", 2),
                             ("ca", "c", "a", 2)]), "a", "b")


if __name__ == "__main__":
    main()
