"""The hardness toolbox: wheels, forced-bend gadgets, and the instance
transformations built on them.

A drawing of the forced-bend gadget must bend exactly once or twice; the
triangle of gadgets forces one double bend among three; vertex expansions
and flexibility reduction rewrite instances while preserving drawability.
"""

from orthoflex import (bend_gadget_b12, gadget_bend_count, oracle_profile,
                       reduce_flex, instance_from_flex, solve_flexdraw_fpt,
                       solve_st, w3_prime, wheel_w4)


def main():
    b12 = bend_gadget_b12()
    prof = oracle_profile(b12.instance, "s", "t")
    print("forced-bend gadget, achievable bend counts (exhaustive):",
          sorted(prof[(1, 1)]))
    solved = solve_st(b12.instance, "s", "t")
    print("  solver agrees:", sorted(solved.bend_costs(1, 1)))

    w3p = w3_prime()
    sol = solve_flexdraw_fpt(w3p.instance)
    bends = sorted(
        gadget_bend_count(w3p.instance, sol.witness, f"g{i}{j}",
                          f"w{i}", f"w{j}")
        for i, j in ((1, 2), (2, 3), (3, 1))
    )
    print("triangle of gadgets, witness bend distribution:", bends)

    chain = instance_from_flex(
        list("abc"), [("ab", "a", "b", 4), ("bc", "b", "c", 1),
                      ("ca", "c", "a", 1)])
    reduced = reduce_flex(chain)
    print(f"flexibility reduction: {chain.graph.n} vertices -> "
          f"{reduced.graph.n}, flexibilities now "
          f"{sorted({reduced.flex(e) for e in reduced.graph.edges})}")
    print("  still drawable:", solve_flexdraw_fpt(reduced).feasible)


if __name__ == "__main__":
    main()
