"""Feasibility walkthrough: which bend budgets make a graph drawable?

The octahedron is the classical boundary case: with two bends allowed per
edge it cannot be drawn orthogonally, with three it can.  This script runs
the solver on both variants, cross-checks the negative case against the
exhaustive oracle, and prints the witness bend counts for the positive one.
"""

from orthoflex import (instance_from_flex, oracle_feasible,
                       solve_flexdraw_fpt)


def octahedron(flex):
    V = list("uvwxyz")
    E = [("e%d" % i, a, b) for i, (a, b) in enumerate([
        ("u", "v"), ("u", "w"), ("u", "x"), ("u", "y"),
        ("z", "v"), ("z", "w"), ("z", "x"), ("z", "y"),
        ("v", "w"), ("w", "x"), ("x", "y"), ("y", "v")])]
    return instance_from_flex(V, [(e, a, b, flex) for e, a, b in E])


def main():
    for flex in (2, 3):
        inst = octahedron(flex)
        sol = solve_flexdraw_fpt(inst)
        print(f"octahedron, every edge allowed {flex} bends: {sol.status}")
        if sol.feasible:
            print("  witness bend counts:", dict(sorted(sol.bends.items())))
        else:
            print("  oracle agrees:", not oracle_feasible(inst))

    print()
    print("one inflexible edge in a ring of flexible ones:")
    ring = instance_from_flex(
        list("abcd"),
        [("e1", "a", "b", 0), ("e2", "b", "c", 1),
         ("e3", "c", "d", 1), ("e4", "d", "a", 1)],
    )
    sol = solve_flexdraw_fpt(ring)
    print(f"  square with one rigid side: {sol.status}, bends {sol.bends}")


if __name__ == "__main__":
    main()
