"""From solver witness to an SVG file on disk.

Solves a couple of instances, realizes the witness representations on the
integer grid, verifies the geometry reproduces the intended rotations, and
writes SVG drawings next to this script.
"""

import pathlib

from orthoflex import (Graph, Instance, check_drawing, instance_from_flex,
                       realize, solve_flexdraw_fpt, solve_optimal, table_cost,
                       to_svg)

HERE = pathlib.Path(__file__).parent


def emit(name, sol):
    drawing = realize(sol.witness)
    problems = check_drawing(drawing, sol.witness)
    out = HERE / f"{name}.svg"
    out.write_text(to_svg(drawing))
    print(f"{name}: cost {sol.cost}, bends {sol.bends}")
    print(f"  geometry check: {'ok' if not problems else problems}")
    print(f"  wrote {out}")


def main():
    k4 = instance_from_flex(
        list("abcd"),
        [("ab", "a", "b", 2), ("ac", "a", "c", 2), ("ad", "a", "d", 2),
         ("bc", "b", "c", 2), ("bd", "b", "d", 2), ("cd", "c", "d", 2)],
    )
    emit("k4_flex2", solve_flexdraw_fpt(k4))

    g = Graph(list("abcde"),
              {"ab": ("a", "b"), "bc": ("b", "c"), "ca": ("c", "a"),
               "cd": ("c", "d"), "de": ("d", "e"), "ec": ("e", "c")})
    two_triangles = Instance(g, {e: table_cost([0, 1, 2, 3]) for e in g.edges})
    emit("two_triangles_optimal", solve_optimal(two_triangles))


if __name__ == "__main__":
    main()
