"""From a rounded-up LP point to a genuine integer solution, or a refusal.

Rounding an LP solution up coordinate-wise gives a point that dominates
some feasible integer solution whenever the formulation's integrality gap
is finite.  dom_to_ip walks the coordinates once, asking a small LP per
step whether the coordinate can be zeroed, and lands exactly on such a
solution.  When no dominated solution exists it refuses with a dedicated
error instead of guessing.

Run:  python3 demos/feasibility_pushdown.py
"""

import math

from fdt.domtoip import UnboundedGapOrInfeasible, dom_to_ip
from fdt.experiments import _solve_relaxation
from fdt.generators import gen_tap
from fdt.model import make_instance


def main():
    # tree augmentation: cover every tree edge by at least one link
    tree, inst = gen_tap(4, seed=2)
    lp_opt, x = _solve_relaxation(inst, "float")
    ceil_x = [math.ceil(v - 1e-9) for v in x]
    print(f"tree-augmentation instance: {inst.num_vars} links, "
          f"{len(inst.rows)} cut rows, LP optimum {lp_opt:g}")
    print(f"rounded-up point uses {sum(ceil_x)} links")

    z = dom_to_ip(inst, ceil_x)
    print(f"pushed down to {sum(z)} links; still feasible:",
          all(row.value(z) >= row.rhs for row in inst.rows))
    print(f"cost {float(inst.cost(z)):g} vs LP bound {lp_opt:g}")

    # a refusal: demand 3 units from two binary variables
    bad = make_instance(2, [({0: 1, 1: 1}, 3)], name="impossible")
    try:
        dom_to_ip(bad, [1, 1])
    except UnboundedGapOrInfeasible as exc:
        print(f"\nimpossible instance refused as expected: {exc}")


if __name__ == "__main__":
    main()
