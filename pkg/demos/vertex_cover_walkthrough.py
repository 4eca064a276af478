"""Decompose the fractional vertex cover of a small graph.

The triangle's LP relaxation bottoms out at x = (1/2, 1/2, 1/2) with value
1.5, strictly below any integral cover.  The decomposition tree turns that
fractional point into a certified convex combination of actual covers,
dominated by a scaled copy of x.

Run:  python3 demos/vertex_cover_walkthrough.py
"""

import networkx as nx

from fdt.binary import fdt_dive, fdt_tree
from fdt.experiments import _solve_relaxation
from fdt.generators import gen_vc
from fdt.graphs import make_graph
from fdt.model import verify_certificate


def show(name, graph):
    inst = gen_vc(graph, name=name)
    lp_opt, x = _solve_relaxation(inst, "float")
    print(f"\n== {name}: {graph.num_vertices} vertices, {graph.num_edges} edges")
    print(f"LP optimum {lp_opt:g} at x = {[round(v, 3) for v in x]}")

    cert = fdt_tree(inst, x)
    print(f"certified factor C = {cert.factor:.4f} with {cert.k} covers:")
    for w, z in zip(cert.weights, cert.solutions):
        cover = [i for i, v in enumerate(z) if v]
        print(f"  weight {w:.4f}  cover {cover}  cost {sum(z)}")
    ok, report = verify_certificate(cert, inst)
    print("verifier:", "valid" if ok else report)

    # a single random walk down the tree is a cheap standalone heuristic
    z = fdt_dive(inst, x, seed=0)
    print(f"one dive (seed 0): cover {[i for i, v in enumerate(z) if v]}, "
          f"cost {sum(z)} vs LP bound {lp_opt:g}")


def main():
    show("triangle", make_graph(3, [(0, 1), (1, 2), (0, 2)]))

    g = nx.petersen_graph()
    show("petersen", make_graph(10, list(g.edges())))

    g = nx.gnp_random_graph(24, 0.2, seed=7)
    show("gnp-24", make_graph(24, list(g.edges()), require_connected=False))


if __name__ == "__main__":
    main()
