"""
Reflection chamber of U + E8
============================

Runs the (-2)-Vinberg algorithm on the even unimodular lattice of
signature (1, 9) and prints the Coxeter diagram of the chamber it finds.
"""

import itertools

from k3cone import direct_sum, inner, make_standard, run_vinberg

L = direct_sum([make_standard("U"), make_standard("E8MINUS")])
res = run_vinberg(L)
print(res.verdict.value, "with", len(res.walls), "walls, v0 =", res.v0)

# walls in acceptance order, with the level they came from
for rec in res.transcript:
    for a in rec.accepted:
        print(f"  level {rec.level}: {a}")

# edges of the diagram: pairs of walls with inner product 1
W = res.wall_vectors
edges = [(i, j) for i, j in itertools.combinations(range(len(W)), 2) if inner(L, W[i], W[j]) == 1]
print("edges:", edges)

# U + E8 + E8 takes a few more levels
L18 = direct_sum([make_standard("U"), make_standard("E8MINUS"), make_standard("E8MINUS")])
print("U + E8 + E8:", run_vinberg(L18).verdict.value)
