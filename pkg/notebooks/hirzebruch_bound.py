"""
Double covers of Hirzebruch surfaces
====================================

The negative section C0 of F_n is forced into the branch curve of a K3
double cover once -K.C0 < 0, and twice once the residual intersection is
also negative. Only n <= 4 survives.
"""

from k3cone.surfaces import (
    HirzebruchModel,
    K3Class,
    fixed_component_analysis,
    k3_riemann_roch,
    pullback_self_intersection,
)

print(" n  -K.C0  resid  mult  smooth")
for n in range(9):
    a = fixed_component_analysis(n)
    print(f"{n:2d}  {a.minus_K_dot_C0:5d}  {a.residual_dot_C0:5d}  {str(a.multiplicity_of_C0_in_base_locus):>4}"
          f"  {a.smooth_K3_cover_possible}")

F = HirzebruchModel(4)
print("-K^2 on F_4:", F.intersect(F.antiK, F.antiK))

# pulling back M with M^2 = n through the double cover gives L^2 = 2n and h^0 = n + 2
for n in range(1, 5):
    Lsq = pullback_self_intersection(n, 2)
    print(f"M^2 = {n}: L^2 = {Lsq}, h0(L) = {k3_riemann_roch(K3Class(Lsq))}")
