"""
Invariant part of a product nef cone
====================================

Synthetic version of the Enriques example: take X = F x P^1 with
Nef(F) the first quadrant, let an involution swap the two rulings of F,
and cut the product cone with the invariant subspace.
"""

from k3cone import RationalCone, fixed_subspace, intersect_with_subspace, orbit_faces, faces

product = RationalCone.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]

basis = fixed_subspace([swap])
print("invariant basis:", basis)

nef_Y = intersect_with_subspace(product, basis)
print("rays in subspace coordinates:", nef_Y.rays)
print("facets:", nef_Y.facets)

# the involution acts on the facets of the product cone; two of them are swapped
part = orbit_faces(faces(product, 1), [swap], word_budget=4)
for cl, ok in zip(part.classes, part.complete):
    print("facet orbit", cl, "complete" if ok else "incomplete")
