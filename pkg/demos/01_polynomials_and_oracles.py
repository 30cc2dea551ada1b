# Building the graphs and their Tutte polynomials
#
# Both families grow by gluing three copies of the previous level. The
# recursion only carries three polynomials per level, one for each way the
# three corner vertices can sit inside spanning forests.

from tutte_ss import build_hanoi, build_sierpinski, tutte_polynomial
from tutte_ss.oracle import tutte_deletion_contraction, tutte_subset_expansion
from tutte_ss.recursion import sierpinski_reduced

# Level 2 is small enough for brute force, which makes it a good sanity check.
gasket, corners = build_sierpinski(2)
print("gasket level 2:", gasket.vertex_count, "vertices,", gasket.edge_count, "edges, corners", tuple(corners))

t = tutte_polynomial("sierpinski", 2)
print("T(x, y) =", t)
print("matches subset expansion:", t == tutte_subset_expansion(gasket))
print("matches deletion-contraction:", t == tutte_deletion_contraction(gasket))

# The reduced triple stores the two corner-split polynomials with their
# forced (x - 1) factors removed; at (1, 1) they are plain integers.
r = sierpinski_reduced(2)
print("reduced components at (1,1):", r.n(1, 1), r.m(1, 1))

# The Hanoi graph at level 3 has 27 vertices and 39 edges, well beyond
# brute force, yet its polynomial is instant.
towers = build_hanoi(3)[0]
h = tutte_polynomial("hanoi", 3)
print("hanoi level 3:", towers.vertex_count, "vertices,", len(h), "terms, T(2,2) == 2^39:", h(2, 2) == 2 ** 39)
