# Counting things with one polynomial
#
# Evaluating the polynomial at special points counts spanning trees, forests,
# connected subgraphs and acyclic orientations. Substitutions along lines
# and hyperbolas give chromatic, reliability and Ising polynomials.

from fractions import Fraction

from tutte_ss import evaluations as ev

for family in ("sierpinski", "hanoi"):
    rep = ev.evaluation_report(family, 2)
    print(family, "level 2, consistent across sources:", rep.consistent())
    print("   trees", rep.complexity, "forests", rep.forests, "acyclic", rep.acyclicOrientations)

# Spanning trees at level 10 in closed form and by recursion.
print("hanoi level 10 spanning trees agree:",
      ev.complexity("hanoi", 10) == ev.closed_form_complexity("hanoi", 10))

# The gasket is uniquely 3-colourable at every level.
print("3-colourings of gasket levels 1..6:", [ev.chromatic_at("sierpinski", n, 3) for n in range(1, 7)])

# Network reliability: probability the graph stays connected when each
# edge survives independently with probability p.
r = ev.reliability_polynomial("sierpinski", 2)
print("gasket level 2 reliability at p=9/10:", r.evaluate(Fraction(9, 10)))

# Ising partition function in the variable t = exp(coupling / temperature).
z = ev.ising_partition("hanoi", 2)
print("hanoi level 2 Ising Z(t):", z)
print("Z at t=3/2 from the product formula:", ev.ising_product_formula("hanoi", 2, Fraction(3, 2)))
