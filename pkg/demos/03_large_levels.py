# Pushing to large levels
#
# Symbolic polynomials grow quickly, so beyond level 5 the recursion is run
# at a numeric point instead. Rational points stay exact via a shared
# integer denominator.

import time
from fractions import Fraction

import mpmath

from tutte_ss import evaluations as ev
from tutte_ss.recursion import eval_triple_at_point

start = time.perf_counter()
value = eval_triple_at_point("sierpinski", 12, Fraction(3, 2), Fraction(5, 7)).total()
print(f"gasket level 12 at (3/2, 5/7): {value.numerator.bit_length()}-bit numerator, "
      f"{time.perf_counter() - start:.2f}s")

# Spanning tree entropy per vertex approaches a known limit.
for family in ("sierpinski", "hanoi"):
    series = ev.growth_constant_series(family, 10)
    last = series.entries[-1][1]
    print(family, "level 10:", mpmath.nstr(last, 12), "limit:", mpmath.nstr(ev.growth_limit(family), 12))
