"""
Six lines in the plane
======================

Six lines in general position in P^2 give a logarithmic Steiner bundle with
n = 2, k = 3. Its unstable hyperplanes are exactly the six lines, and the
lines alone determine the bundle up to isomorphism.
"""

from steinerlab import io
from steinerlab.bundle import classify, logarithmic, segre_intersection, steiner_matrix, unstable_scheme
from steinerlab.tensor import hyperdet_certificate, iso_test

lines = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, 4, 9)]
s = logarithmic(lines)
print("format", s.dims, "(n, k) =", (s.n, s.k))
print("certificate", hyperdet_certificate(s.tensor))

# each of the first five columns of M_A is a multiple of one line
for row in steiner_matrix(s.tensor):
    print("  ", [str(p) for p in row])

sch = unstable_scheme(s)
print("W(S):", sch.verdict, "length", sch.length)
for xi, mult in sch.points:
    print("  ", io.hyperplane_str(xi), "mult", mult)
print("classified as", classify(s))

# rank-one points of the image of A project onto the same six lines
seg = segre_intersection(s)
print("Segre section length", seg.length)
print("projected lines", [io.hyperplane_str(h) for h in seg.hyperplanes])

# rebuild from the unstable lines listed in another order
rebuilt = logarithmic([xi for xi, _ in reversed(sch.points)])
print("rebuilt bundle:", iso_test(s.tensor, rebuilt.tensor).verdict)

# move the last line and the bundle changes
moved = logarithmic(lines[:5] + [(1, 4, 8)])
print("moved sixth line:", iso_test(s.tensor, moved.tensor).verdict)
