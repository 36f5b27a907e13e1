"""
Schwarzenberger bundles
=======================

The identity tensor gives the Schwarzenberger bundle. Its unstable
hyperplanes fill the curve y_j = t^j, so W(S) is infinite. Elementary
transformations at points of that curve stay in the same family.
"""

from fractions import Fraction

from steinerlab.bundle import (
    b_matrix,
    elementary_transform,
    is_member,
    schwarzenberger,
    sections_dim,
    unstable_scheme,
)
from steinerlab.poly import Ring
from steinerlab.tensor import iso_test

s = schwarzenberger(2, 2)
B = b_matrix(s)
print("B =", [[str(p) for p in row] for row in B])
det = B[0][0] * B[1][1] - B[0][1] * B[1][0]
print("det B =", det)

for xi in [(1, 1, 1), (1, 1, 0), (1, -2, 4)]:
    print("member", xi, is_member(s, xi))

s = schwarzenberger(2, 3)
sch = unstable_scheme(s)
print("schwarzenberger(2, 3):", sch.verdict)

# every maximal minor of B vanishes on the moment curve
T = Ring(["t"])
t = T.var(0)
print("minors on the curve:", {str(g.compose([T.one(), t, t**2], T)) for g in sch.ideal})

print("h0(S*(t)) for t = 0..3:", [sections_dim(s, j) for j in range(4)])

# one step down in k at the point t = 1/2 of the curve
xi = tuple(Fraction(1, 2) ** j for j in range(3))
down = elementary_transform(s, xi)
print("after transforming at", [str(x) for x in xi], "->", (down.n, down.k))
print("iso to schwarzenberger(2, 2):", iso_test(down.tensor, schwarzenberger(2, 2).tensor).verdict)
