"""
Symmetries of boundary-format tensors
=====================================

The identity tensor has an SL(2) of symmetries, a diagonal tensor keeps a
one-dimensional torus, and a generic tensor keeps nothing. The torus fixes
two unstable hyperplanes, which become points of high multiplicity.
"""

from steinerlab.bundle import classify, has_multiple_point, new_bundle, unstable_scheme
from steinerlab.tensor import (
    canonical_weights,
    diagonal_tensor,
    hm_min_weight,
    make_identity,
    random_tensor,
    stabilizer_algebra,
    tom_thumb_check,
    triangular_tensor,
)

dims = (5, 3, 3)
for name, a in [
    ("identity", make_identity(dims)),
    ("diagonal", diagonal_tensor(dims, seed=4)),
    ("generic", random_tensor(dims, seed=0)),
]:
    r = stabilizer_algebra(a)
    print(f"{name:9s} dim {r.dimension} {r.kind}", [str(e) for e, _ in r.y_eigenvalues])

s = new_bundle(diagonal_tensor(dims, seed=4))
sch = unstable_scheme(s)
print("diagonal W(S):", [(tuple(map(str, p)), m) for p, m in sch.points])
print("classified", classify(s), "| multiple points:", len(has_multiple_point(s)["points"]))

# the one-parameter subgroup behind triangular tensors
w = canonical_weights(dims)
print("weights", w.weights)
print("identity weight range", hm_min_weight(make_identity(dims), w))
print("triangular weight range", hm_min_weight(triangular_tensor(dims, seed=3), w))

# the path-counting identity used to build those weights
print(tom_thumb_check((6, 3, 2, 3)).totals)
