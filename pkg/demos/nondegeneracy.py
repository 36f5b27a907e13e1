"""
Two tests for nondegeneracy
===========================

A tensor is nondegenerate when the square multiplication map at t = k - 1 is
invertible, and also when the maximal minors of M_A vanish only at the
origin. This script runs both on a seeded batch and counts disagreements.
"""

import time

from steinerlab.bundle import nondegenerate_by_minors
from steinerlab.scalars import GF
from steinerlab.tensor import (
    certificate_degree,
    gale_permute,
    hyperdet_certificate,
    lem1_pattern_tensor,
    random_tensor,
    sparse_tensor,
)

dims = (5, 3, 3)
start = time.time()
agree = degenerate = 0
for seed in range(40):
    a = sparse_tensor(dims, seed) if seed % 2 else random_tensor(dims, seed)
    cert = hyperdet_certificate(a)
    agree += bool(cert) == nondegenerate_by_minors(a)
    degenerate += not cert
print(f"{agree}/40 agree, {degenerate} degenerate, {time.time() - start:.1f}s")

a = random_tensor(dims, 1)
print("degree", certificate_degree(2, 3))
print("certificate(2A) / certificate(A) =", hyperdet_certificate(a.scale(2)) / hyperdet_certificate(a))
print("mod 1000003:", hyperdet_certificate(a, GF(1000003)))

# a block of zeros in the corner forces degeneracy
b = lem1_pattern_tensor(dims, (1, 1), seed=5)
print("patterned:", hyperdet_certificate(b), nondegenerate_by_minors(b))

# swapping V and I keeps the verdict
print("gale:", bool(hyperdet_certificate(gale_permute(a))))
