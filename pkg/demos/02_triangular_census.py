"""
A full census of the 5-dimensional algebra spanned by x, y, x^2, xy, y^2
(products of total degree 3 vanish): ideals, the map U -> U + AU, fibers.
"""

from nilcensus import build_triangular, census, enumerate_ideals, fiber_census, interpolate_count
from nilcensus.report import fiber_groups

A = build_triangular(3, 2)
print(A.descriptor, "basis", A.labels)
print("annihilator chain dims", A.chain.dims)

rep = census(A)
print(f"i(A) = {rep.i_A}, s(A) = {rep.s_A}, ratio = {rep.ratio}")
print("ideals inside N_t:", rep.i_strata, " q_t:", rep.q)

# both strategies find the same ideals
assert enumerate_ideals(A, "filter") == enumerate_ideals(A)

# group ideals by (stratum, dimension, fiber size)
fibers = fiber_census(A)
print()
print("stratum dim fiber ideals subspaces")
for t, d, f, k, tot in fiber_groups(A, fibers):
    print(f"{t:7d} {d:3d} {f:5d} {k:6d} {tot:9d}")
print("totals:", len(fibers), sum(fibers.values()))

# the count as a polynomial in p
poly = interpolate_count("triangular(2)", [3, 5, 7], validate=11)
print()
print("i(A) =", poly)
