"""
Algebras of square-free monomials in m variables: chain structure,
principal ideal dimensions, and the ideal count for m = 3.
"""

from collections import Counter

from nilcensus import build_binomial, compute_q_t, count_ideals_within, enumerate_ideals
from nilcensus import interpolate_count, principal_ideals

for m in (2, 3, 4):
    A = build_binomial(5, m)
    print(A.descriptor, "n =", A.n, "layers", A.chain.layer_dims)

A = build_binomial(5, 3)
ps = principal_ideals(A)
print()
print("principal ideals of", A.descriptor, ":", len(ps))
print("by (stratum, dim):", sorted(Counter((P.stratum, P.dim) for P in ps).items()))
print("q_t =", compute_q_t(A, ps))

print("ideals:", len(enumerate_ideals(A, principals=ps)))
for t in range(A.e + 1):
    print(f"   inside N_{t}: {count_ideals_within(A, A.chain.level(t), ps)}")

print()
print("i(A) =", interpolate_count("binomial(3)", [3, 5, 7], validate=11))
