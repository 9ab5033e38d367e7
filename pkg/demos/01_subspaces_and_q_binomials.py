"""
Counting subspaces of F_p^n: Gaussian binomials, s(n), and enumeration by
echelon pattern.
"""

from nilcensus.fp import enumerate_subspaces, pattern_size, pivot_patterns
from nilcensus.qcomb import delta, gauss_binomial_poly, s_poly

# [n choose k]_q as a polynomial, and s(n) = sum over k
for n in range(1, 6):
    print(f"s({n}) = {s_poly(n)}")

print()
print("[4 choose 2]_q =", gauss_binomial_poly(4, 2))

# every subspace has a unique reduced echelon form; group them by pivot columns
n, p = 5, 3
total = 0
for pat in pivot_patterns(n):
    total += pattern_size(n, p, pat)
print()
print(f"subspaces of F_{p}^{n} by pattern: {total}, s({n}) at {p}: {s_poly(n)(p)}")
print("pattern (0,1,3) has", pattern_size(n, p, (0, 1, 3)), "members")

# streaming enumeration agrees
print("streamed:", sum(1 for _ in enumerate_subspaces(n, p)))

# leading term of s(n) is p^delta(n), doubled for odd n
for n in range(1, 9):
    s = s_poly(n)
    print(n, "degree", s.degree, "= delta", delta(n), " leading", s.leading_coefficient)
