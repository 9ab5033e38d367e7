"""
Lower and upper bounds on the number of ideals, and how they squeeze the
ratio i(A)/s(A).
"""

from nilcensus import build_binomial, build_triangular, build_uniserial, enumerate_ideals
from nilcensus.bounds import bound_report, threshold_flag
from nilcensus.fp import is_prime

for A in (build_triangular(5, 2), build_uniserial(7, 4), build_binomial(5, 3)):
    i = len(enumerate_ideals(A))
    rep = bound_report(A, i_A=i)
    print(A.descriptor, "dims", rep.dims, "q", rep.q)
    print("   lambda", rep.lambda_lower, "<= i(A)", i)
    for name, value in rep.uppers().items():
        print(f"   {name:26s} {float(value):14.1f}")
    print("   ratio", float(rep.ratio), "sandwich ok:", rep.sandwich_ok())
    print()

# binomial(4) is too large to census, but its bound is cheap
big = bound_report(build_binomial(5, 4), q_mode="binomial")
print("binomial(4)@5 ratio bound:", big.ratio_bound_rounded)

# when do the bounds alone force i(A)/s(A) < 1/100?
for e in (2, 3, 4, 5):
    first = next(p for p in range(3, 400) if is_prime(p) and threshold_flag(e, p, max(4, e)))
    print(f"e={e}: guaranteed from p={first}")
