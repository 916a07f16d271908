"""
Norms and hypercentres
======================

The norm for a pair (H, F) intersects the normalizers of U^F G_H over
all subgroups U. Iterating it over quotients gives an ascending series.
Hypercentres collect the chief factors that are F-central.
"""

from normlab import ALL_PRIMES, PrimeSet, builtin_group, chief_series, hf_norm, hypercentre, norm_series
from normlab.classes import parse_class
from normlab.norms import classical_norm, naive_hf_norm

ONE, A, N, U = (parse_class(t) for t in ("1", "A", "N", "U"))

# the classical norm: Q8 normalizes every subgroup, S3 does not
for name in ("Q8", "D8", "S3"):
    print(f"classical norm of {name}: order {classical_norm(builtin_group(name)).order}")

# the fast path visits one subgroup per conjugacy class and agrees with the literal definition
S4 = builtin_group("S4")
for H, F in ((ONE, A), (ONE, U), (N, U)):
    fast, slow = hf_norm(S4, H, F), naive_hf_norm(S4, H, F)
    print(f"S4 norm H={H} F={F}: order {fast.order}, matches naive: {fast == slow}")

# the ascending norm series stops once the norm of the quotient is trivial
series = norm_series(S4, ONE, N)
print("S4 norm series for F=N:", [T.order for T in series.terms])

# a chief series and the centrality of each factor
cs = chief_series(S4)
print("S4 chief factor orders:", cs.factor_orders)

# hypercentres for several prime sets
for F in (N, U):
    for pi in (ALL_PRIMES, PrimeSet.of(2), PrimeSet.of(3)):
        print(f"S4 hypercentre pi={pi} F={F}: order {hypercentre(S4, pi, F).order}")
