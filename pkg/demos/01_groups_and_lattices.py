"""
Groups as numpy tables, and their subgroup lattices
====================================================

Every group is a multiplication table with the identity at index 0.
Subgroups are bitmasks over element indices.
"""

import numpy as np

from normlab import builtin_group, enumerate_lattice, normal_subgroups
from normlab.lattice import frattini_subgroup, maximal_subgroups

# the symmetric group on four points, built from permutation generators
S4 = builtin_group("S4")
print(S4.name, "order", S4.order, "primes", S4.primes)

# the table is a plain int32 array; row g, column h holds the index of g*h
print("table shape", S4.table.shape, "dtype", S4.table.dtype)
print("identity row is the identity map:", np.array_equal(S4.table[0], np.arange(S4.order)))

# element orders come straight from the table
orders, counts = np.unique(S4.element_orders, return_counts=True)
print("element orders", dict(zip(orders.tolist(), counts.tolist())))

# the lattice: all subgroups, grouped into conjugacy classes
lat = enumerate_lattice(S4)
print("subgroups", len(lat.subgroups), "classes", len(lat.classes))
print("class sizes", sorted(len(c) for c in lat.classes))

# normal subgroups and maximal subgroups
print("normal orders", [N.order for N in normal_subgroups(S4)])
print("maximal orders", sorted(M.order for M in maximal_subgroups(S4)))
print("Frattini subgroup order", frattini_subgroup(S4).order)

# a quotient is another table; S4 over the Klein four-group is S3
V4 = next(N for N in normal_subgroups(S4) if N.order == 4)
Q, proj = S4.quotient(V4)
print("S4/V4 has order", Q.order, "and is abelian:", Q.is_abelian)
