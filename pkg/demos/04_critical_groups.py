"""
Critical groups
===============

A group is S-critical for a class X when it lies outside X while all its
proper subgroups lie inside. Two small examples.
"""

from normlab import builtin_group, is_member, parse_class
from normlab.norms import crit_s

cases = [
    ("A5", "Gpi({3})*Npi({3})", "S*Npi({3})"),
    ("S3", "Gpi({2})*Gpi({3})", "N*Gpi({3})"),
]
for name, X, Y in cases:
    G = builtin_group(name)
    print(f"{name}: critical for {X}: {crit_s(G, parse_class(X))}; member of {Y}: {is_member(G, parse_class(Y))}")

# familiar minimal non-members, and S4 as a group that is not critical
for name, X in (("S3", "N"), ("A4", "U"), ("A5", "S"), ("S4", "N")):
    print(f"{name} critical for {X}: {crit_s(builtin_group(name), parse_class(X))}")
