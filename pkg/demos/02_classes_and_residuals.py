"""
Group classes, residuals and radicals
=====================================

Classes are written as small expressions: A, N, U, S for the abelian,
nilpotent, supersolvable and solvable groups; Gpi({p}) for pi-groups;
Npi({p}) for pi-nilpotent groups; X*Y for formation products.
"""

from normlab import builtin_group, is_member, parse_class, radical, residual

S4 = builtin_group("S4")
A5 = builtin_group("A5")

# parsing is strict and reports the failing position
U = parse_class("U")
NU = parse_class("N*U")
print("parsed:", U, "and", NU)
try:
    parse_class("N*(")
except ValueError as e:
    print("parse error:", e)

# membership
for name in ("S3", "A4", "S4", "A5"):
    G = builtin_group(name)
    print(f"{name}: nilpotent={is_member(G, parse_class('N'))}",
          f"supersolvable={is_member(G, U)} in N*U={is_member(G, NU)}")

# residuals: the smallest normal subgroup with quotient in the class
for text in ("A", "N", "U", "S"):
    print(f"S4 residual for {text}: order {residual(S4, parse_class(text)).order}")
print("A5 is perfect, its solvable residual is everything:", residual(A5, parse_class("S")).is_whole)

# radicals: the largest normal subgroup inside a Fitting class
print("Fitting subgroup of S4 has order", radical(S4, parse_class("N")).order)
print("O_2(S4) has order", radical(S4, parse_class("Gpi({2})")).order)
print("solvable radical of A5 is trivial:", radical(A5, parse_class("S")).is_trivial)
