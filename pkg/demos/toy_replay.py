"""
Interpolating a discriminant one coordinate at a time
=====================================================

The cubic u0*p^3 + u1*p^2 + u2*p + u3 has the classical discriminant as its
D_{X,J}.  This script rebuilds it by the staged interpolation route with the
sample values fixed by hand, printing each intermediate polynomial.
"""

from datadisc import discriminant as D
from datadisc.modelfile import load_system

toy = load_system("toy")

# u0 = v1 - 2 v0, u1 = v1, u2 = v1 - 3 v2, u3 = v1 - 5 v3: after this change
# the leading coefficient of D in v1 is a nonzero constant
change = D.CoordinateChange((1, 0, 1, 1), 1, (-2, 1, -3, -5))

# restricting to a vertical line gives a monic quartic in v1
star = D.interpolation.transformed(toy, change)
print("section at (13, 4, 5):", D.intersect(star, (13, 4, 5), main=1))

r = D.interpolate_strategy2(
    toy, change=change, homog_var="u3", order=["u0", "u2"],
    base={"u2": 3, "u3": 5}, stage_values={"u0": [2, 7, 9], "u2": [3, 11, 21, 4]})

print("\nbivariate slice (v2 = 3, v3 = 5):")
print("  ", r.state.slices[("u0",)])
print("three-parameter slice (v3 = 5):")
print("  ", r.state.slices[("u0", "u2")])
print("after homogeneous recovery in v3:")
print("  ", r.state.slices["dstar"])
print("\nback in the original coordinates:")
print("  ", r.dxj)
print("samples used:", r.samples)

# the same polynomial by plain elimination
assert r.dxj == D.dxj_elimination(toy).dxj
