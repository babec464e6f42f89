"""
Where the sign of the discriminant is not enough
================================================

For the symmetric 3x3 rank-constrained model (six data coordinates, ML
degree 6) two data points with D_{X,J} of the same sign give six real
critical points each, yet differ in how many of them are positive.
"""

from datadisc import discriminant as D
from datadisc.likelihood import DataVector, ml_degree
from datadisc.modelfile import load_system
from datadisc.rootprobe import count_solutions

model = load_system("model4")
print("unknowns:", ", ".join(model.unknowns))
print("ML degree:", ml_degree(model, seed=0))

# the full D has 1307 terms and takes about an hour, but its degrees are cheap
print("degree profile:", D.degree_profile(model, seed=0))

points = [
    "1,1,280264116870825/295147905179352825856,1,"
    "34089009205592922038535/141080698675730650759168,"
    "32898355113670387769001/141080698675730650759168",
    "1,1,199008,30,2022,1",
]
for text in points:
    r = count_solutions(model, DataVector.parse(text))
    print(f"\nu = ({text})")
    print(f"  complex {r.complex}, real {r.real}, positive {r.positive}")
    for note in r.notes:
        print("  note:", note)
