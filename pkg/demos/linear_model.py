"""
The linear model from equations to a sign rule
==============================================

Build the likelihood equations of a four-state linear model, compute the
discriminant component D_{X,J} three ways, and watch the number of real
critical points follow the sign of D at random data.
"""

import random
import time

from datadisc import discriminant as D
from datadisc.likelihood import dx_p, ml_degree
from datadisc.modelfile import load_system
from datadisc.rootprobe import region_classify, summarize

system = load_system("linear")
for f in system.equations:
    print("  ", f, "= 0")

# generic data has this many complex critical points
print("ML degree:", ml_degree(system, seed=0))
print("coordinate hyperplanes:", dx_p(system))

# degrees first, since they size every interpolation problem
print("degree profile:", D.degree_profile(system, seed=0))

results = {}
for name, run in [("elim", lambda: D.dxj_elimination(system)),
                  ("s1", lambda: D.interpolate_strategy1(system, seed=0)),
                  ("s2", lambda: D.interpolate_strategy2(system, seed=0)),
                  ("s3", lambda: D.interpolate_strategy3(system, seed=0))]:
    t = time.monotonic()
    results[name] = run()
    print(f"{name:>4}: {len(results[name].dxj)} terms in {time.monotonic() - t:.2f}s")

assert len({str(r.dxj) for r in results.values()}) == 1
dxj = results["s2"].dxj
print("D_{X,J} =", dxj)
print("passes a random-line check:", D.verify_on_random_line(results["s2"], system, seed=1))

# count real and positive solutions on either side of D = 0
rng = random.Random(0)
points = [[rng.randint(1, 100) for _ in range(4)] for _ in range(25)]
reports = region_classify(system, dxj, points)
for (sign, real, positive), n in sorted(summarize(reports).items()):
    print(f"sign {sign:+d}: {real} real, {positive} positive  x{n}")
