"""Optimal segment centers: summarize a bundle of trajectories by one trip.

The (1,2)-center of a curve set is the segment ab minimizing the largest
discrete Fréchet distance to any curve: every curve splits into a prefix
near a and a suffix near b.  Solvers for squares (L-inf), squares under
translation, and disks (L2), each checked against exhaustive enumeration.
"""

import numpy as np

from curveq import Curve, center_l2, center_linf, center_linf_translation
from curveq.oracles import center_brute

rng = np.random.default_rng(31)

bundle = []
for k in range(5):
    m = int(rng.integers(3, 5))
    t = np.linspace(0, 1, m)[:, None]
    pts = np.array([2, 10]) + t * np.array([60, 4]) + rng.integers(-5, 6, (m, 2))
    bundle.append(Curve(f"run{k}", pts))

for name, solve, kwargs in (
    ("L-inf", center_linf, dict(metric="linf")),
    ("L-inf under translation", center_linf_translation,
     dict(metric="linf", translation=True)),
    ("L2", center_l2, dict(metric="l2")),
):
    sol = solve(bundle)
    brute_r, _ = center_brute(bundle, **kwargs)
    print(f"{name}:")
    print(f"  radius {sol.radius:.6g} (brute enumeration: {brute_r:.6g})")
    print(f"  center segment {np.round(sol.a, 3).tolist()} -> {np.round(sol.b, 3).tolist()}")
    print(f"  splits {sol.splits}")
