"""Exact L-infinity nearest-neighbor queries, both directions.

Builds the segment-query structure over a family of noisy trajectories,
asks for the trajectory closest to a straight trip, and cross-checks
against a brute-force scan.  Then flips the direction: a set of candidate
trips (segments) indexed for a trajectory query.
"""

import numpy as np

from curveq import Curve, Segment, SegmentInputIndex, SegmentQueryIndex
from curveq.oracles import nn_brute

rng = np.random.default_rng(11)

print("direction 1: trajectories indexed, segment query")
curves = []
for k in range(40):
    start = rng.integers(0, 60, 2)
    end = start + rng.integers(20, 60, 2)
    m = int(rng.integers(3, 9))
    t = np.linspace(0, 1, m)[:, None]
    wiggle = rng.integers(-6, 7, size=(m, 2))
    curves.append(Curve(f"t{k:02d}", start + t * (end - start) + wiggle))

index = SegmentQueryIndex(curves)
trip = Segment("trip", [10, 10], [60, 55])
cid, d = index.nearest(trip)
print(f"  structure: {cid} at L-inf distance {d:.6g}")
print(f"  brute:     {nn_brute(curves, trip, 'linf')}")

print("\ndirection 2: trips indexed, trajectory query")
segs = [Segment(f"s{k:02d}", rng.integers(0, 80, 2), rng.integers(0, 80, 2))
        for k in range(60)]
sindex = SegmentInputIndex(segs)
walk = Curve("walk", [[5, 5], [20, 18], [36, 22], [58, 40]])
sid, d = sindex.nearest_to_curve(walk)
print(f"  structure: {sid} at L-inf distance {d:.6g}")
print(f"  brute:     {nn_brute(segs, walk, 'linf')}")
