"""Nearest neighbor when the inputs are only fixed up to translation.

The match quality of a trajectory against a trip should often not depend
on where the trajectory happened, only on its shape.  This demo shows
that the translation-invariant structures ignore arbitrary offsets and
that allowing translation never increases the distance.
"""

import numpy as np

from curveq import (
    Curve,
    Segment,
    SegmentQueryIndex,
    TranslationCurveIndex,
    TranslationSegmentIndex,
)

rng = np.random.default_rng(23)

shapes = [
    Curve("arc", [[0, 0], [3, 2], [6, 3], [9, 2], [12, 0]]),
    Curve("hook", [[0, 0], [5, 0], [5, 5]]),
    Curve("steps", [[0, 0], [2, 2], [4, 0], [6, 2]]),
]
# scatter the same shapes far apart
scattered = [c.translated(rng.integers(-500, 500, 2)) for c in shapes]

s = Segment("trip", [100, 100], [112, 100])
fixed = SegmentQueryIndex(scattered)
trans = TranslationCurveIndex(scattered)
print("query trip of x-span 12")
print("  fixed positions:", fixed.nearest(s))
print("  under translation:", trans.nearest(s))

print("\ntranslating every input leaves the answer unchanged")
moved = [c.translated(rng.integers(-100, 100, 2)) for c in scattered]
print("  original:", trans.nearest(s))
print("  moved:   ", TranslationCurveIndex(moved).nearest(s))

print("\ndirection 2: segments indexed as difference points")
segs = [Segment(f"s{k}", rng.integers(0, 50, 2), rng.integers(0, 50, 2)) for k in range(30)]
q = Curve("q", [[0, 0], [4, 1], [9, 0]])
tsi = TranslationSegmentIndex(segs)
print("  nearest under translation:", tsi.nearest_to_curve(q))
print("  same query shifted by (700, -300):",
      tsi.nearest_to_curve(q.translated([700, -300])))
