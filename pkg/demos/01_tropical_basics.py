"""Tropical arithmetic on the projective torus, step by step.

Points of R^e modulo the all-ones direction are plain numpy vectors; adding
a constant to every coordinate does not change the point.  This script walks
through the metric, tropical combinations, and the polygonal line segment
for three small points.
"""

import numpy as np

from troptree import (canonicalize, in_tropical_hull, point_type,
                      trop_combine, trop_dist, tropical_segment)

v1 = np.array([0.0, 0.0, 0.0])
v2 = np.array([0.0, 3.0, 1.0])
v3 = np.array([0.0, 2.0, 5.0])

print("Three points in the tropical projective torus:")
print(f"  v1 = {v1},  v2 = {v2},  v3 = {v3}")
print(f"  v2 shifted by 10 is the same point: "
      f"dist = {trop_dist(v2, v2 + 10.0)}")

print("\nThe tropical metric is the spread of the coordinate differences:")
print(f"  d(v1, v2) = {trop_dist(v1, v2)}")
print(f"  d(v1, v3) = {trop_dist(v1, v3)}")
print(f"  d(v2, v3) = {trop_dist(v2, v3)}")

print("\nTropical combinations take coordinate-wise max of shifted copies:")
for a in (0.0, 2.0, 3.0):
    point = trop_combine([a, 0.0], [v1, v2])
    print(f"  {a} (+) v1 max v2 = {point} == {canonicalize(point)} canonically")

print("\nThe tropical line segment between v1 and v2 bends once:")
seg = tropical_segment(v1, v2)
for b in seg.bend_points:
    print(f"  {b}")
print(f"  sorted coordinate differences: {seg.lambdas}")
print(f"  path length = {seg.length} = d(v1, v2)")

print("\nSegments of the other two pairs:")
for a, b, name in ((v2, v3, "v2-v3"), (v1, v3, "v1-v3")):
    bends = tropical_segment(a, b).bend_points
    print(f"  {name}: " + "  ->  ".join(str(x) for x in bends))

print("\nMembership in the segment is a per-coordinate 'who attains the max'")
print("record (the type); every coordinate needs at least one attainer:")
for x in ([0, 2, 0], [0, 4, 0]):
    q = point_type([v1, v2], x)
    inside = in_tropical_hull([v1, v2], x)
    print(f"  x = {x}: type = {tuple(sorted(s) for s in q)}, inside = {inside}")
