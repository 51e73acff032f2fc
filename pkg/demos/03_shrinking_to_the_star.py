"""The segment from a tree to the star tree visits one tree per
speciation time.

Raising every internal node to the next speciation time is exactly what the
tropical segment toward the origin (the star tree, all distances equal)
does: the bend trees are the input tree with its lowest nodes progressively
merged upward.  The 8-leaf example below merges in the order
(7,8) -> (3,4) -> (5,6) -> {2,3,4} -> {5,6,7,8} -> {1,2,3,4}/{5,6,7,8}.
"""

import numpy as np

from troptree import (Ultrametric, parse_newick, segment_to_star,
                      speciation_times, topology_of, tree_of, tree_segment,
                      ultrametric_of, write_newick)

tree = parse_newick("((1:1,(2:0.6,(3:0.3,4:0.3):0.3):0.4):0.2,"
                    "((5:0.4,6:0.4):0.3,(7:0.2,8:0.2):0.5):0.5);")

times = speciation_times(tree)
print(f"Input tree: {write_newick(tree)}")
print(f"Speciation times: {times}")

print("\nOne tree per speciation time, ending at the star:")
for k, t in enumerate(segment_to_star(tree), start=1):
    print(f"  T^{k}: {write_newick(t)}")
    print(f"        clades {topology_of(t).canonical_str()}")

print("\nCross-check: these are exactly the bend trees of the segment "
      "to the star tree of the same height (in reverse order):")
n = tree.n_leaves
star = tree_of(Ultrametric(tree.leaf_labels,
                           np.full(n * (n - 1) // 2, 2 * tree.height())))
seg = tree_segment(tree, star)
stars = segment_to_star(tree)
for bend, expected in zip(seg.bend_ultrametrics, reversed(stars)):
    match = np.allclose(bend.entries, ultrametric_of(expected).entries)
    print(f"  bend == T^k: {match}")
