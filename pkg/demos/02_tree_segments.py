"""A tropical line segment between two 4-leaf trees, tree by tree.

The two input trees differ by one rearrangement around the {1,2,3}
configuration.  Their segment has a single interior bend point, and at that
bend the three leaves collapse into a polytomy: the topology passes from one
endpoint's shape to the other through a degeneration of both.
"""

from troptree import (parse_newick, topology_sequence, tree_segment,
                      ultrametric_of, write_newick)

t1 = parse_newick("(((1:0.2,2:0.2):0.2,3:0.4):0.6,4:1);")
t2 = parse_newick("(((2:0.2,3:0.2):0.2,1:0.4):0.6,4:1);")

print("Input trees (equidistant, height 1):")
print(f"  t1 = {write_newick(t1)}")
print(f"  t2 = {write_newick(t2)}")

u = ultrametric_of(t1)
v = ultrametric_of(t2)
print("\nTheir ultrametrics (pairwise distances, pairs "
      f"{', '.join('-'.join(p) for p in u.pairs())}):")
print(f"  u = {u.entries}")
print(f"  v = {v.entries}")
print(f"  coordinate differences v - u = {v.entries - u.entries}")

seg = tree_segment(t1, t2)
print("\nBend points of the segment, from t2 to t1:")
for k, bu in enumerate(seg.bend_ultrametrics):
    print(f"  bend {k}: {bu.entries}")
    print(f"          {write_newick(seg.bend_trees[k])}"
          f"   topology {seg.bend_topologies[k].canonical_str()}")

print("\nDeduplicated topology sequence along the whole segment:")
for topo in topology_sequence(seg):
    print(f"  {topo.canonical_str()}"
          + ("   (polytomy)" if not topo.is_binary else ""))

print("\nThe same data as CSV (one row per bend point):")
print(seg.to_csv(), end="")
