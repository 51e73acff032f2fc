"""Monte Carlo experiments over random equidistant trees.

Random trees come from a coalescent draw (uniform pair merges) with i.i.d.
uniform merge heights and the root pinned at the requested height.  Two
experiments ship with the package:

* star-prob: how often does the segment between two random trees pass
  through the star tree?  At 3 leaves this happens whenever the topologies
  differ (rate 2/3); at 4 leaves it needs transversal balanced shapes
  (rate about 2/27); at 5 or more leaves it never happens.
* nni-conjecture: are consecutive binary topologies along random segments
  always one NNI move apart?  Transitions through a polytomy can jump by
  more than one move; the report counts them.

Reports are byte-identical for a fixed seed; timing is kept out of them.
"""

from troptree import (SampleConfig, check_nni_conjecture,
                      estimate_star_probability)

SAMPLES = 2000  # increase to 10000 to reproduce the figures quoted above

print("Star crossings by leaf count:")
for n in (3, 4, 5, 6):
    report = estimate_star_probability(
        SampleConfig(n=n, samples=SAMPLES, seed=42))
    print(f"  n={n}: {report.hits:5d} of {SAMPLES}  (rate {report.rate:.4f}, "
          f"{report.wall_clock_sec:.2f}s)")

print("\nNNI transitions along random segments (n=5):")
report = check_nni_conjecture(SampleConfig(n=5, samples=300, seed=7))
print(f"  transitions: {report.transitions_total}, single-NNI: "
      f"{report.transitions_single_nni} "
      f"(rate {report.transition_rate:.3f})")
print(f"  degenerate boundaries: {report.degenerate_boundaries} "
      f"(unresolved: {report.unresolved_boundaries})")
print(f"  violations of the single-NNI property: {len(report.violations)}")
for v in report.violations[:3]:
    print(f"    sample {v['sample']} transition {v['transition']}")
    print(f"      t1 = {v['t1']}")
    print(f"      t2 = {v['t2']}")

print("\nFull JSON report of a small run:")
print(check_nni_conjecture(SampleConfig(n=4, samples=50, seed=1)).to_json())
