"""Random equidistant trees and Monte Carlo experiments.

The sampling model (tagged ``coalescent-uniform-heights``) draws a ranked
topology by merging a uniformly random pair of lineages at each step and
assigns the n-2 non-root merge heights i.i.d. uniform(0, h), sorted, with
the root pinned at h.  Every draw is a binary equidistant tree of height
exactly h.

Each sample gets its own counter-based random stream keyed by
(seed, sample index), so runs are reproducible regardless of execution
order or parallelism.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .newick import RootedTree, TreeNode, write_newick
from .trees import (internal_clade_heights, nni_neighbors, one_nni_apart,
                    restrict_to_clade, tree_from_clade_heights)
from .treespace import (_topology_sequence_with_trees, star_on_segment,
                        tree_segment)
from .util import DEFAULT_TOL, natural_key, sorted_labels

MODEL_TAG = "coalescent-uniform-heights"


@dataclass(frozen=True)
class SampleConfig:
    """Configuration of one Monte Carlo experiment."""

    n: int
    height: float = 1.0
    samples: int = 1
    seed: int = 0
    model: str = MODEL_TAG

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least 3 leaves")
        if self.samples < 1:
            raise ValueError("need at least 1 sample")
        if not self.height > 0:
            raise ValueError("height must be positive")
        if self.model != MODEL_TAG:
            raise ValueError(f"unknown sampling model {self.model!r}")


@dataclass
class ExperimentReport:
    """Aggregated result of a Monte Carlo experiment.

    `wall_clock_sec` is excluded from the serialized report by default so
    that identical configurations produce byte-identical output.
    """

    experiment: str
    config: SampleConfig
    hits: int | None = None
    rate: float | None = None
    transitions_total: int | None = None
    transitions_single_nni: int | None = None
    transition_rate: float | None = None
    degenerate_boundaries: int | None = None
    unresolved_boundaries: int | None = None
    topology_count_histogram: dict[int, int] | None = None
    violations: list[dict] = field(default_factory=list)
    wall_clock_sec: float = 0.0

    def to_dict(self, include_timing: bool = False) -> dict:
        out: dict = {
            "experiment": self.experiment,
            "config": {
                "n": self.config.n,
                "height": self.config.height,
                "samples": self.config.samples,
                "seed": self.config.seed,
                "model": self.config.model,
            },
        }
        if self.hits is not None:
            out["hits"] = self.hits
            out["rate"] = self.rate
        if self.transitions_total is not None:
            out["transitions_total"] = self.transitions_total
            out["transitions_single_nni"] = self.transitions_single_nni
            out["transition_rate"] = self.transition_rate
            out["degenerate_boundaries"] = self.degenerate_boundaries
            out["unresolved_boundaries"] = self.unresolved_boundaries
            out["topology_count_histogram"] = {
                str(k): v for k, v in sorted(self.topology_count_histogram.items())}
            out["violations"] = self.violations
        if include_timing:
            out["wall_clock_sec"] = self.wall_clock_sec
        return out

    def to_json(self, include_timing: bool = False, indent: int = 2) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=indent)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based random stream for sample `index` of run `seed`."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(index,))))


def random_equidistant_tree(n: int, height: float, rng: np.random.Generator,
                            labels: Sequence[str] | None = None) -> RootedTree:
    """One draw from the sampling model: a binary equidistant tree with the
    given height.  Default labels are "1" ... "n"."""
    if n < 2:
        raise ValueError("need at least 2 leaves")
    if not height > 0:
        raise ValueError("height must be positive")
    if labels is None:
        labels = [str(i) for i in range(1, n + 1)]
    else:
        labels = list(labels)
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for n={n}")

    merge_heights = np.sort(rng.uniform(0.0, height, n - 2)) if n > 2 else np.array([])
    nodes = [TreeNode(label=lab) for lab in labels]
    node_heights = [0.0] * n
    for h in list(merge_heights) + [height]:
        i, j = sorted(rng.choice(len(nodes), size=2, replace=False))
        b = nodes.pop(j)
        a = nodes.pop(i)
        hb = node_heights.pop(j)
        ha = node_heights.pop(i)
        a.length = h - ha
        b.length = h - hb
        nodes.append(TreeNode(children=[a, b]))
        node_heights.append(h)
    return RootedTree(nodes[0])


def random_one_nni_pair(n: int, height: float,
                        rng: np.random.Generator) -> tuple[RootedTree, RootedTree]:
    """A random tree and a uniformly chosen NNI neighbor of it."""
    t1 = random_equidistant_tree(n, height, rng)
    nbrs = nni_neighbors(t1)
    return t1, nbrs[int(rng.integers(len(nbrs)))]


def random_shared_clade_pair(n: int, height: float, rng: np.random.Generator,
                             ) -> tuple[RootedTree, RootedTree, tuple[str, ...]]:
    """Two random trees sharing one clade with an identical induced
    topology (the shared subtree is rescaled to fit the second tree, which
    preserves its topology)."""
    if n < 4:
        raise ValueError("need at least 4 leaves to share a proper clade")
    t1 = random_equidistant_tree(n, height, rng)
    full = frozenset(t1.leaf_labels)
    proper = [c for c in internal_clade_heights(t1) if c != full]
    clade = proper[int(rng.integers(len(proper)))]

    stub = min(clade, key=natural_key)
    rest = sorted_labels((full - clade) | {stub})
    skeleton = random_equidistant_tree(len(rest), height, rng, labels=rest)

    def expand(c):
        return frozenset((c - {stub}) | clade) if stub in c else c

    new_map = {expand(c): h for c, h in internal_clade_heights(skeleton).items()}

    parent = min((c for c in new_map if clade < c), key=len)
    slot = new_map[parent]
    shared = internal_clade_heights(restrict_to_clade(t1, clade))
    top = max(shared.values())
    scale = (0.5 * slot / top) if top >= slot - 2 * DEFAULT_TOL else 1.0
    for c, h in shared.items():
        new_map[c] = h * scale
    return t1, tree_from_clade_heights(full, new_map), tuple(sorted_labels(clade))


def estimate_star_probability(cfg: SampleConfig) -> ExperimentReport:
    """Draw pairs of random trees and count how often the segment between
    them passes through the star tree (the origin of the coordinates)."""
    start = time.perf_counter()
    hits = 0
    for index in range(cfg.samples):
        rng = sample_rng(cfg.seed, index)
        t1 = random_equidistant_tree(cfg.n, cfg.height, rng)
        t2 = random_equidistant_tree(cfg.n, cfg.height, rng)
        if star_on_segment(t1, t2):
            hits += 1
    return ExperimentReport(
        experiment="star-prob", config=cfg, hits=hits,
        rate=hits / cfg.samples, wall_clock_sec=time.perf_counter() - start)


def _binary_transitions(t1: RootedTree, t2: RootedTree, tol: float):
    """Consecutive pairs of distinct binary topologies along the segment,
    with representative trees.  Degenerate (polytomy) topologies bound the
    binary runs and are not transition endpoints themselves; each must
    resolve against (be a contraction of) its binary neighbors."""
    seq = _topology_sequence_with_trees(tree_segment(t1, t2, tol))
    binary: list = []
    degenerate = 0
    unresolved = 0
    for k, (topo, tree) in enumerate(seq):
        if not topo.is_binary:
            degenerate += 1
            for nb, _ in (seq[k - 1:k] + seq[k + 1:k + 2]):
                if nb.is_binary and not topo.is_contraction_of(nb):
                    unresolved += 1
        elif not binary or binary[-1][0] != topo:
            binary.append((topo, tree))
    pairs = [(binary[k], binary[k + 1]) for k in range(len(binary) - 1)]
    return pairs, degenerate, unresolved, len(seq)


def check_nni_conjecture(cfg: SampleConfig) -> ExperimentReport:
    """Draw pairs of random trees and test whether consecutive binary
    topologies along each segment differ by a single NNI move.  Apparent
    violations are re-verified with a 100x finer tolerance before being
    reported."""
    start = time.perf_counter()
    total = 0
    single = 0
    degenerate_total = 0
    unresolved_total = 0
    histogram: dict[int, int] = {}
    violations: list[dict] = []
    for index in range(cfg.samples):
        rng = sample_rng(cfg.seed, index)
        t1 = random_equidistant_tree(cfg.n, cfg.height, rng)
        t2 = random_equidistant_tree(cfg.n, cfg.height, rng)
        pairs, degenerate, unresolved, n_topos = _binary_transitions(
            t1, t2, DEFAULT_TOL)
        histogram[n_topos] = histogram.get(n_topos, 0) + 1
        degenerate_total += degenerate
        unresolved_total += unresolved
        for t_index, ((_, tree_a), (_, tree_b)) in enumerate(pairs):
            total += 1
            if one_nni_apart(tree_a, tree_b):
                single += 1
                continue
            fine_pairs, _, _, _ = _binary_transitions(t1, t2, DEFAULT_TOL / 100)
            if all(one_nni_apart(a[1], b[1]) for a, b in fine_pairs):
                single += 1
            else:
                violations.append({
                    "sample": index,
                    "transition": t_index,
                    "t1": write_newick(t1),
                    "t2": write_newick(t2),
                })
    return ExperimentReport(
        experiment="nni-conjecture", config=cfg,
        transitions_total=total, transitions_single_nni=single,
        transition_rate=(single / total) if total else 1.0,
        degenerate_boundaries=degenerate_total,
        unresolved_boundaries=unresolved_total,
        topology_count_histogram=histogram,
        violations=violations,
        wall_clock_sec=time.perf_counter() - start)


def violations_csv(report: ExperimentReport) -> str:
    """Violation log as CSV: sample index, the two Newick inputs, and the
    transition index within their segment."""
    lines = ["sample,t1,t2,transition"]
    for v in report.violations:
        lines.append(f"{v['sample']},\"{v['t1']}\",\"{v['t2']}\",{v['transition']}")
    return "\n".join(lines) + "\n"
