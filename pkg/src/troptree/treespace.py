"""Ultrametrics and tropical line segments between equidistant trees.

An equidistant tree on n leaves is encoded by its ultrametric: the vector of
pairwise leaf distances (twice the most-recent-common-ancestor heights) in
lexicographic pair order.  A distance vector is an ultrametric exactly when
the maximum over every leaf triple is attained at least twice (the
three-point condition), and the set of all ultrametrics is closed under
coordinate-wise tropical combinations, so every point of the tropical line
segment between two equidistant trees is again an equidistant tree.  This
module computes those segments, reconstructs the trees along them, and
provides checkers for the structural facts the test suite exercises (star
crossings, clade preservation, segments between NNI neighbors).
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

import numpy as np

from . import trees as _trees
from .errors import LeafSetMismatchError, NotUltrametricError, TropTreeError
from .newick import RootedTree, write_newick
from .tropical import TropicalSegment, in_tropical_hull, tropical_segment
from .trees import Topology, require_equidistant, speciation_times, topology_of
from .util import DEFAULT_TOL, label_pairs, pair_index, sorted_labels


class Ultrametric:
    """Condensed pairwise-distance vector of an equidistant tree.

    `labels` must be natural-sorted; `entries` has length n(n-1)/2 in
    lexicographic pair order over the labels, with every entry positive.
    """

    __slots__ = ("labels", "entries")

    def __init__(self, labels: Sequence[str], entries):
        self.labels = tuple(labels)
        if self.labels != sorted_labels(self.labels):
            raise ValueError("labels must be natural-sorted and unique")
        n = len(self.labels)
        if n < 2:
            raise ValueError("an ultrametric needs at least 2 leaves")
        self.entries = np.asarray(entries, dtype=float)
        if self.entries.shape != (n * (n - 1) // 2,):
            raise ValueError(
                f"expected {n * (n - 1) // 2} entries for {n} leaves, "
                f"got {self.entries.shape}")
        if not np.all(self.entries > 0):
            raise ValueError("all pairwise distances must be positive")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def e(self) -> int:
        return self.entries.size

    @property
    def height(self) -> float:
        """Height of the corresponding tree: half the largest distance."""
        return float(self.entries.max()) / 2.0

    def pairs(self) -> list[tuple[str, str]]:
        return label_pairs(self.labels)

    def index(self, a: str, b: str) -> int:
        i, j = self.labels.index(a), self.labels.index(b)
        if i > j:
            i, j = j, i
        return pair_index(self.n, i, j)

    def entry(self, a: str, b: str) -> float:
        return float(self.entries[self.index(a, b)])

    def restrict(self, keep: Iterable[str]) -> "Ultrametric":
        """Sub-ultrametric on a subset of at least two leaves."""
        keep = sorted_labels(set(keep))
        missing = [lab for lab in keep if lab not in self.labels]
        if missing:
            raise ValueError(f"unknown leaf label(s): {missing}")
        m = len(keep)
        if m < 2:
            raise ValueError("restriction needs at least 2 leaves")
        sub = np.empty(m * (m - 1) // 2)
        for a in range(m):
            for b in range(a + 1, m):
                sub[pair_index(m, a, b)] = self.entries[self.index(keep[a], keep[b])]
        return Ultrametric(keep, sub)

    def __repr__(self) -> str:
        vals = ", ".join(format(x, ".6g") for x in self.entries[:6])
        if self.e > 6:
            vals += ", ..."
        return f"Ultrametric(n={self.n}, [{vals}])"


def _square_from_condensed(vec: np.ndarray, n: int) -> np.ndarray:
    D = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    D[iu] = vec
    D.T[iu] = vec
    return D


def _violating_triple(D: np.ndarray, tol: float) -> tuple[int, int, int] | None:
    """First triple (i, j, k) with D[i,j] > max(D[i,k], D[j,k]) + tol, if any."""
    n = D.shape[0]
    for k in range(n):
        limit = np.maximum(D[:, k][:, None], D[None, k, :])
        bad = D > limit + tol
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return int(i), int(j), k
    return None


def is_ultrametric(entries, tol: float = DEFAULT_TOL) -> bool:
    """True iff every leaf triple attains its maximum pairwise distance at
    least twice, within tol."""
    vec = np.asarray(entries, dtype=float)
    if vec.ndim != 1:
        raise ValueError("expected a 1-D condensed distance vector")
    e = vec.size
    n = round((1 + np.sqrt(1 + 8 * e)) / 2)
    if n * (n - 1) // 2 != e:
        raise ValueError(f"length {e} is not a triangular number")
    if n < 3:
        return True
    return _violating_triple(_square_from_condensed(vec, n), tol) is None


def ultrametric_of(tree: RootedTree, tol: float = DEFAULT_TOL) -> Ultrametric:
    """Cophenetic distance vector of an equidistant tree."""
    require_equidistant(tree, tol)
    labels, dists = _trees.pairwise_distances(tree)
    return Ultrametric(labels, dists)


def tree_of(u: Ultrametric, tol: float = DEFAULT_TOL) -> RootedTree:
    """The unique equidistant tree realizing an ultrametric.

    Leaves merge bottom-up at half their pairwise distance; entries equal
    within tol merge simultaneously, producing polytomies.  Raises
    :class:`NotUltrametricError` naming an offending triple when the
    three-point condition fails.
    """
    D = _square_from_condensed(u.entries, u.n)
    bad = _violating_triple(D, tol)
    if bad is not None:
        i, j, k = bad
        names = (u.labels[i], u.labels[j], u.labels[k])
        raise NotUltrametricError(
            f"three-point condition fails on triple {names}: "
            f"d({names[0]},{names[1]})={D[i, j]:.12g} exceeds both "
            f"d({names[0]},{names[2]})={D[i, k]:.12g} and "
            f"d({names[1]},{names[2]})={D[j, k]:.12g}", triple=names)
    return _trees.agglomerate(u.labels, u.entries, tol)


# --------------------------------------------------------------------------
# tree segments
# --------------------------------------------------------------------------

class TreeSegment:
    """A tropical line segment between two equidistant trees, with the tree
    and topology reconstructed at every bend point and on every straight
    piece in between.

    Order convention: everything runs from the second input tree (the v end
    of the underlying coordinate segment) to the first (the u end).
    Positions along the segment interleave bends and pieces:
    ``2*k`` is bend k and ``2*k + 1`` is the open piece between bends
    k and k+1.
    """

    def __init__(self, t1: RootedTree, t2: RootedTree, u: Ultrametric,
                 v: Ultrametric, segment: TropicalSegment, tol: float):
        self.t1 = t1
        self.t2 = t2
        self.u = u
        self.v = v
        self.segment = segment
        self.tol = tol
        labels = u.labels
        self.bend_ultrametrics = [Ultrametric(labels, b) for b in segment.bend_points]
        self.bend_trees = [tree_of(bu, tol) for bu in self.bend_ultrametrics]
        self.bend_topologies = [topology_of(t, tol) for t in self.bend_trees]
        self.piece_trees = [
            tree_of(Ultrametric(labels, segment.piece_midpoint(k)), tol)
            for k in range(len(self.bend_trees) - 1)]
        self.piece_topologies = [topology_of(t, tol) for t in self.piece_trees]

    @property
    def n_bends(self) -> int:
        return len(self.bend_trees)

    def positions(self) -> list[tuple[Topology, RootedTree]]:
        """Topology and a representative tree at every position (bends and
        pieces interleaved, from the t2 end to the t1 end)."""
        out: list[tuple[Topology, RootedTree]] = []
        for k in range(self.n_bends):
            out.append((self.bend_topologies[k], self.bend_trees[k]))
            if k < len(self.piece_topologies):
                out.append((self.piece_topologies[k], self.piece_trees[k]))
        return out

    @property
    def topology_runs(self) -> list[tuple[Topology, int, int]]:
        """Maximal runs of equal topology as (topology, first, last) over
        the interleaved positions."""
        runs: list[tuple[Topology, int, int]] = []
        for pos, (topo, _) in enumerate(self.positions()):
            if runs and runs[-1][0] == topo:
                prev = runs.pop()
                runs.append((prev[0], prev[1], pos))
            else:
                runs.append((topo, pos, pos))
        return runs

    def to_csv(self, precision: int = 10) -> str:
        """One row per bend point: index, the bend's lambda parameter, the
        ultrametric entries, the Newick string, and the topology id."""
        fmt = f".{precision}g"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["index", "lambda"]
        header += [f"d({a},{b})" for a, b in self.u.pairs()]
        header += ["newick", "topology"]
        writer.writerow(header)
        for k, bu in enumerate(self.bend_ultrametrics):
            row = [str(k), format(self.segment.bend_parameters[k], fmt)]
            row += [format(x, fmt) for x in bu.entries]
            row += [write_newick(self.bend_trees[k], precision),
                    self.bend_topologies[k].canonical_str()]
            writer.writerow(row)
        return buf.getvalue()

    def __repr__(self) -> str:
        return (f"TreeSegment(n={self.u.n}, bends={self.n_bends}, "
                f"length={self.segment.length:.6g})")


def tree_segment(t1: RootedTree, t2: RootedTree, tol: float = DEFAULT_TOL) -> TreeSegment:
    """Tropical line segment between two equidistant trees on one leaf set,
    reconstructed tree by tree (ordered from t2 to t1)."""
    if set(t1.leaf_labels) != set(t2.leaf_labels):
        raise LeafSetMismatchError(
            "trees have different leaf sets: "
            f"{sorted(set(t1.leaf_labels) ^ set(t2.leaf_labels))} not shared")
    u = ultrametric_of(t1, tol)
    v = ultrametric_of(t2, tol)
    seg = tropical_segment(u.entries, v.entries, tol)
    return TreeSegment(t1, t2, u, v, seg, tol)


def topology_sequence(seg: TreeSegment) -> list[Topology]:
    """Deduplicated sequence of topologies along the segment, from the t2
    end to the t1 end (bends and straight pieces interleaved)."""
    out: list[Topology] = []
    for topo, _ in seg.positions():
        if not out or out[-1] != topo:
            out.append(topo)
    return out


def _topology_sequence_with_trees(seg: TreeSegment) -> list[tuple[Topology, RootedTree]]:
    out: list[tuple[Topology, RootedTree]] = []
    for topo, tree in seg.positions():
        if not out or out[-1][0] != topo:
            out.append((topo, tree))
    return out


# --------------------------------------------------------------------------
# star trees on segments
# --------------------------------------------------------------------------

def segment_to_star(tree: RootedTree, tol: float = DEFAULT_TOL) -> list[RootedTree]:
    """The trees at the bend points of the segment from `tree` to the star
    tree of the same height, ordered from `tree` to the star.

    With speciation times t_1 < ... < t_k, the i-th tree raises every
    internal node of height below t_i up to t_i (coordinate-wise
    max(d, 2 t_i) on the distance vector); the first tree is the input and
    the last is the star.
    """
    u = ultrametric_of(tree, tol)
    times = speciation_times(tree, tol)
    return [tree_of(Ultrametric(u.labels, np.maximum(u.entries, 2.0 * t)), tol)
            for t in times]


def star_on_segment(t1: RootedTree, t2: RootedTree, tol: float = DEFAULT_TOL) -> bool:
    """True iff the segment between two equal-height trees passes through
    the star tree, i.e. the coordinate-wise maximum of the two ultrametrics
    is a constant vector (the torus origin)."""
    if set(t1.leaf_labels) != set(t2.leaf_labels):
        raise LeafSetMismatchError(
            "trees have different leaf sets: "
            f"{sorted(set(t1.leaf_labels) ^ set(t2.leaf_labels))} not shared")
    u = ultrametric_of(t1, tol)
    v = ultrametric_of(t2, tol)
    if abs(u.height - v.height) > tol:
        raise TropTreeError(
            f"height mismatch: {u.height:.12g} vs {v.height:.12g}")
    m = np.maximum(u.entries, v.entries)
    return float(m.max() - m.min()) <= 2.0 * tol


# --------------------------------------------------------------------------
# structural checkers
# --------------------------------------------------------------------------

def check_clade_preservation(t1: RootedTree, t2: RootedTree,
                             leaves: Iterable[str],
                             tol: float = DEFAULT_TOL) -> bool:
    """Given a leaf set that is a clade of both trees with the same induced
    topology, check that every bend tree of their segment keeps it as a
    clade with that same induced topology.  (This always holds; the checker
    exists to exercise the implementation.)"""
    leaves = sorted_labels(set(leaves))
    if not (_trees.is_clade(t1, leaves, tol) and _trees.is_clade(t2, leaves, tol)):
        raise ValueError(f"{list(leaves)} is not a clade of both trees")
    target = topology_of(_trees.restrict_to_clade(t1, leaves), tol)
    if topology_of(_trees.restrict_to_clade(t2, leaves), tol) != target:
        raise ValueError(
            f"the trees induce different topologies on {list(leaves)}")
    for bend in tree_segment(t1, t2, tol).bend_trees:
        if not _trees.is_clade(bend, leaves, tol):
            return False
        if topology_of(_trees.restrict_to_clade(bend, leaves), tol) != target:
            return False
    return True


def check_nni_theorem(t1: RootedTree, t2: RootedTree,
                      tol: float = DEFAULT_TOL) -> bool:
    """For two trees one NNI move apart (or sharing one topology), check
    that every topology along their segment is the topology of an endpoint
    or a contraction of one (an endpoint topology with some internal edges
    collapsed to length 0)."""
    topo1 = topology_of(t1, tol)
    topo2 = topology_of(t2, tol)
    if topo1 != topo2 and not _trees.one_nni_apart(t1, t2, tol):
        raise ValueError("the trees are not one NNI move apart")
    return all(
        topo == topo1 or topo == topo2
        or topo.is_contraction_of(topo1) or topo.is_contraction_of(topo2)
        for topo in topology_sequence(tree_segment(t1, t2, tol)))


def star_in_hull(t1: RootedTree, t2: RootedTree, tol: float = DEFAULT_TOL) -> bool:
    """Membership route to the same question as :func:`star_on_segment`:
    does the constant vector at the shared height lie in the tropical hull
    of the two ultrametrics?"""
    u = ultrametric_of(t1, tol)
    v = ultrametric_of(t2, tol)
    origin = np.full(u.e, max(u.entries.max(), v.entries.max()))
    return in_tropical_hull([u.entries, v.entries], origin, tol)
