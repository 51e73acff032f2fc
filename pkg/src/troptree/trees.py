"""Equidistant-tree semantics: validation, topologies, clades, speciation
times, and rooted NNI moves.

Heights here are measured upward from the leaves (a leaf has height 0); the
pairwise distance between two leaves of an equidistant tree is twice the
height of their most recent common ancestor.
"""

from __future__ import annotations

import statistics
from typing import Iterable, Sequence

import numpy as np

from .errors import LeafSetMismatchError, NotEquidistantError
from .newick import RootedTree, TreeNode
from .util import DEFAULT_TOL, label_pairs, natural_key, pair_index, sorted_labels, tol_groups


# --------------------------------------------------------------------------
# basic measurements
# --------------------------------------------------------------------------

def is_equidistant(tree: RootedTree, tol: float = DEFAULT_TOL) -> bool:
    """True iff all root-to-leaf path lengths agree within tol."""
    depths = list(tree.leaf_depths().values())
    return max(depths) - min(depths) <= tol


def require_equidistant(tree: RootedTree, tol: float = DEFAULT_TOL) -> None:
    """Raise :class:`NotEquidistantError` naming a deviant leaf."""
    depths = tree.leaf_depths()
    if len(depths) < 2:
        return
    ref = statistics.median(depths.values())
    worst = max(depths, key=lambda lab: abs(depths[lab] - ref))
    if abs(depths[worst] - ref) > tol:
        raise NotEquidistantError(
            f"tree is not equidistant: leaf {worst!r} has depth "
            f"{depths[worst]:.12g}, expected {ref:.12g}", leaf=worst)


def subtree_heights(tree: RootedTree) -> dict[int, float]:
    """Height of every node, keyed by id(node).  Computed downward (largest
    distance to a descendant leaf), so it needs no equidistance assumption."""
    heights: dict[int, float] = {}

    def visit(node: TreeNode) -> float:
        h = 0.0 if node.is_leaf() else max(
            visit(c) + c.length for c in node.children)
        heights[id(node)] = h
        return h

    visit(tree.root)
    return heights


def pairwise_distances(tree: RootedTree) -> tuple[tuple[str, ...], np.ndarray]:
    """Cophenetic path distances between all leaf pairs.

    Returns the natural-sorted labels and the condensed vector in
    lexicographic pair order over those labels.
    """
    labels = tree.leaf_labels
    n = len(labels)
    pos = {lab: k for k, lab in enumerate(labels)}
    out = np.zeros(n * (n - 1) // 2)

    def visit(node: TreeNode) -> dict[str, float]:
        if node.is_leaf():
            return {node.label: 0.0}
        maps = []
        for child in node.children:
            m = visit(child)
            maps.append({lab: d + child.length for lab, d in m.items()})
        merged: dict[str, float] = {}
        for k, m in enumerate(maps):
            for other in maps[k + 1:]:
                for la, da in m.items():
                    for lb, db in other.items():
                        i, j = pos[la], pos[lb]
                        if i > j:
                            i, j = j, i
                        out[pair_index(n, i, j)] = da + db
            merged.update(m)
        return merged

    visit(tree.root)
    return labels, out


def clade_leafsets(tree: RootedTree) -> dict[int, frozenset[str]]:
    """Descendant leaf set of every node, keyed by id(node)."""
    sets: dict[int, frozenset[str]] = {}

    def visit(node: TreeNode) -> frozenset[str]:
        if node.is_leaf():
            s = frozenset([node.label])
        else:
            s = frozenset().union(*(visit(c) for c in node.children))
        sets[id(node)] = s
        return s

    visit(tree.root)
    return sets


# --------------------------------------------------------------------------
# topologies
# --------------------------------------------------------------------------

class Topology:
    """Canonical rooted tree shape: a laminar family of clades over a fixed
    leaf set.  The full leaf set is always a clade; singletons never are.
    Branch lengths are discarded, so tied node heights appear as polytomies
    (missing clades)."""

    __slots__ = ("leaves", "clades", "_key")

    def __init__(self, leaves: Iterable[str], clades: Iterable[frozenset[str]]):
        self.leaves = frozenset(leaves)
        cl = set(frozenset(c) for c in clades)
        cl.add(frozenset(self.leaves))
        for c in cl:
            if len(c) < 2 or not c <= self.leaves:
                raise ValueError(f"bad clade {sorted(c)}")
        ordered = sorted(cl, key=len)
        for a_i, a in enumerate(ordered):
            for b in ordered[a_i + 1:]:
                if a & b and not a <= b:
                    raise ValueError(
                        f"clades {sorted(a)} and {sorted(b)} are not laminar")
        self.clades = frozenset(cl)
        self._key = tuple(sorted(
            (tuple(sorted(c, key=natural_key)) for c in cl),
            key=lambda t: (len(t), tuple(natural_key(x) for x in t))))

    @property
    def is_binary(self) -> bool:
        # a laminar family with the full set and n-1 members forces 2 children
        # at every internal node
        return len(self.clades) == len(self.leaves) - 1

    @property
    def is_star(self) -> bool:
        return len(self.clades) == 1

    def is_contraction_of(self, other: "Topology") -> bool:
        """True iff self arises from `other` by collapsing internal edges
        (its clade family is a sub-family of other's)."""
        return self.leaves == other.leaves and self.clades <= other.clades

    def canonical_str(self) -> str:
        return "|".join("{" + ",".join(c) + "}" for c in self._key)

    def __eq__(self, other) -> bool:
        return isinstance(other, Topology) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Topology({self.canonical_str()})"


def topology_of(tree: RootedTree, tol: float = DEFAULT_TOL) -> Topology:
    """Clade set of an equidistant tree after collapsing every internal edge
    of length <= tol into its parent."""
    require_equidistant(tree, tol)
    sets = clade_leafsets(tree)
    clades = [sets[id(node)] for node in tree.nodes()
              if not node.is_leaf() and (node is tree.root or node.length > tol)]
    return Topology(tree.leaf_labels, clades)


def speciation_times(tree: RootedTree, tol: float = DEFAULT_TOL) -> tuple[float, ...]:
    """Sorted distinct internal-node heights; values within tol are merged
    (each merged group is represented by its largest member, so the last
    entry is exactly the tree height)."""
    require_equidistant(tree, tol)
    heights = subtree_heights(tree)
    internal = sorted(heights[id(node)] for node in tree.nodes() if not node.is_leaf())
    return tuple(internal[stop - 1] for _, stop in tol_groups(internal, tol))


# --------------------------------------------------------------------------
# building trees from distances or clade maps
# --------------------------------------------------------------------------

class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
        return ra


def agglomerate(labels: Sequence[str], dists: np.ndarray,
                tol: float = DEFAULT_TOL) -> RootedTree:
    """Build the equidistant tree whose cophenetic distances are `dists`
    (condensed order over `labels`, which must be natural-sorted).

    Pairs merge bottom-up at half their distance; distance values within tol
    of each other merge simultaneously, producing polytomies.  The input is
    assumed to satisfy the three-point condition; validation belongs to the
    callers.
    """
    n = len(labels)
    dists = np.asarray(dists, dtype=float)
    if dists.shape != (n * (n - 1) // 2,):
        raise ValueError("distance vector length does not match the labels")
    if n == 1:
        return RootedTree(TreeNode(label=labels[0]))

    pairs = label_pairs(labels)
    order = np.argsort(dists, kind="stable")
    svals = dists[order]

    uf = _UnionFind(n)
    pos = {lab: k for k, lab in enumerate(labels)}
    comp_node: dict[int, TreeNode] = {k: TreeNode(label=lab) for k, lab in enumerate(labels)}
    comp_height: dict[int, float] = {k: 0.0 for k in range(n)}

    for start, stop in tol_groups(svals, tol):
        height = float(svals[stop - 1]) / 2.0
        merged_into: dict[int, list[int]] = {}
        for k in order[start:stop]:
            a, b = pairs[int(k)]
            ra, rb = uf.find(pos[a]), uf.find(pos[b])
            if ra == rb:
                continue
            new = uf.union(ra, rb)
            old = rb if new == ra else ra
            group = merged_into.setdefault(new, [new])
            if old in merged_into:
                group.extend(merged_into.pop(old))
            else:
                group.append(old)
        for new_root, members in merged_into.items():
            children = [comp_node[m] for m in members]
            for m, child in zip(members, children):
                child.length = max(height - comp_height[m], 0.0)
            node = TreeNode(children=children)
            for m in members:
                comp_node.pop(m, None)
                comp_height.pop(m, None)
            comp_node[new_root] = node
            comp_height[new_root] = height

    roots = [uf.find(k) for k in range(n)]
    if len(set(roots)) != 1:
        raise ValueError("distances do not define a single tree")
    return RootedTree(comp_node[roots[0]])


def tree_from_clade_heights(leaves: Iterable[str],
                            clade_heights: dict[frozenset[str], float]) -> RootedTree:
    """Build an equidistant tree from a laminar clade -> height map that
    includes the full leaf set."""
    leaves = sorted_labels(leaves)
    full = frozenset(leaves)
    if full not in clade_heights:
        raise ValueError("the clade map must contain the full leaf set")
    tops: dict[str, TreeNode] = {lab: TreeNode(label=lab) for lab in leaves}
    top_height: dict[int, float] = {id(node): 0.0 for node in tops.values()}

    for clade in sorted(clade_heights, key=len):
        height = clade_heights[clade]
        children: list[TreeNode] = []
        seen: set[int] = set()
        for lab in sorted(clade, key=natural_key):
            node = tops[lab]
            if id(node) not in seen:
                seen.add(id(node))
                children.append(node)
        if len(children) < 2:
            raise ValueError(f"clade {sorted(clade)} has fewer than 2 branches")
        for child in children:
            child.length = max(height - top_height[id(child)], 0.0)
        node = TreeNode(children=children)
        top_height[id(node)] = height
        for lab in clade:
            tops[lab] = node
    return RootedTree(tops[leaves[0]])


def internal_clade_heights(tree: RootedTree) -> dict[frozenset[str], float]:
    """Clade -> height map over the internal nodes (root included)."""
    heights = subtree_heights(tree)
    sets = clade_leafsets(tree)
    return {sets[id(node)]: heights[id(node)]
            for node in tree.nodes() if not node.is_leaf()}


# --------------------------------------------------------------------------
# clades and restriction
# --------------------------------------------------------------------------

def restrict_to_clade(tree: RootedTree, leaves: Iterable[str]) -> RootedTree:
    """The equidistant tree induced on a subset of leaves: the pairwise
    distances are restricted and the tree rebuilt from them."""
    keep = sorted_labels(set(leaves))
    if not keep:
        raise ValueError("cannot restrict to an empty leaf set")
    full = set(tree.leaf_labels)
    unknown = [lab for lab in keep if lab not in full]
    if unknown:
        raise ValueError(f"unknown leaf label(s): {unknown}")
    if len(keep) == 1:
        return RootedTree(TreeNode(label=keep[0]))

    labels, dists = pairwise_distances(tree)
    n = len(labels)
    pos = {lab: k for k, lab in enumerate(labels)}
    m = len(keep)
    sub = np.empty(m * (m - 1) // 2)
    for a in range(m):
        for b in range(a + 1, m):
            i, j = pos[keep[a]], pos[keep[b]]
            if i > j:
                i, j = j, i
            sub[pair_index(m, a, b)] = dists[pair_index(n, i, j)]
    return agglomerate(keep, sub)


def is_clade(tree: RootedTree, leaves: Iterable[str], tol: float = DEFAULT_TOL) -> bool:
    """True iff every within-set distance is smaller than every distance to
    an outside leaf (with a tol margin): the pairwise-distance criterion for
    the set being the descendant leaves of one internal node."""
    keep = set(leaves)
    full = set(tree.leaf_labels)
    if not keep <= full:
        raise ValueError(f"unknown leaf label(s): {sorted(keep - full)}")
    if len(keep) <= 1 or keep == full:
        return True
    labels, dists = pairwise_distances(tree)
    n = len(labels)
    pos = {lab: k for k, lab in enumerate(labels)}
    inside = sorted(pos[lab] for lab in keep)
    outside = sorted(pos[lab] for lab in full - keep)
    max_in = max(dists[pair_index(n, a, b)]
                 for ai, a in enumerate(inside) for b in inside[ai + 1:])
    min_ext = min(dists[pair_index(n, min(a, b), max(a, b))]
                  for a in inside for b in outside)
    return min_ext - max_in > tol


# --------------------------------------------------------------------------
# NNI moves
# --------------------------------------------------------------------------

def nni_neighbors(tree: RootedTree) -> list[RootedTree]:
    """All trees one rooted NNI move away from a binary equidistant tree.

    For every internal edge there are two moves, each exchanging the clade
    on the far side of the edge with one of the two clades below it; the
    node where the exchange happens keeps its height.  If the regrafted
    subtree does not fit strictly below its new parent, its internal heights
    are rescaled into the lower half of the available span (the move is then
    metrically refitted but topologically exact).
    """
    for node in tree.nodes():
        if not node.is_leaf() and len(node.children) != 2:
            raise ValueError("NNI moves are defined on binary trees only")

    heights = internal_clade_heights(tree)
    sets = clade_leafsets(tree)
    children_of: dict[frozenset[str], list[frozenset[str]]] = {
        sets[id(node)]: [sets[id(c)] for c in node.children]
        for node in tree.nodes() if not node.is_leaf()}
    full = frozenset(tree.leaf_labels)

    parent_of: dict[frozenset[str], frozenset[str]] = {}
    for clade, kids in children_of.items():
        for kid in kids:
            parent_of[kid] = clade

    neighbors: list[RootedTree] = []
    for clade, h_v in heights.items():
        if clade == full:
            continue
        parent = parent_of[clade]
        (sibling,) = [c for c in children_of[parent] if c != clade]
        for moved_out in children_of[clade]:
            kept = next(c for c in children_of[clade] if c != moved_out)
            new_clade = kept | sibling
            new_map = dict(heights)
            del new_map[clade]
            # the regrafted sibling subtree must sit strictly below h_v
            sib_h = new_map.get(sibling, 0.0)
            if sib_h >= h_v - 2 * DEFAULT_TOL:
                scale = (0.5 * h_v) / sib_h
                for other in list(new_map):
                    if other <= sibling:
                        new_map[other] *= scale
            new_map[new_clade] = h_v
            neighbors.append(tree_from_clade_heights(full, new_map))
    return neighbors


def one_nni_apart(a: RootedTree, b: RootedTree, tol: float = DEFAULT_TOL) -> bool:
    """True iff the topology of `b` is exactly one rooted NNI move from the
    topology of `a` (identical topologies give False)."""
    if set(a.leaf_labels) != set(b.leaf_labels):
        raise LeafSetMismatchError(
            "trees have different leaf sets: "
            f"{sorted(set(a.leaf_labels) ^ set(b.leaf_labels))} not shared")
    topo_b = topology_of(b, tol)
    return any(topology_of(x, tol) == topo_b for x in nni_neighbors(a))
