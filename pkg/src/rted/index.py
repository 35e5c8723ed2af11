"""Postorder array form of a tree with the decomposition counts.

Node ids are postorder positions, 0-based: the root of an ``n``-node tree is
``n - 1`` and the subtree of ``v`` is the contiguous id range
``[v - size[v] + 1, v]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .tree import Tree


class PathKind(enum.IntEnum):
    HEAVY = 0
    LEFT = 1
    RIGHT = 2


@dataclass(frozen=True, eq=False)
class TreeIndex:
    """Immutable per-node arrays of one tree, indexed by postorder id.

    ``full_count[v]`` is the number of subforests in the full decomposition
    of the subtree at ``v``; ``left_count[v]``/``right_count[v]`` count the
    relevant subforests of its recursive left/right path decomposition.
    ``keyroot_left[v]`` is true when ``v`` roots a relevant subtree of the left
    path partitioning (it is not a leftmost child), symmetric for the right.
    """

    labels: tuple
    parent: np.ndarray
    child_ptr: np.ndarray
    child_idx: np.ndarray
    first_child: np.ndarray
    last_child: np.ndarray
    heavy_child: np.ndarray
    size: np.ndarray
    leaves: np.ndarray
    depth: np.ndarray
    desc_size_sum: np.ndarray
    full_count: np.ndarray
    left_count: np.ndarray
    right_count: np.ndarray
    keyroot_left: np.ndarray
    keyroot_right: np.ndarray
    pre: np.ndarray          # node -> preorder position
    preorder: np.ndarray     # preorder position -> node
    mirror_rank: np.ndarray  # node -> postorder position in the mirrored tree
    mirror_order: np.ndarray

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def root(self) -> int:
        return self.n - 1

    def children(self, v: int) -> np.ndarray:
        return self.child_idx[self.child_ptr[v]:self.child_ptr[v + 1]]

    def is_leaf(self, v: int) -> bool:
        return self.first_child[v] < 0

    def subtree(self, v: int) -> range:
        return range(v - int(self.size[v]) + 1, v + 1)

    def to_tree(self, v: int | None = None) -> Tree:
        v = self.root if v is None else v
        nodes = {}
        for x in self.subtree(v):
            nodes[x] = Tree(self.labels[x], [nodes[c] for c in self.children(x)])
        return nodes[v]


def build_index(t: Tree) -> TreeIndex:
    """Index ``t`` in a single postorder pass (plus one preorder pass)."""
    labels = []
    kids: list[list[int]] = []
    ids = {}
    for node in t.postorder():
        ids[id(node)] = len(labels)
        labels.append(node.label)
        kids.append([ids[id(c)] for c in node.children])
    n = len(labels)

    parent = np.full(n, -1, dtype=np.int64)
    child_ptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        child_ptr[v + 1] = child_ptr[v] + len(kids[v])
        for c in kids[v]:
            parent[c] = v
    child_idx = np.fromiter((c for ks in kids for c in ks), dtype=np.int64, count=int(child_ptr[n]))

    first_child = np.full(n, -1, dtype=np.int64)
    last_child = np.full(n, -1, dtype=np.int64)
    heavy_child = np.full(n, -1, dtype=np.int64)
    size = np.ones(n, dtype=np.int64)
    leaves = np.ones(n, dtype=np.int64)
    left_count = np.ones(n, dtype=np.int64)
    right_count = np.ones(n, dtype=np.int64)
    for v in range(n):
        ks = kids[v]
        if not ks:
            continue
        first_child[v], last_child[v] = ks[0], ks[-1]
        best = ks[0]
        for c in ks:
            if size[c] > size[best]:  # strict: ties keep the leftmost child
                best = c
        heavy_child[v] = best
        size[v] = 1 + sum(int(size[c]) for c in ks)
        leaves[v] = sum(int(leaves[c]) for c in ks)
        left_count[v] = size[v] + sum(int(left_count[c]) for c in ks) - size[ks[0]]
        right_count[v] = size[v] + sum(int(right_count[c]) for c in ks) - size[ks[-1]]

    # descendants of v are the contiguous range [v - size + 1, v]
    prefix = np.concatenate(([0], np.cumsum(size)))
    desc_size_sum = prefix[np.arange(1, n + 1)] - prefix[np.arange(n) - size + 1]
    full_count = size * (size + 3) // 2 - desc_size_sum

    pre = np.empty(n, dtype=np.int64)
    preorder = np.empty(n, dtype=np.int64)
    depth = np.zeros(n, dtype=np.int64)
    mirror_rank = np.empty(n, dtype=np.int64)
    pos = 0
    stack = [n - 1]
    while stack:
        v = stack.pop()
        pre[v] = pos
        preorder[pos] = v
        pos += 1
        for c in reversed(kids[v]):
            depth[c] = depth[v] + 1
            stack.append(c)
    # postorder of the mirrored tree is the reversed preorder of this one
    mirror_rank = (n - 1) - pre
    mirror_order = preorder[::-1].copy()

    keyroot_left = np.ones(n, dtype=np.bool_)
    keyroot_right = np.ones(n, dtype=np.bool_)
    has_parent = parent >= 0
    keyroot_left[has_parent] = first_child[parent[has_parent]] != np.arange(n)[has_parent]
    keyroot_right[has_parent] = last_child[parent[has_parent]] != np.arange(n)[has_parent]

    return TreeIndex(
        labels=tuple(labels), parent=parent, child_ptr=child_ptr, child_idx=child_idx,
        first_child=first_child, last_child=last_child, heavy_child=heavy_child,
        size=size, leaves=leaves, depth=depth, desc_size_sum=desc_size_sum,
        full_count=full_count, left_count=left_count, right_count=right_count,
        keyroot_left=keyroot_left, keyroot_right=keyroot_right, pre=pre,
        preorder=preorder, mirror_rank=mirror_rank, mirror_order=mirror_order,
    )


def _next_on_path(ix: TreeIndex, v: int, kind: PathKind) -> int:
    if kind == PathKind.LEFT:
        return int(ix.first_child[v])
    if kind == PathKind.RIGHT:
        return int(ix.last_child[v])
    return int(ix.heavy_child[v])


def root_leaf_path(ix: TreeIndex, v: int, kind: PathKind) -> list[int]:
    """Nodes from ``v`` down to a leaf, following ``kind``'s child choice."""
    path = [v]
    while (v := _next_on_path(ix, v, kind)) >= 0:
        path.append(v)
    return path


def relevant_subtrees(ix: TreeIndex, v: int, path) -> list[int]:
    """Roots of the subtrees hanging off ``path`` inside the subtree of ``v``.

    The result is sorted by postorder id.
    """
    on_path = set(path)
    out = [int(c) for x in path for c in ix.children(x) if int(c) not in on_path]
    return sorted(out)
