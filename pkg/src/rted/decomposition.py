"""Brute-force enumeration of subforests, for checking the counts in TreeIndex.

Subforests are frozensets of postorder ids. Everything here is exponential
or worse in spirit and meant for trees of a dozen nodes.
"""

from __future__ import annotations

from .index import PathKind, TreeIndex, relevant_subtrees, root_leaf_path


def roots(ix: TreeIndex, forest: frozenset) -> list[int]:
    """Roots of ``forest`` from left to right.

    For nodes that are not ancestors of each other the postorder is the
    left-to-right order, so sorting is enough.
    """
    return sorted(v for v in forest if int(ix.parent[v]) not in forest)


def enumerate_full_decomposition(ix: TreeIndex, v: int) -> set[frozenset]:
    """Every subforest reachable from the subtree at ``v`` by repeatedly
    removing the leftmost or the rightmost root."""
    start = frozenset(ix.subtree(v))
    seen = {start}
    todo = [start]
    while todo:
        forest = todo.pop()
        rs = roots(ix, forest)
        for r in {rs[0], rs[-1]}:
            smaller = forest - {r}
            if smaller and smaller not in seen:
                seen.add(smaller)
                todo.append(smaller)
    return seen


def enumerate_relevant_subforests(ix: TreeIndex, v: int, path) -> list[frozenset]:
    """Subforests of the subtree at ``v`` in removal order along ``path``.

    The leftmost root is removed while it is off the path, otherwise the
    rightmost root.
    """
    on_path = set(path)
    forest = frozenset(ix.subtree(v))
    out = []
    while forest:
        out.append(forest)
        rs = roots(ix, forest)
        victim = rs[-1] if rs[0] in on_path else rs[0]
        forest = forest - {victim}
    return out


def recursive_relevant_subtrees(ix: TreeIndex, v: int, kind: PathKind) -> list[int]:
    """Roots of all relevant subtrees of the recursive ``kind`` path
    decomposition of the subtree at ``v`` (``v`` itself included)."""
    out = []
    todo = [v]
    while todo:
        x = todo.pop()
        out.append(x)
        todo.extend(relevant_subtrees(ix, x, root_leaf_path(ix, x, kind)))
    return sorted(out)


def enumerate_recursive_subforests(ix: TreeIndex, v: int, kind: PathKind) -> list[frozenset]:
    """All relevant subforests of the recursive ``kind`` path decomposition."""
    out = []
    for x in recursive_relevant_subtrees(ix, v, kind):
        out.extend(enumerate_relevant_subforests(ix, x, root_leaf_path(ix, x, kind)))
    return out


def all_root_leaf_paths(ix: TreeIndex, v: int) -> list[list[int]]:
    paths = []
    todo = [[v]]
    while todo:
        p = todo.pop()
        kids = ix.children(p[-1])
        if len(kids) == 0:
            paths.append(p)
        else:
            todo.extend(p + [int(c)] for c in kids)
    return paths
