"""Reference implementations used only by the tests.

They share no code with the package beyond the ``Tree`` type and the
subforest enumerations, so agreement is a real cross-check.
"""

from __future__ import annotations

import random

from rted.decomposition import enumerate_full_decomposition, enumerate_recursive_subforests
from rted.index import PathKind, relevant_subtrees, root_leaf_path
from rted.shapes import random_tree, relabel
from rted.tree import Tree


def zs_distance(a: Tree, b: Tree, delete=lambda x: 1.0, insert=lambda x: 1.0,
                rename=lambda x, y: 0.0 if x == y else 1.0) -> float:
    """Textbook keyroot algorithm on plain nested trees (unit costs by default)."""

    def flatten(t):
        labels, lld = [], []
        for node in t.postorder():
            labels.append(node.label)
        # leftmost leaf descendant, by walking postorder once more with ids
        ids = {}
        for i, node in enumerate(t.postorder()):
            ids[id(node)] = i
        for node in t.postorder():
            x = node
            while x.children:
                x = x.children[0]
            lld.append(ids[id(x)])
        keyroots = sorted({max(i for i in range(len(lld)) if lld[i] == l) for l in set(lld)})
        return labels, lld, keyroots

    la, lda, ka = flatten(a)
    lb, ldb, kb = flatten(b)
    td = [[0.0] * len(lb) for _ in la]
    for i in ka:
        for j in kb:
            i0, j0 = lda[i], ldb[j]
            m, n = i - i0 + 2, j - j0 + 2
            fd = [[0.0] * n for _ in range(m)]
            for x in range(1, m):
                fd[x][0] = fd[x - 1][0] + delete(la[i0 + x - 1])
            for y in range(1, n):
                fd[0][y] = fd[0][y - 1] + insert(lb[j0 + y - 1])
            for x in range(1, m):
                for y in range(1, n):
                    p, q = i0 + x - 1, j0 + y - 1
                    if lda[p] == i0 and ldb[q] == j0:
                        fd[x][y] = min(fd[x - 1][y] + delete(la[p]), fd[x][y - 1] + insert(lb[q]),
                                       fd[x - 1][y - 1] + rename(la[p], lb[q]))
                        td[p][q] = fd[x][y]
                    else:
                        fd[x][y] = min(fd[x - 1][y] + delete(la[p]), fd[x][y - 1] + insert(lb[q]),
                                       fd[lda[p] - i0][ldb[q] - j0] + td[p][q])
    return td[-1][-1]


def enumerated_strategy_cost(F, G, S) -> int:
    """Cost of strategy ``S`` with every single-path term counted by enumeration.

    The count for a path in F_v is |F_v| times the number of subforests of G_w
    in the full (heavy) or recursive left/right decomposition; symmetric for G.
    """
    cache = {}

    def forests(ix, tag, x, kind):
        key = (tag, x, kind)
        if key not in cache:
            if kind == PathKind.HEAVY:
                cache[key] = len(enumerate_full_decomposition(ix, x))
            else:
                cache[key] = len(enumerate_recursive_subforests(ix, x, kind))
        return cache[key]

    total = 0
    todo = [(F.root, G.root)]
    while todo:
        v, w = todo.pop()
        ch = S[v, w]
        if ch.side == 0:
            total += int(F.size[v]) * forests(G, "G", w, ch.kind)
            todo.extend((c, w) for c in relevant_subtrees(F, v, root_leaf_path(F, v, ch.kind)))
        else:
            total += int(G.size[w]) * forests(F, "F", v, ch.kind)
            todo.extend((v, c) for c in relevant_subtrees(G, w, root_leaf_path(G, w, ch.kind)))
    return total


def random_labeled(rng: random.Random, max_n: int, alphabet: str = "abc", min_n: int = 1) -> Tree:
    n = rng.randint(min_n, max_n)
    seed = rng.getrandbits(63)
    fanout = rng.randint(2, 5)
    return relabel(random_tree(n, seed, max_fanout=fanout), alphabet, seed)
