"""Path strategies: which root-leaf path decomposes each pair of subtrees.

A strategy is stored as an ``|F| x |G|`` int8 array of codes
``2 * kind + side`` (kind: :class:`PathKind`, side: :class:`Side`). The code
order 0..5 is heavy-F, heavy-G, left-F, left-G, right-F, right-G, which is
also the order in which ties between equally cheap candidates are broken.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass

import numpy as np

from ._kernels import opt_strategy_kernel, strategy_cost_kernel, tree_arrays
from .index import PathKind, TreeIndex, relevant_subtrees, root_leaf_path


class Side(enum.IntEnum):
    LEFT_TREE = 0
    RIGHT_TREE = 1


_SIDE_NAMES = {Side.LEFT_TREE: "LeftTree", Side.RIGHT_TREE: "RightTree"}
_KIND_NAMES = {PathKind.LEFT: "Left", PathKind.RIGHT: "Right", PathKind.HEAVY: "Heavy"}


@dataclass(frozen=True)
class PathChoice:
    side: Side
    kind: PathKind

    @property
    def code(self) -> int:
        return 2 * int(self.kind) + int(self.side)

    @classmethod
    def from_code(cls, code: int) -> PathChoice:
        return cls(Side(int(code) & 1), PathKind(int(code) >> 1))

    def __str__(self):
        return f"{_SIDE_NAMES[self.side]}/{_KIND_NAMES[self.kind]}"


class StrategyMatrix:
    """Per subtree pair path choice, indexed by 0-based postorder ids."""

    def __init__(self, codes: np.ndarray):
        codes = np.ascontiguousarray(codes, dtype=np.int8)
        if codes.ndim != 2 or codes.size == 0:
            raise ValueError("strategy matrix must be a nonempty 2-d array")
        if codes.min() < 0 or codes.max() > 5:
            raise ValueError("strategy codes must lie in 0..5")
        self.codes = codes

    @property
    def shape(self):
        return self.codes.shape

    def __getitem__(self, vw) -> PathChoice:
        return PathChoice.from_code(self.codes[vw])

    def __eq__(self, other):
        return isinstance(other, StrategyMatrix) and np.array_equal(self.codes, other.codes)

    def path(self, F: TreeIndex, G: TreeIndex, v: int, w: int) -> list[int]:
        """The concrete root-leaf path chosen for ``(F_v, G_w)``."""
        ch = self[v, w]
        ix, x = (F, v) if ch.side == Side.LEFT_TREE else (G, w)
        return root_leaf_path(ix, x, ch.kind)

    def transposed(self) -> StrategyMatrix:
        """The same strategy seen from ``(G, F)``: sides swap."""
        return StrategyMatrix(self.codes.T ^ 1)

    def to_csv(self, out=None) -> str | None:
        """Write ``v,w,side,kind`` rows with 1-based postorder ids.

        Returns the text when ``out`` is None, otherwise writes to ``out``.
        """
        lines = ["v,w,side,kind"]
        nf, ng = self.codes.shape
        side = ["LeftTree", "RightTree"]
        kind = ["Heavy", "Left", "Right"]
        for v in range(nf):
            row = self.codes[v]
            lines.extend(f"{v + 1},{w + 1},{side[c & 1]},{kind[c >> 1]}" for w, c in enumerate(row.tolist()))
        text = "\n".join(lines) + "\n"
        if out is None:
            return text
        out.write(text)
        return None


@dataclass(frozen=True)
class StrategyResult:
    matrix: StrategyMatrix
    cost: int
    root_candidates: tuple = ()  # the six candidate costs at the root pair

    def __iter__(self):
        return iter((self.matrix, self.cost))


class FixedStrategy(str, enum.Enum):
    ZHANG_L = "zhang-l"
    ZHANG_R = "zhang-r"
    KLEIN_H = "klein-h"
    DEMAINE_H = "demaine-h"


def opt_strategy(F: TreeIndex, G: TreeIndex) -> StrategyResult:
    """Cheapest LRH strategy and its number of relevant subproblems.

    Quadratic time; memory is the strategy array plus cost rows for the
    nodes on one root-to-node path of ``F``.
    """
    codes, cost, cand = opt_strategy_kernel(tree_arrays(F), tree_arrays(G))
    return StrategyResult(StrategyMatrix(codes), int(cost), tuple(int(c) for c in cand))


def fixed_strategy(kind: FixedStrategy | str, F: TreeIndex, G: TreeIndex) -> StrategyMatrix:
    kind = FixedStrategy(kind)
    shape = (F.n, G.n)
    if kind == FixedStrategy.ZHANG_L:
        return StrategyMatrix(np.full(shape, PathChoice(Side.LEFT_TREE, PathKind.LEFT).code, np.int8))
    if kind == FixedStrategy.ZHANG_R:
        return StrategyMatrix(np.full(shape, PathChoice(Side.LEFT_TREE, PathKind.RIGHT).code, np.int8))
    if kind == FixedStrategy.KLEIN_H:
        return StrategyMatrix(np.full(shape, PathChoice(Side.LEFT_TREE, PathKind.HEAVY).code, np.int8))
    # larger subtree is decomposed; ties go to F
    g_bigger = F.size[:, None] < G.size[None, :]
    return StrategyMatrix(g_bigger.astype(np.int8))


def strategy_cost(F: TreeIndex, G: TreeIndex, S: StrategyMatrix) -> int:
    """Number of relevant subproblems computed when executing ``S``."""
    if S.shape != (F.n, G.n):
        raise ValueError(f"strategy shape {S.shape} does not match trees ({F.n}, {G.n})")
    return int(strategy_cost_kernel(tree_arrays(F), tree_arrays(G), S.codes))


# --------------------------------------------------------------------------
# oracles


def _single_path_term(F: TreeIndex, G: TreeIndex, v: int, w: int, code: int) -> int:
    kind = PathKind(code >> 1)
    counts = {PathKind.HEAVY: "full_count", PathKind.LEFT: "left_count", PathKind.RIGHT: "right_count"}[kind]
    if code & 1 == 0:
        return int(F.size[v]) * int(getattr(G, counts)[w])
    return int(G.size[w]) * int(getattr(F, counts)[v])


@dataclass(frozen=True)
class BaselineResult:
    matrix: StrategyMatrix
    cost: int
    summed_terms: int  # relevant-subtree costs added up over all candidates

    def __iter__(self):
        return iter((self.matrix, self.cost))


def baseline_strategy(F: TreeIndex, G: TreeIndex) -> BaselineResult:
    """Top-down memoized evaluation of the cost formula.

    For every reachable pair all six candidates are scored by explicitly
    summing the costs of the relevant subtrees, which makes this cubic.
    ``summed_terms`` reports how many such terms were added.
    """
    memo = np.full((F.n, G.n), -1, dtype=np.int64)
    codes = np.zeros((F.n, G.n), dtype=np.int8)
    # relevant subtrees per (tree, node, kind), computed lazily
    rel = {}

    def relevant(ix, tag, x, kind):
        key = (tag, x, kind)
        if key not in rel:
            rel[key] = relevant_subtrees(ix, x, root_leaf_path(ix, x, kind))
        return rel[key]

    summed = 0
    stack = [(F.root, G.root, False)]
    while stack:
        v, w, expanded = stack.pop()
        if memo[v, w] >= 0:
            continue
        if not expanded:
            stack.append((v, w, True))
            for kind in PathKind:
                stack.extend((c, w, False) for c in relevant(F, 0, v, kind) if memo[c, w] < 0)
                stack.extend((v, c, False) for c in relevant(G, 1, w, kind) if memo[v, c] < 0)
            continue
        best = best_code = None
        for code in range(6):
            kind = PathKind(code >> 1)
            if code & 1 == 0:
                subs = relevant(F, 0, v, kind)
                rest = sum(int(memo[c, w]) for c in subs)
            else:
                subs = relevant(G, 1, w, kind)
                rest = sum(int(memo[v, c]) for c in subs)
            summed += len(subs)
            total = _single_path_term(F, G, v, w, code) + rest
            if best is None or total < best:
                best, best_code = total, code
        memo[v, w] = best
        codes[v, w] = best_code
    # pairs never reached from the root keep the heavy-F default
    return BaselineResult(StrategyMatrix(codes), int(memo[F.root, G.root]), summed)


class OracleSizeError(ValueError):
    """An oracle was asked for an input beyond the size it is meant for."""


EXHAUSTIVE_LIMIT = 64
ENUMERATING_LIMIT = 20


def _subtree_forests(ix: TreeIndex, v: int, kind: PathKind):
    from .decomposition import enumerate_recursive_subforests

    return enumerate_recursive_subforests(ix, v, kind)


def _enumerated_counts(ix: TreeIndex):
    """full/left/right counts of every subtree, by explicit enumeration."""
    from .decomposition import enumerate_full_decomposition

    full = [len(enumerate_full_decomposition(ix, v)) for v in range(ix.n)]
    left = [len(_subtree_forests(ix, v, PathKind.LEFT)) for v in range(ix.n)]
    right = [len(_subtree_forests(ix, v, PathKind.RIGHT)) for v in range(ix.n)]
    return {PathKind.HEAVY: full, PathKind.LEFT: left, PathKind.RIGHT: right}


def exhaustive_optimal_cost(F: TreeIndex, G: TreeIndex, enumerate_strategies: bool = False) -> int:
    """Cost of the best LRH strategy, for tiny inputs.

    The six choices are tried at every subtree pair by plain recursion; the
    single-path terms come from enumerating subforests rather than from the
    closed-form counts. With ``enumerate_strategies`` every consistent
    assignment of choices to reachable pairs is instead scored separately
    (``|F| * |G| <= 20``).
    """
    limit = ENUMERATING_LIMIT if enumerate_strategies else EXHAUSTIVE_LIMIT
    if F.n * G.n > limit:
        raise OracleSizeError(f"|F|*|G| = {F.n * G.n} exceeds the oracle limit {limit}")
    cF, cG = _enumerated_counts(F), _enumerated_counts(G)
    relF = {(v, k): relevant_subtrees(F, v, root_leaf_path(F, v, k)) for v in range(F.n) for k in PathKind}
    relG = {(w, k): relevant_subtrees(G, w, root_leaf_path(G, w, k)) for w in range(G.n) for k in PathKind}

    def options(v, w):
        # (single-path term, sub-pairs) for each of the six choices
        out = []
        for k in PathKind:
            out.append((int(F.size[v]) * cG[k][w], [(c, w) for c in relF[v, k]]))
            out.append((int(G.size[w]) * cF[k][v], [(v, c) for c in relG[w, k]]))
        return out

    if not enumerate_strategies:
        limit_depth = sys.getrecursionlimit()
        memo = {}

        def best(v, w, depth=0):
            if depth > limit_depth // 2:
                raise OracleSizeError("recursion too deep for the exhaustive oracle")
            if (v, w) not in memo:
                memo[v, w] = min(term + sum(best(a, b, depth + 1) for a, b in subs) for term, subs in options(v, w))
            return memo[v, w]

        return best(F.root, G.root)

    # Depth-first over partial strategies: a frontier of pairs still needing a
    # choice, and the accumulated cost. Each completed assignment is a full
    # strategy restricted to the pairs it reaches.
    best_cost = None
    stack = [({}, 0, ((F.root, G.root),))]
    while stack:
        chosen, acc, frontier = stack.pop()
        frontier = list(frontier)
        pair = None
        while frontier:
            cand = frontier.pop()
            if cand in chosen:
                acc += chosen[cand][0]
                frontier.extend(chosen[cand][1])
            else:
                pair = cand
                break
        if pair is None:
            if best_cost is None or acc < best_cost:
                best_cost = acc
            continue
        for term, subs in options(*pair):
            nxt = dict(chosen)
            nxt[pair] = (term, subs)
            stack.append((nxt, acc + term, tuple(frontier) + tuple(subs)))
    return best_cost
