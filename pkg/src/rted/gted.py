"""Edit distance by executing a path strategy, plus a brute-force oracle."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .index import PathKind, TreeIndex, build_index, root_leaf_path
from .strategy import FixedStrategy, OracleSizeError, StrategyMatrix, fixed_strategy, opt_strategy
from .tree import Tree

ALGORITHMS = ("rted", "zhang-l", "zhang-r", "klein-h", "demaine-h")
BRUTE_FORCE_LIMIT = 400


class CostModel:
    """Node edit costs. Subclasses override any of the three methods.

    ``ren(a, a)`` must be 0 and all costs nonnegative.
    """

    def delete(self, label) -> float:
        return 1.0

    def insert(self, label) -> float:
        return 1.0

    def rename(self, a, b) -> float:
        return 0.0 if a == b else 1.0


class UnitCost(CostModel):
    pass


@dataclass(frozen=True)
class ConstantCost(CostModel):
    """Fixed delete/insert/rename costs, independent of the labels."""

    del_cost: float = 1.0
    ins_cost: float = 1.0
    ren_cost: float = 1.0

    def delete(self, label):
        return self.del_cost

    def insert(self, label):
        return self.ins_cost

    def rename(self, a, b):
        return 0.0 if a == b else self.ren_cost


@dataclass
class ExecStats:
    """Relevant subproblems and phase timings (seconds) of one run."""

    subproblems: int = 0
    heavy_subproblems: int = 0
    left_subproblems: int = 0
    right_subproblems: int = 0
    strategy_time: float = 0.0
    distance_time: float = 0.0

    @property
    def total_time(self) -> float:
        return self.strategy_time + self.distance_time

    def add(self, counts):
        heavy, left, right = (int(c) for c in counts)
        self.heavy_subproblems += heavy
        self.left_subproblems += left
        self.right_subproblems += right
        self.subproblems += heavy + left + right


@dataclass
class DistanceMatrix:
    """Subtree-pair distances; NaN marks a cell that is not filled yet."""

    d: np.ndarray

    @classmethod
    def empty(cls, nf: int, ng: int) -> DistanceMatrix:
        return cls(np.full((nf, ng), np.nan))

    @property
    def filled(self) -> np.ndarray:
        return ~np.isnan(self.d)

    def __getitem__(self, vw):
        return self.d[vw]


@dataclass
class _Costs:
    """Per-node cost arrays and the label-pair rename table of one tree pair."""

    dF: np.ndarray
    iF: np.ndarray
    dG: np.ndarray
    iG: np.ndarray
    R: np.ndarray
    labF: np.ndarray
    labG: np.ndarray


def _costs(F: TreeIndex, G: TreeIndex, c: CostModel) -> _Costs:
    vocF = {lab: i for i, lab in enumerate(dict.fromkeys(F.labels))}
    vocG = {lab: i for i, lab in enumerate(dict.fromkeys(G.labels))}
    labF = np.fromiter((vocF[x] for x in F.labels), np.int64, F.n)
    labG = np.fromiter((vocG[x] for x in G.labels), np.int64, G.n)
    if type(c) is UnitCost:
        namesF = np.array(list(vocF), dtype=object)
        namesG = np.array(list(vocG), dtype=object)
        R = (namesF[:, None] != namesG[None, :]).astype(np.float64)
        ones = lambda n: np.ones(n)
        return _Costs(ones(F.n), ones(F.n), ones(G.n), ones(G.n), R, labF, labG)
    R = np.array([[c.rename(a, b) for b in vocG] for a in vocF], dtype=np.float64).reshape(len(vocF), len(vocG))
    delF = {a: c.delete(a) for a in vocF}
    insF = {a: c.insert(a) for a in vocF}
    delG = {b: c.delete(b) for b in vocG}
    insG = {b: c.insert(b) for b in vocG}
    arr = lambda table, labels: np.array([table[x] for x in labels], dtype=np.float64)
    out = _Costs(arr(delF, F.labels), arr(insF, F.labels), arr(delG, G.labels), arr(insG, G.labels), R, labF, labG)
    for name in ("dF", "iF", "dG", "iG", "R"):
        if np.any(getattr(out, name) < 0):
            raise ValueError("edit costs must be nonnegative")
    return out


def gted(F: TreeIndex, G: TreeIndex, S: StrategyMatrix, c: CostModel | None = None,
         check: bool = False) -> tuple[DistanceMatrix, ExecStats]:
    """Distances between all subtree pairs of ``F`` and ``G`` under ``S``.

    Relevant subtrees of the chosen path are handled first, then the
    single-path function matching the path kind fills the path's row (or, for
    a path in ``G``, column) of the distance matrix. ``check`` verifies that
    every distance a single-path function reads has been computed before.
    """
    c = c or UnitCost()
    if S.shape != (F.n, G.n):
        raise ValueError(f"strategy shape {S.shape} does not match trees ({F.n}, {G.n})")
    cs = _costs(F, G, c)
    D = DistanceMatrix.empty(F.n, G.n)
    stats = ExecStats()
    t0 = time.perf_counter()
    counts = K.gted_kernel(K.tree_arrays(F), K.tree_arrays(G), S.codes, D.d,
                           cs.dF, cs.iF, cs.dG, cs.iG, cs.R, cs.labF, cs.labG, check)
    stats.distance_time = time.perf_counter() - t0
    stats.add(counts)
    return D, stats


def _single_path_args(F, G, c, D):
    if D is None:
        D = DistanceMatrix.empty(F.n, G.n)
    cs = _costs(F, G, c or UnitCost())
    return D, cs


def delta_left(F: TreeIndex, v: int, G: TreeIndex, w: int, D: DistanceMatrix | None = None,
               c: CostModel | None = None, stats: ExecStats | None = None, check: bool = True) -> DistanceMatrix:
    """Fill ``D[x, y]`` for ``x`` on the left path of ``F_v`` and all ``y`` in ``G_w``.

    Requires the distances of the relevant subtrees of that path against all
    subtrees of ``G_w``.
    """
    D, cs = _single_path_args(F, G, c, D)
    A, B = K.tree_arrays(F), K.tree_arrays(G)
    fws = np.empty(K.side_need(A, v, B, w))
    n = K.spf_side(A, v, B, w, False, D.d, cs.dF, cs.iG, cs.R, cs.labF, cs.labG, check, fws)
    if stats is not None:
        stats.add((0, n, 0))
    return D


def delta_right(F: TreeIndex, v: int, G: TreeIndex, w: int, D: DistanceMatrix | None = None,
                c: CostModel | None = None, stats: ExecStats | None = None, check: bool = True) -> DistanceMatrix:
    """Mirror image of :func:`delta_left` for the right path of ``F_v``."""
    D, cs = _single_path_args(F, G, c, D)
    A, B = K.tree_arrays(F), K.tree_arrays(G)
    fws = np.empty(K.side_need(A, v, B, w))
    n = K.spf_side(A, v, B, w, True, D.d, cs.dF, cs.iG, cs.R, cs.labF, cs.labG, check, fws)
    if stats is not None:
        stats.add((0, 0, n))
    return D


def delta_generic(F: TreeIndex, v: int, G: TreeIndex, w: int, path=None, D: DistanceMatrix | None = None,
                  c: CostModel | None = None, stats: ExecStats | None = None, check: bool = True) -> DistanceMatrix:
    """Single-path function for any root-leaf ``path`` of ``F_v`` (heavy by default)."""
    if path is None:
        path = root_leaf_path(F, v, PathKind.HEAVY)
    path = np.asarray(path, dtype=np.int64)
    if path[0] != v or F.first_child[path[-1]] >= 0 or np.any(F.parent[path[1:]] != path[:-1]):
        raise ValueError("path must run from v down to a leaf")
    D, cs = _single_path_args(F, G, c, D)
    A, B = K.tree_arrays(F), K.tree_arrays(G)
    fneed, ineed = K.inner_need(A, v, B, w)
    n = K.spf_inner(A, v, path, B, w, D.d, cs.dF, cs.iG, K._prefix(cs.dF), K._prefix(cs.iG),
                    cs.R, cs.labF, cs.labG, check, np.empty(fneed), np.empty(ineed, np.int64))
    if stats is not None:
        stats.add((n, 0, 0))
    return D


def tree_edit_distance(F: Tree | TreeIndex, G: Tree | TreeIndex, algo: str = "rted",
                       c: CostModel | None = None) -> tuple[float, ExecStats]:
    """Edit distance of ``F`` and ``G`` with one of :data:`ALGORITHMS`."""
    Fi = F if isinstance(F, TreeIndex) else build_index(F)
    Gi = G if isinstance(G, TreeIndex) else build_index(G)
    algo = algo.lower()
    t0 = time.perf_counter()
    if algo == "rted":
        S = opt_strategy(Fi, Gi).matrix
    elif algo in ALGORITHMS:
        S = fixed_strategy(FixedStrategy(algo), Fi, Gi)
    else:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {', '.join(ALGORITHMS)}")
    strategy_time = time.perf_counter() - t0
    D, stats = gted(Fi, Gi, S, c)
    stats.strategy_time = strategy_time
    return float(D.d[Fi.root, Gi.root]), stats


def brute_force_distance(F: Tree, G: Tree, c: CostModel | None = None, limit: int = BRUTE_FORCE_LIMIT) -> float:
    """Edit distance straight from the forest recursion, rightmost roots first.

    Forests are bitmasks over preorder positions, memoized per forest pair.
    Only for small inputs (``|F| * |G| <= limit``).
    """
    c = c or UnitCost()
    fn, fl, fr = _flatten(F)
    gn, gl, gr = _flatten(G)
    if len(fl) * len(gl) > limit:
        raise OracleSizeError(f"|F|*|G| = {len(fl) * len(gl)} exceeds the brute-force limit {limit}")
    memo = {}

    def rightmost(mask, parent):
        # climb from the last node in preorder while the parent is still in the forest
        x = mask.bit_length() - 1
        while True:
            p = parent[x]
            if p >= 0 and mask >> p & 1:
                x = p
            else:
                return x

    def dist(a, b):
        key = (a, b)
        if key in memo:
            return memo[key]
        # iterative evaluation with an explicit stack
        stack = [key]
        while stack:
            fa, gb = stack[-1]
            if (fa, gb) in memo:
                stack.pop()
                continue
            if fa == 0 and gb == 0:
                memo[fa, gb] = 0.0
                stack.pop()
                continue
            if fa:
                v = rightmost(fa, fn)
                sub_v = fr[v]
            if gb:
                w = rightmost(gb, gn)
                sub_w = gr[w]
            if fa and gb:
                options = [(fa & ~(1 << v), gb), (fa, gb & ~(1 << w)),
                           (sub_v & ~(1 << v), sub_w & ~(1 << w)), (fa & ~sub_v, gb & ~sub_w)]
            elif fa:
                options = [(fa & ~(1 << v), gb)]
            else:
                options = [(fa, gb & ~(1 << w))]
            need = [o for o in options if o not in memo]
            if need:
                stack.extend(need)
                continue
            stack.pop()
            if fa and gb:
                val = min(memo[options[0]] + c.delete(fl[v]),
                          memo[options[1]] + c.insert(gl[w]),
                          memo[options[2]] + memo[options[3]] + c.rename(fl[v], gl[w]))
            elif fa:
                val = memo[options[0]] + c.delete(fl[v])
            else:
                val = memo[options[0]] + c.insert(gl[w])
            memo[fa, gb] = val
        return memo[key]

    return float(dist((1 << len(fl)) - 1, (1 << len(gl)) - 1))


def _flatten(t: Tree):
    """Parent, label and subtree mask per preorder position."""
    nodes = list(t.preorder())
    pos = {id(x): i for i, x in enumerate(nodes)}
    parent = [-1] * len(nodes)
    for i, x in enumerate(nodes):
        for ch in x.children:
            parent[pos[id(ch)]] = i
    sub = [1 << i for i in range(len(nodes))]
    for i in range(len(nodes) - 1, 0, -1):
        sub[parent[i]] |= sub[i]
    return parent, [x.label for x in nodes], sub
