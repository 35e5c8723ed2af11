"""Subproblem counting, similarity join and timing helpers."""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .gted import ALGORITHMS, CostModel, ExecStats, gted, tree_edit_distance
from .index import TreeIndex, build_index
from .shapes import ShapeSpec, gen_shape
from .strategy import FixedStrategy, StrategyMatrix, fixed_strategy, opt_strategy, strategy_cost
from .tree import Tree


def strategy_for(algo: str, F: TreeIndex, G: TreeIndex) -> StrategyMatrix:
    if algo == "rted":
        return opt_strategy(F, G).matrix
    return fixed_strategy(FixedStrategy(algo), F, G)


def count_subproblems(algo: str, F: TreeIndex, G: TreeIndex) -> int:
    """Relevant subproblems of ``algo`` on ``(F, G)``, without computing distances."""
    if algo == "rted":
        return opt_strategy(F, G).cost
    return strategy_cost(F, G, fixed_strategy(FixedStrategy(algo), F, G))


@dataclass
class CountRow:
    shape: str
    size: int
    algo: str
    subproblems: int
    executed: int | None = None


def count_rows(shapes, sizes, algos=ALGORITHMS, execute=False, seed=0):
    """One row per (shape, size, algo) on a pair of identical trees."""
    rows = []
    for shape in shapes:
        for size in sizes:
            F = build_index(gen_shape(ShapeSpec(shape, size, seed=seed)))
            for algo in algos:
                row = CountRow(getattr(shape, "value", str(shape)), F.n, algo, count_subproblems(algo, F, F))
                if execute:
                    row.executed = gted(F, F, strategy_for(algo, F, F))[1].subproblems
                rows.append(row)
    return rows


@dataclass
class RunReport:
    algo: str
    distance: float
    subproblems: int
    strategy_time_ms: float
    distance_time_ms: float
    total_time_ms: float

    HEADER = "algo,distance,subproblems,strategy_time_ms,distance_time_ms,total_time_ms"

    @classmethod
    def from_stats(cls, algo: str, distance: float, stats: ExecStats, total_s: float) -> RunReport:
        return cls(algo, distance, stats.subproblems, stats.strategy_time * 1e3,
                   stats.distance_time * 1e3, max(total_s, stats.total_time) * 1e3)

    def csv_row(self) -> str:
        return (f"{self.algo},{self.distance:g},{self.subproblems},{self.strategy_time_ms:.3f},"
                f"{self.distance_time_ms:.3f},{self.total_time_ms:.3f}")


def run(F: Tree, G: Tree, algo: str = "rted", c: CostModel | None = None) -> RunReport:
    t0 = time.perf_counter()
    d, stats = tree_edit_distance(F, G, algo, c)
    return RunReport.from_stats(algo, d, stats, time.perf_counter() - t0)


@dataclass
class JoinResult:
    tau: float
    pairs: list = field(default_factory=list)        # (name_a, name_b, distance), matched pairs only
    subproblems: dict = field(default_factory=dict)  # algo -> total over all evaluated pairs
    seconds: dict = field(default_factory=dict)      # algo -> summed distance + strategy time


def similarity_join(trees: dict, tau: float = float("inf"), algos=("rted",), threads: int = 1,
                    c: CostModel | None = None) -> JoinResult:
    """Self join: every unordered pair with distance strictly below ``tau``.

    ``trees`` maps a name to a :class:`Tree`. Each algorithm evaluates every
    pair; matched pairs are taken from the first algorithm (all algorithms
    return the same distances).
    """
    names = sorted(trees)
    index = {name: build_index(trees[name]) for name in names}
    pairs = list(itertools.combinations(names, 2))
    result = JoinResult(tau)

    def one(job):
        algo, (a, b) = job
        d, stats = tree_edit_distance(index[a], index[b], algo, c)
        return algo, a, b, d, stats

    jobs = [(algo, p) for algo in algos for p in pairs]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, jobs))
    else:
        outcomes = [one(j) for j in jobs]
    for algo in algos:
        result.subproblems[algo] = 0
        result.seconds[algo] = 0.0
    for algo, a, b, d, stats in outcomes:
        result.subproblems[algo] += stats.subproblems
        result.seconds[algo] += stats.total_time
        if algo == algos[0] and d < tau:
            result.pairs.append((a, b, d))
    return result
