"""Synthetic tree families used by the benchmarks and property tests.

Random choices come from SplitMix64 so that any implementation can rebuild
the same trees from the same seed:

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)                       (all arithmetic mod 2**64)

and ``below(n) = next() % n``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .tree import Tree

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n


class Shape(str, enum.Enum):
    LEFT_BRANCH = "left-branch"
    RIGHT_BRANCH = "right-branch"
    ZIGZAG = "zigzag"
    FULL_BINARY = "full-binary"
    MIXED = "mixed"
    RANDOM = "random"


SHORT_NAMES = {"lb": Shape.LEFT_BRANCH, "rb": Shape.RIGHT_BRANCH, "zz": Shape.ZIGZAG,
               "fb": Shape.FULL_BINARY, "mixed": Shape.MIXED, "random": Shape.RANDOM}


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class ShapeSpec:
    kind: Shape
    size: int | None = None
    depth: int | None = None
    seed: int = 0
    max_depth: int = 15
    max_fanout: int = 6
    alphabet: str | None = None  # None: every node is labeled "x"


def _shape(kind) -> Shape:
    if isinstance(kind, Shape):
        return kind
    key = str(kind).lower()
    if key in SHORT_NAMES:
        return SHORT_NAMES[key]
    try:
        return Shape(key)
    except ValueError:
        raise ShapeError(f"unknown shape {kind!r}") from None


def _odd_size(size) -> int:
    if size is None or size < 1 or size % 2 == 0:
        raise ShapeError(f"size must be a positive odd number, got {size}")
    return (size - 1) // 2


def _branch(k: int, spine_left, extra=False) -> Tree:
    """A caterpillar of 2k+1 nodes (2k+2 with ``extra``).

    ``spine_left(level)`` tells whether the spine child of the node at
    ``level`` (root = 0) is the left one. ``extra`` hangs one more node below
    the bottom of the spine.
    """
    node = Tree("x", [Tree("x")] if extra else [])
    for i in range(1, k + 1):
        level = k - i
        node = Tree("x", [node, Tree("x")] if spine_left(level) else [Tree("x"), node])
    return node


def left_branch(size: int) -> Tree:
    return _branch(_odd_size(size), lambda level: True)


def right_branch(size: int) -> Tree:
    return _branch(_odd_size(size), lambda level: False)


def zigzag(size: int) -> Tree:
    return _branch(_odd_size(size), lambda level: level % 2 == 0)


def full_binary(size: int | None = None, depth: int | None = None) -> Tree:
    """Complete binary tree: either of ``depth`` (2**(depth+1) - 1 nodes) or
    with exactly ``size`` nodes filled level by level, left to right."""
    if depth is not None:
        if depth < 0:
            raise ShapeError("depth must be >= 0")
        size = 2 ** (depth + 1) - 1
    if size is None or size < 1:
        raise ShapeError(f"size must be positive, got {size}")
    nodes = [Tree("x") for _ in range(size)]
    for i in range(size - 1, 0, -1):
        nodes[(i - 1) // 2].children.insert(0, nodes[i])
    return nodes[0]


def mixed(size: int) -> Tree:
    """Complete binary skeleton (up to depth 2) whose leaves are replaced by
    caterpillars, alternately left and right branching."""
    if size is None or size < 1:
        raise ShapeError(f"size must be positive, got {size}")
    d = 0
    while d < 2 and 2 ** (d + 2) - 1 <= size:
        d += 1
    inner = 2 ** d - 1
    n_branches = 2 ** d
    rest = size - inner
    branch_sizes = [rest // n_branches + (1 if i < rest % n_branches else 0) for i in range(n_branches)]
    branches = []
    for i, s in enumerate(branch_sizes):
        k, extra = (s - 1) // 2, s % 2 == 0
        side = (lambda level: True) if i % 2 == 0 else (lambda level: False)
        branches.append(_branch(k, side, extra))
    level = branches
    while len(level) > 1:
        level = [Tree("x", [level[i], level[i + 1]]) for i in range(0, len(level), 2)]
    return level[0]


def random_tree(size: int, seed: int, max_depth: int = 15, max_fanout: int = 6) -> Tree:
    """Grow a tree by attaching each new node below a uniformly chosen node
    that is above ``max_depth`` and has fewer than ``max_fanout`` children."""
    if size is None or size < 1:
        raise ShapeError(f"size must be positive, got {size}")
    if max_fanout < 1 or max_depth < 0 or (max_depth == 0 and size > 1):
        raise ShapeError("depth/fanout caps leave no room to grow")
    rng = SplitMix64(seed)
    nodes = [Tree("x")]
    depth = [0]
    open_ = [0] if max_depth > 0 else []
    while len(nodes) < size:
        if not open_:
            raise ShapeError("depth/fanout caps cannot hold the requested size")
        j = rng.below(len(open_))
        p = open_[j]
        child = len(nodes)
        nodes.append(Tree("x"))
        depth.append(depth[p] + 1)
        nodes[p].children.append(nodes[child])
        if len(nodes[p].children) == max_fanout:
            open_[j] = open_[-1]
            open_.pop()
        if depth[child] < max_depth:
            open_.append(child)
    return nodes[0]


def relabel(t: Tree, alphabet: str, seed: int) -> Tree:
    """Copy of ``t`` with labels drawn from ``alphabet`` in preorder."""
    rng = SplitMix64(seed ^ 0x5EED)
    copy = t.mirror().mirror()
    for node in copy.preorder():
        node.label = alphabet[rng.below(len(alphabet))]
    return copy


def gen_shape(spec: ShapeSpec | str, size: int | None = None, **kwargs) -> Tree:
    """Build a synthetic tree.

    ``gen_shape(ShapeSpec(...))`` or ``gen_shape("left-branch", 21)``; extra
    keyword arguments fill the remaining :class:`ShapeSpec` fields.
    """
    if not isinstance(spec, ShapeSpec):
        spec = ShapeSpec(_shape(spec), size, **kwargs)
    kind = _shape(spec.kind)
    if kind == Shape.LEFT_BRANCH:
        t = left_branch(spec.size)
    elif kind == Shape.RIGHT_BRANCH:
        t = right_branch(spec.size)
    elif kind == Shape.ZIGZAG:
        t = zigzag(spec.size)
    elif kind == Shape.FULL_BINARY:
        t = full_binary(spec.size, spec.depth)
    elif kind == Shape.MIXED:
        t = mixed(spec.size)
    else:
        t = random_tree(spec.size, spec.seed, spec.max_depth, spec.max_fanout)
    if spec.alphabet:
        t = relabel(t, spec.alphabet, spec.seed)
    return t
