import pytest

from rted.index import PathKind, build_index, relevant_subtrees, root_leaf_path
from rted.shapes import Shape, ShapeError, ShapeSpec, SplitMix64, gen_shape, random_tree
from rted.tree import serialize_bracket


def test_splitmix_reference_values():
    # published first outputs for seed 0
    rng = SplitMix64(0)
    assert rng.next() == 0xE220A8397B1DCDAF
    assert rng.next() == 0x6E789E6AA1B965F4


def test_left_branch_smallest():
    t = gen_shape("left-branch", 3)
    assert serialize_bracket(t) == "{x{x}{x}}"
    ix = build_index(t)
    assert len(relevant_subtrees(ix, ix.root, root_leaf_path(ix, ix.root, PathKind.LEFT))) == 1
    assert len(relevant_subtrees(ix, ix.root, root_leaf_path(ix, ix.root, PathKind.RIGHT))) == 1


def test_branch_geometry():
    assert serialize_bracket(gen_shape("lb", 5)) == "{x{x{x}{x}}{x}}"
    assert serialize_bracket(gen_shape("rb", 5)) == "{x{x}{x{x}{x}}}"
    assert serialize_bracket(gen_shape("zz", 7)) == "{x{x{x}{x{x}{x}}}{x}}"


@pytest.mark.parametrize("n", [1, 3, 21, 101])
def test_left_branch_identities(n):
    ix = build_index(gen_shape(Shape.LEFT_BRANCH, n))
    assert ix.n == n
    assert ix.leaves[ix.root] == (n + 1) // 2
    for v in range(ix.n):
        if ix.is_leaf(v):
            continue
        s = int(ix.size[v])
        for kind, expect in ((PathKind.LEFT, (s - 1) // 2), (PathKind.HEAVY, (s - 1) // 2), (PathKind.RIGHT, 1)):
            assert len(relevant_subtrees(ix, v, root_leaf_path(ix, v, kind))) == expect


@pytest.mark.parametrize("n", [3, 21, 101])
def test_right_branch_is_the_mirror(n):
    ix = build_index(gen_shape(Shape.RIGHT_BRANCH, n))
    assert gen_shape("rb", n) == gen_shape("lb", n).mirror()
    for v in range(ix.n):
        if not ix.is_leaf(v):
            s = int(ix.size[v])
            assert len(relevant_subtrees(ix, v, root_leaf_path(ix, v, PathKind.RIGHT))) == (s - 1) // 2
            assert len(relevant_subtrees(ix, v, root_leaf_path(ix, v, PathKind.LEFT))) == 1


@pytest.mark.parametrize("shape", list(Shape))
@pytest.mark.parametrize("n", [1, 3, 5, 21, 201])
def test_sizes_are_exact(shape, n):
    assert len(gen_shape(shape, n, seed=5)) == n


def test_full_binary_by_depth():
    t = gen_shape(ShapeSpec(Shape.FULL_BINARY, depth=3))
    ix = build_index(t)
    assert ix.n == 15 and ix.depth.max() == 3 and ix.leaves[ix.root] == 8


def test_random_is_reproducible_and_capped():
    a = gen_shape("random", 500, seed=7)
    assert a == gen_shape("random", 500, seed=7)
    assert a != gen_shape("random", 500, seed=8)
    ix = build_index(a)
    assert ix.depth.max() <= 15
    assert max(len(ix.children(v)) for v in range(ix.n)) <= 6
    small = build_index(random_tree(300, 1, max_depth=3, max_fanout=7))
    assert small.depth.max() <= 3
    assert max(len(small.children(v)) for v in range(small.n)) <= 7


def test_alphabet_relabels_deterministically():
    a = gen_shape("fb", 15, alphabet="abc", seed=2)
    assert a == gen_shape("fb", 15, alphabet="abc", seed=2)
    assert set(n.label for n in a.preorder()) <= set("abc")
    assert set(n.label for n in gen_shape("fb", 15).preorder()) == {"x"}


def test_mixed_uses_both_branch_directions():
    ix = build_index(gen_shape("mixed", 101))
    root_kids = ix.children(ix.root)
    assert len(root_kids) == 2
    # the skeleton is a complete binary tree of depth 2 with four caterpillars below
    grandkids = [c for k in root_kids for c in ix.children(k)]
    assert len(grandkids) == 4
    lefty = [ix.size[ix.first_child[g]] > ix.size[ix.last_child[g]] for g in grandkids]
    assert lefty == [True, False, True, False]


@pytest.mark.parametrize("kind, size", [("lb", 4), ("zz", 0), ("rb", -1), ("fb", 0), ("mixed", 0), ("random", 0)])
def test_invalid_sizes(kind, size):
    with pytest.raises(ShapeError):
        gen_shape(kind, size)


def test_unknown_shape():
    with pytest.raises(ShapeError):
        gen_shape("spiral", 3)


def test_caps_too_small():
    with pytest.raises(ShapeError):
        random_tree(100, 0, max_depth=2, max_fanout=2)
