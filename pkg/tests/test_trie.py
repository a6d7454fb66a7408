from functools import partial

import numpy as np
import pytest

from conftest import BitStream
from prefix_tree.analytic import (
    avg_depth,
    degree1_count,
    expected_leaves,
    false_positive,
    internal_nodes_at_depth,
    m_node_count,
)
from prefix_tree.errors import DomainError, DuplicateElement, EmptyInput
from prefix_tree.hashstream import ElementStream
from prefix_tree.simulate import census, fp_trials, random_streams, random_tree, run_trials
from prefix_tree.trie import (
    Kind,
    Node,
    TreeKind,
    Verdict,
    build,
    build_minimal,
    extend_to_min_depth,
    flatten,
    leaf_depths,
    query,
    reduce,
    simulate_false_positive,
    stats,
)

SEED = 0x0D0DA203


def _count_nodes(seed, n, depth=None, size=None):
    # internal nodes at a given depth, or with a given count
    tree = random_tree(n, TreeKind.minimal(), seed)
    stack, found = [(tree.root, 0)], 0
    while stack:
        node, at = stack.pop()
        if node.is_leaf:
            continue
        found += (depth is None or at == depth) and (size is None or node.count == size)
        stack += [(child, at + 1) for child in (node.left, node.right) if child is not None]
    return found


def _check_counts(node):
    if node.is_leaf:
        assert node.count == 1
        return
    children = [c for c in (node.left, node.right) if c is not None]
    assert sum(c.count for c in children) == node.count
    for child in children:
        _check_counts(child)


class TestBuild:
    def test_three_leaves(self, three_streams):
        tree = build_minimal(three_streams)
        assert tree.root == Node(3, Node(1), Node(2, Node(1), Node(1)))
        assert sorted(leaf_depths(tree)) == [1, 2, 2]
        tree_stats = stats(tree)
        assert tree_stats.avg_depth == pytest.approx(5 / 3)
        assert tree_stats.degree2_nodes == 2
        assert tree_stats.degree1_nodes == 0
        assert tree_stats.total_nodes == 5

    def test_single_stream(self):
        tree = build_minimal([BitStream("1")])
        assert tree.root == Node(1)
        assert leaf_depths(tree) == [0]

    def test_shared_prefix(self):
        tree = build_minimal([BitStream("0000", 1), BitStream("0001", 2)])
        assert leaf_depths(tree) == [4, 4]
        assert stats(tree).degree1_nodes == 3

    def test_empty(self):
        with pytest.raises(EmptyInput):
            build_minimal([])

    def test_duplicate(self):
        with pytest.raises(DuplicateElement) as info:
            build_minimal([ElementStream(42), ElementStream(7), ElementStream(42)])
        assert info.value.digest == 42
        assert info.value.depth == 256

    def test_order_does_not_matter(self):
        streams = random_streams(200, seed=1)
        assert build(streams) == build(list(reversed(streams)))

    def test_counts_and_leaves(self):
        tree = random_tree(500, TreeKind.minimal(), SEED)
        _check_counts(tree.root)
        assert tree.n == 500
        assert sum(stats(tree).leaf_depth_histogram.values()) == 500
        assert stats(tree).degree2_nodes == 499


class TestMinDepth:
    def test_three_leaves(self, three_streams):
        tree = build(three_streams, TreeKind.min_depth(3))
        assert tree.kind == TreeKind(Kind.MinDepth, 3)
        assert leaf_depths(tree) == [3, 3, 3]
        tree_stats = stats(tree)
        assert tree_stats.extension_nodes == 2 + 1 + 1
        assert tree_stats.degree1_nodes == 0
        # "0" then zeros: the chain keeps going left
        assert tree.root.left == Node(1, Node(1, Node(1), None), None)

    def test_depth_below_leaves_changes_nothing(self, three_streams):
        minimal = build(three_streams)
        extended = extend_to_min_depth(minimal, 1, three_streams)
        assert extended.root == minimal.root
        assert extend_to_min_depth(minimal, 0, three_streams) is minimal

    def test_bits_follow_stream(self):
        stream = ElementStream(99, 5)
        tree = build([stream], TreeKind.min_depth(40))
        node, path = tree.root, []
        while not node.is_leaf:
            bit = int(node.right is not None)
            path.append(bit)
            node = node.right if bit else node.left
        assert path == [stream.bit(i) for i in range(40)]

    def test_only_minimal_extends(self, three_streams):
        with pytest.raises(DomainError):
            extend_to_min_depth(build(three_streams, TreeKind.reduced()), 2, three_streams)
        with pytest.raises(DomainError):
            TreeKind.min_depth(0)

    def test_random_tree_depths(self):
        tree = random_tree(300, TreeKind.min_depth(12), SEED)
        depths = leaf_depths(tree)
        assert len(depths) == 300
        assert min(depths) >= 12
        _check_counts(tree.root)


class TestReduce:
    def test_shared_prefix(self):
        tree = build([BitStream("0000", 1), BitStream("0001", 2)], TreeKind.reduced())
        node = tree.root
        for _ in range(3):
            assert node.wildcard and node.right is None
            node = node.left
        assert node == Node(2, Node(1), Node(1))

    def test_reduced_query_ignores_wildcard_bits(self):
        tree = build([BitStream("0000", 1), BitStream("0001", 2)], TreeKind.reduced())
        assert query(tree, BitStream("1111")) is Verdict.PresentOrFalsePositive
        assert query(tree, BitStream("1011")) is Verdict.PresentOrFalsePositive

    def test_same_leaf_depths(self):
        minimal = random_tree(200, TreeKind.minimal(), SEED)
        assert leaf_depths(reduce(minimal)) == leaf_depths(minimal)
        reduced_stats = stats(reduce(minimal))
        assert reduced_stats.degree1_nodes == stats(minimal).degree1_nodes

    def test_reduced_has_no_false_negatives_or_rejects(self):
        tree = random_tree(100, TreeKind.reduced(), SEED)
        probes = random_streams(500, seed=3)
        assert all(query(tree, s) is Verdict.PresentOrFalsePositive for s in probes)

    def test_reduced_false_positive_rate_is_one(self):
        tree = random_tree(1000, TreeKind.reduced(), SEED)
        assert simulate_false_positive(tree, 100_000, 5) == 1.0


class TestQuery:
    def test_three_leaves(self, three_streams):
        tree = build(three_streams)
        assert query(tree, BitStream("0111")) is Verdict.PresentOrFalsePositive
        assert query(tree, BitStream("101")) is Verdict.PresentOrFalsePositive

    def test_absent(self):
        tree = build([BitStream("0000", 1), BitStream("0001", 2)])
        assert query(tree, BitStream("1")) is Verdict.DefinitelyAbsent
        assert query(tree, BitStream("001")) is Verdict.DefinitelyAbsent

    @pytest.mark.parametrize(
        "kind", [TreeKind.minimal(), TreeKind.min_depth(20), TreeKind.reduced()]
    )
    def test_members_always_present(self, kind):
        streams = random_streams(300, seed=5)
        tree = build(streams, kind)
        assert all(query(tree, s) is Verdict.PresentOrFalsePositive for s in streams)

    def test_flatten_preorder(self, three_streams):
        flat = flatten(build(three_streams))
        assert flat.left.tolist() == [1, -1, 3, -1, -1]
        assert flat.right.tolist() == [2, -1, 4, -1, -1]
        assert flat.leaf.tolist() == [False, True, False, True, True]

    def test_vectorized_walk_matches_query(self):
        streams = random_streams(50, seed=11)
        tree = build(streams, TreeKind.min_depth(8))
        probes = 2000
        rate = simulate_false_positive(tree, probes, 17)
        rng = np.random.default_rng(17)
        digests = rng.integers(0, 2**64 - 1, size=probes, dtype=np.uint64, endpoint=True)
        hits = sum(
            query(tree, ElementStream(d)) is Verdict.PresentOrFalsePositive
            for d in digests.tolist()
        )
        assert rate == hits / probes

    def test_simulation_is_reproducible(self):
        tree = random_tree(100, TreeKind.minimal(), SEED)
        assert simulate_false_positive(tree, 5000, 9) == simulate_false_positive(tree, 5000, 9)

    def test_members_are_redrawn(self):
        probes, seed = 200, 29
        rng = np.random.default_rng(seed)
        first = rng.integers(0, 2**64 - 1, size=probes, dtype=np.uint64, endpoint=True)
        second = rng.integers(0, 2**64 - 1, size=10, dtype=np.uint64, endpoint=True)
        members = first[:10]
        tree = build([ElementStream(d) for d in members.tolist()])

        def hits(digests):
            return sum(
                query(tree, ElementStream(d)) is Verdict.PresentOrFalsePositive for d in digests
            )

        rate = simulate_false_positive(tree, probes, seed, members=members)
        assert rate == hits(first[10:].tolist() + second.tolist()) / probes
        assert simulate_false_positive(tree, probes, seed) == hits(first.tolist()) / probes

    def test_probe_count_checked(self):
        with pytest.raises(DomainError):
            simulate_false_positive(random_tree(3, TreeKind.minimal(), SEED), 0, 1)


@pytest.mark.slow
class TestMonteCarlo:
    def test_leaf_depth_histogram(self):
        n, trials = 100, 500
        results = census(n, TreeKind.minimal(), trials, SEED)
        for d in range(1, 25):
            counts = np.array([r.leaf_depth_histogram.get(d, 0) for r in results], dtype=float)
            expected = expected_leaves(n, d)
            se = np.sqrt(max(counts.var(ddof=1), expected) / trials)
            assert abs(counts.mean() - expected) <= 3 * se + 2 / trials, d

    def test_average_depth(self):
        n, trials = 1000, 200
        depths = np.array([r.avg_depth for r in census(n, TreeKind.minimal(), trials, SEED)])
        se = depths.std(ddof=1) / np.sqrt(trials)
        assert abs(depths.mean() - avg_depth(n).value) <= 3 * se

    def test_degree1_nodes(self):
        n, trials = 1000, 200
        counts = np.array(
            [r.degree1_nodes for r in census(n, TreeKind.minimal(), trials, SEED)], dtype=float
        )
        se = counts.std(ddof=1) / np.sqrt(trials)
        assert abs(counts.mean() - degree1_count(n)) <= 3 * se

    def test_two_element_degree1_nodes(self):
        trials = 2000
        counts = np.array(
            [r.degree1_nodes for r in census(2, TreeKind.minimal(), trials, SEED)], dtype=float
        )
        se = counts.std(ddof=1) / np.sqrt(trials)
        assert abs(counts.mean() - 1.0) <= 3 * se

    def test_internal_nodes_at_depth(self):
        n, d, trials = 100, 3, 1000
        counts = np.array(
            run_trials(partial(_count_nodes, n=n, depth=d), SEED, trials), dtype=float
        )
        se = counts.std(ddof=1) / np.sqrt(trials)
        assert abs(counts.mean() - internal_nodes_at_depth(n, d)) <= 3 * se + 1 / trials

    def test_nodes_with_two_sequences(self):
        n, m, trials = 5, 2, 5000
        counts = np.array(
            run_trials(partial(_count_nodes, n=n, size=m), SEED, trials), dtype=float
        )
        se = counts.std(ddof=1) / np.sqrt(trials)
        assert abs(counts.mean() - m_node_count(n, m)) <= 3 * se + 1 / trials

    def test_minimal_false_positive(self):
        rates = fp_trials(1000, TreeKind.minimal(), 20, 5000, SEED)
        assert np.mean(rates) == pytest.approx(0.721, abs=0.01)

    def test_small_tree_false_positive(self):
        rates = fp_trials(20, TreeKind.minimal(), 200, 1000, SEED)
        assert np.mean(rates) == pytest.approx(false_positive(20), abs=0.02)

    def test_min_depth_false_positive(self):
        probes = 10**7
        tree = random_tree(1000, TreeKind.min_depth(20), SEED)
        rate = simulate_false_positive(tree, probes, 23)
        expected = false_positive(1000, 20)
        assert abs(rate - expected) <= 3 * np.sqrt(expected / probes)
