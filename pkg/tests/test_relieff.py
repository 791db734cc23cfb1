"""Unit tests for the classical feature-selection core."""

import numpy as np
import pytest

from qrelieff import (
    ConfigError,
    Dataset,
    DegenerateSampleError,
    FeatureStats,
    QReliefFError,
    RngStream,
    RunConfig,
    diff,
    find_neighbors,
    normalize,
    relieff_run,
    select_features,
    similarity,
    update_weights,
)
from qrelieff.relieff import pick_sequence

from conftest import EXAMPLE_FEATURES, EXAMPLE_LABELS, EXAMPLE_ROWS

INV_SQRT2 = 1.0 / np.sqrt(2.0)

# Frozen expected values for the six-sample dataset with round-robin picks,
# k=1, max-similarity neighbors (computed once with an independent
# brute-force script and pinned here).
GOLDEN_WT_ROWS = [
    [1.0, 0.5, 0.5, -0.5, -0.5, 0.0],
    [2.0, 1.0, 1.0, -1.5, -1.0, 0.5],
    [2.5, 2.0, 1.5, -2.0, -1.0, 0.0],
    [3.0, 3.0, 2.0, -2.5, -0.5, -1.0],
]
GOLDEN_AVERAGE = [0.75, 0.75, 0.5, -0.625, -0.125, -0.25]
GOLDEN_NEIGHBORS = {
    0: ([1], {1: [3], 2: [4]}),
    1: ([0], {1: [2], 2: [4]}),
    2: ([3], {0: [0], 2: [5]}),
    3: ([2], {0: [0], 2: [4]}),
}


class TestDataset:
    def test_shape_validation(self):
        with pytest.raises(QReliefFError):
            Dataset(np.ones((1, 3)), np.array([0]), ["a", "b", "c"])
        with pytest.raises(QReliefFError):
            Dataset(np.ones((2, 2)), np.array([0, 2]), ["a", "b"])

    def test_class_helpers(self, example_dataset):
        assert example_dataset.n_samples == 6
        assert example_dataset.n_features == 6
        assert example_dataset.n_classes == 3
        assert example_dataset.class_size(1) == 2
        np.testing.assert_array_equal(example_dataset.class_members(2), [4, 5])


class TestNormalize:
    def test_worked_example_row(self, example_normalized):
        nd, _ = example_normalized
        np.testing.assert_allclose(
            nd.samples[0], [INV_SQRT2, 0, 0, INV_SQRT2, 0, 0], atol=1e-12
        )

    def test_unit_vector_unchanged(self):
        ds = Dataset(np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]),
                     np.array([0, 0]), ["a", "b", "c"])
        nd, _ = normalize(ds)
        np.testing.assert_allclose(nd.samples[0], [0, 1, 0], atol=1e-12)

    def test_zero_row_rejected(self):
        ds = Dataset(np.array([[0.0, 0.0], [1.0, 0.0]]), np.array([0, 0]), ["a", "b"])
        with pytest.raises(DegenerateSampleError, match="row 0"):
            normalize(ds)

    def test_idempotence(self, example_normalized):
        nd, _ = example_normalized
        nd2, _ = normalize(nd)
        np.testing.assert_allclose(nd2.samples, nd.samples, atol=1e-12)

    def test_discrete_detection(self, example_normalized):
        _, stats = example_normalized
        assert stats.discrete.all()  # indicator columns: values in {0, 1/sqrt(2)}

    def test_kind_override(self, example_dataset):
        _, stats = normalize(example_dataset, "continuous")
        assert not stats.discrete.any()
        with pytest.raises(ConfigError):
            normalize(example_dataset, "fuzzy")


class TestDiff:
    def test_discrete_cases(self, example_normalized):
        nd, stats = example_normalized
        assert diff(0, nd.samples[0], nd.samples[1], stats) == 0.0  # both 1/sqrt2
        assert diff(3, nd.samples[0], nd.samples[1], stats) == 1.0  # 1/sqrt2 vs 0

    def test_continuous_case(self):
        stats = FeatureStats(np.array([0.0]), np.array([1.0]), np.array([False]))
        assert diff(0, np.array([0.2]), np.array([0.7]), stats) == pytest.approx(0.5)

    def test_constant_feature(self):
        stats = FeatureStats(np.array([0.3]), np.array([0.3]), np.array([False]))
        assert diff(0, np.array([0.3]), np.array([0.3]), stats) == 0.0

    def test_symmetry_and_range(self):
        rng = np.random.default_rng(31)
        rows = rng.random((8, 5))
        stats = FeatureStats.from_matrix(rows)
        for _ in range(40):
            u, v = rows[rng.integers(8)], rows[rng.integers(8)]
            for i in range(5):
                d_uv = diff(i, u, v, stats)
                assert d_uv == diff(i, v, u, stats)
                assert 0.0 <= d_uv <= 1.0

    def test_index_range(self, example_normalized):
        nd, stats = example_normalized
        with pytest.raises(QReliefFError):
            diff(6, nd.samples[0], nd.samples[1], stats)


class TestSimilarity:
    def test_self(self, example_normalized):
        nd, _ = example_normalized
        assert similarity(nd.samples[0], nd.samples[0]) == pytest.approx(1.0)

    def test_disjoint_supports(self, example_normalized):
        nd, _ = example_normalized
        assert similarity(nd.samples[0], nd.samples[2]) == pytest.approx(0.0)

    def test_shared_coordinate(self, example_normalized):
        nd, _ = example_normalized
        assert similarity(nd.samples[0], nd.samples[1]) == pytest.approx(0.25)

    def test_symmetry_bounds(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            u = rng.random(4)
            v = rng.random(4)
            u, v = u / np.linalg.norm(u), v / np.linalg.norm(v)
            s = similarity(u, v)
            assert s == pytest.approx(similarity(v, u))
            assert 0.0 <= s <= 1.0 + 1e-12


class TestFindNeighbors:
    def test_max_order(self, example_normalized):
        nd, _ = example_normalized
        nb = find_neighbors(nd, 0, 1, "max")
        assert nb.hits == [1]
        assert nb.misses == {1: [3], 2: [4]}

    def test_min_order(self, example_normalized):
        nd, _ = example_normalized
        nb = find_neighbors(nd, 0, 1, "min")
        assert nb.hits == [1]
        assert nb.misses == {1: [2], 2: [4]}  # tie in class C goes to S4

    def test_k_clamped(self, example_normalized):
        nd, _ = example_normalized
        nb = find_neighbors(nd, 0, 5, "max")
        assert nb.hits == [1]
        assert sorted(nb.misses[1]) == [2, 3]

    def test_singleton_class(self):
        ds = Dataset(np.eye(3), np.array([0, 1, 1]), ["a", "b", "c"])
        nd, _ = normalize(ds)
        with pytest.raises(QReliefFError):
            find_neighbors(nd, 0, 1, "max")

    def test_bad_order(self, example_normalized):
        nd, _ = example_normalized
        with pytest.raises(ConfigError):
            find_neighbors(nd, 0, 1, "middle")


class TestUpdateWeights:
    def test_worked_example_first_update(self, example_normalized):
        nd, stats = example_normalized
        nb = find_neighbors(nd, 0, 1, "max")
        wt = update_weights(np.zeros(6), 0, nb, nd, stats)
        np.testing.assert_allclose(wt, GOLDEN_WT_ROWS[0], atol=1e-12)

    def test_identical_neighbor_no_change(self):
        rows = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 1.0]])
        ds = Dataset(rows, np.array([0, 0, 1, 1]), ["a", "b"])
        nd, stats = normalize(ds)
        nb = find_neighbors(nd, 0, 1, "max")
        assert nb.hits == [1]
        wt = update_weights(np.zeros(2), 0, nb, nd, stats)
        # hit is identical, the single miss class gets full weight 1
        np.testing.assert_allclose(wt, [1.0, 1.0], atol=1e-12)

    def test_miss_priors_sum_to_one(self, example_normalized):
        nd, _ = example_normalized
        for u in range(nd.n_samples):
            u_class = int(nd.labels[u])
            denom = nd.n_samples - nd.class_size(u_class)
            total = sum(
                nd.class_size(c) / denom
                for c in range(nd.n_classes)
                if c != u_class
            )
            assert total == pytest.approx(1.0, abs=1e-12)


class TestSelectFeatures:
    def test_published_weight_vector(self):
        assert select_features([1, 1, 1, -0.5, 0, -0.5], 0.5) == [0, 1, 2]

    def test_tau_zero(self):
        assert select_features([0.1, 0.0, 0.2], 0.0) == [0, 1, 2]

    def test_tau_one(self):
        assert select_features([0.9, 0.5], 1.0) == []

    def test_nonfinite_rejected(self):
        with pytest.raises(QReliefFError):
            select_features([np.nan, 1.0], 0.5)


class TestRunConfig:
    def test_validation(self):
        with pytest.raises(ConfigError):
            RunConfig(T=0)
        with pytest.raises(ConfigError):
            RunConfig(k=0)
        with pytest.raises(ConfigError):
            RunConfig(tau=1.5)
        with pytest.raises(ConfigError):
            RunConfig(neighbor_order="sideways")
        with pytest.raises(ConfigError):
            RunConfig(pick_policy="never")

    def test_pick_sequences(self):
        cfg = RunConfig(T=5, pick_policy="round-robin")
        assert pick_sequence(cfg, 3, RngStream(0)) == [0, 1, 2, 0, 1]
        cfg = RunConfig(T=5, pick_policy="random")
        a = pick_sequence(cfg, 6, RngStream(9))
        b = pick_sequence(cfg, 6, RngStream(9))
        assert a == b
        assert all(0 <= u < 6 for u in a)


class TestReliefFRun:
    def test_worked_example_trace(self, example_normalized):
        nd, stats = example_normalized
        cfg = RunConfig(T=4, pick_policy="round-robin")
        result = relieff_run(nd, cfg, RngStream(0), stats)
        for t, rec in enumerate(result.iterations):
            assert rec.picked == t
            hits, misses = GOLDEN_NEIGHBORS[t]
            assert rec.neighbors.hits == hits
            assert {c: list(v) for c, v in rec.neighbors.misses.items()} == misses
            np.testing.assert_allclose(rec.weights_after, GOLDEN_WT_ROWS[t], atol=1e-12)
        np.testing.assert_allclose(result.average_weights, GOLDEN_AVERAGE, atol=1e-12)
        assert result.selected(0.5) == [0, 1, 2]

    def test_determinism(self, example_normalized):
        nd, stats = example_normalized
        cfg = RunConfig(T=6, pick_policy="random", seed=3)
        a = relieff_run(nd, cfg, RngStream(3), stats)
        b = relieff_run(nd, cfg, RngStream(3), stats)
        np.testing.assert_array_equal(a.average_weights, b.average_weights)
        assert [r.picked for r in a.iterations] == [r.picked for r in b.iterations]

    def test_scale_invariance(self, example_dataset):
        scaled = Dataset(
            example_dataset.samples * 7.3,
            example_dataset.labels.copy(),
            list(example_dataset.feature_names),
        )
        nd_a, st_a = normalize(example_dataset)
        nd_b, st_b = normalize(scaled)
        cfg = RunConfig(T=4, pick_policy="round-robin")
        a = relieff_run(nd_a, cfg, RngStream(0), st_a)
        b = relieff_run(nd_b, cfg, RngStream(0), st_b)
        np.testing.assert_allclose(a.average_weights, b.average_weights, atol=1e-12)
        assert a.selected(0.5) == b.selected(0.5)

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(17)
        rows = rng.random((6, 4)) + 0.1
        labels = np.array([0, 0, 1, 1, 2, 2])
        perm = [2, 0, 3, 1]
        ds_a = Dataset(rows, labels, [f"F{i}" for i in range(4)])
        ds_b = Dataset(rows[:, perm], labels, [f"F{i}" for i in range(4)])
        cfg = RunConfig(T=6, pick_policy="round-robin")
        nd_a, st_a = normalize(ds_a)
        nd_b, st_b = normalize(ds_b)
        a = relieff_run(nd_a, cfg, RngStream(0), st_a)
        b = relieff_run(nd_b, cfg, RngStream(0), st_b)
        np.testing.assert_allclose(
            a.average_weights[perm], b.average_weights, atol=1e-12
        )
