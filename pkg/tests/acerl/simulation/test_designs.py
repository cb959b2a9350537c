import numpy as np
import pydantic
import pytest

from src.acerl.simulation.designs import (
    CommunitySimSpec,
    SparseSimSpec,
    community_labels,
    community_levels,
    gen_community,
    gen_sparse,
)


class TestSparseDesign:
    """Tests for the sparse heteroscedastic design."""

    def test_noiseless_rows_outside_support_vanish(self, planted_sparse):
        """Test sigma=0 leaves exactly the planted rows non-zero."""
        data, truth = planted_sparse
        nonzero = np.flatnonzero(np.any(data.X != 0.0, axis=1))
        assert nonzero.tolist() == truth.support.tolist()
        assert truth.q_star.row_support.tolist() == truth.support.tolist()

    def test_shapes(self, planted_sparse):
        """Test d = v(v-1)/2 and the attached edge map and labels."""
        data, truth = planted_sparse
        assert (data.d, data.n) == (66, 240)
        assert data.edge_map.node_count == 12
        assert truth.support.size == 10
        assert truth.Z.shape == (3, 240)
        assert np.array_equal(data.labels, (truth.Z[0] > truth.Z[1]).astype(int))
        assert set(np.unique(data.labels)) == {0, 1}

    def test_signal_scale(self, planted_sparse):
        """Test noiseless X equals Q* Z."""
        data, truth = planted_sparse
        assert np.allclose(data.X, truth.q_star.Q @ truth.Z)

    def test_deterministic(self):
        """Test the same spec reproduces the same data."""
        spec = SparseSimSpec(n=20, v=6, r=2, s_star=4, sigma_xi=0.5, seed=9)
        a, b = gen_sparse(spec)[0], gen_sparse(spec)[0]
        assert np.array_equal(a.X, b.X)
        assert not np.array_equal(a.X, gen_sparse(spec.model_copy(update={"seed": 10}))[0].X)

    def test_noise_grows_with_edge_index(self):
        """Test the noise standard deviation increases along the edges."""
        spec = SparseSimSpec(n=4000, v=5, r=1, s_star=1, sigma_xi=1.0, seed=1)
        data, truth = gen_sparse(spec)
        off = np.setdiff1d(np.arange(10), truth.support)
        sd = data.X[off].std(axis=1)
        assert np.allclose(sd, (off + 1) / 10.0, rtol=0.1)

    def test_no_labels_for_rank_one(self):
        """Test r=1 designs carry no labels."""
        data, truth = gen_sparse(SparseSimSpec(n=5, v=3, r=1, s_star=1))
        assert data.labels is None and truth.labels is None

    def test_sparsity_above_d(self):
        """Test s* > d is rejected."""
        with pytest.raises(pydantic.ValidationError):
            SparseSimSpec(n=10, v=3, s_star=4)


class TestCommunityDesign:
    """Tests for the block-structured design."""

    def test_balanced_labels(self, rng):
        """Test community sizes differ by at most one."""
        sizes = np.bincount(community_labels(rng, 20, 3))
        assert sizes.tolist() == [7, 7, 6]

    def test_generated_design(self):
        """Test shapes, level range and full support."""
        data, truth = gen_community(CommunitySimSpec(n=30, v=9, r=2, G=3, seed=4))
        assert (data.d, data.n) == (36, 30)
        assert np.all((truth.levels >= 0.1) & (truth.levels <= 1.1))
        assert np.bincount(truth.node_labels).tolist() == [3, 3, 3]
        assert truth.q_star.row_sparsity == 36
        assert np.allclose(data.X, truth.q_star.Q @ truth.Z)

    @pytest.mark.parametrize("G", [2, 3, 5])
    def test_levels_occupy_distinct_strata(self, rng, G):
        """Test every community level falls in its own stratum of width 1/G."""
        for _ in range(20):
            levels = community_levels(rng, G)
            strata = np.floor((levels - 0.1) * G).astype(int)
            assert sorted(strata.tolist()) == list(range(G))

    def test_levels_marginally_uniform(self, rng):
        """Test each community level is uniform on [0.1, 1.1) across draws."""
        first = np.array([community_levels(rng, 2)[0] for _ in range(4000)])
        assert first.min() >= 0.1 and first.max() < 1.1
        assert first.mean() == pytest.approx(0.6, abs=0.02)
        assert np.mean(first < 0.35) == pytest.approx(0.25, abs=0.03)

    def test_jitter_keeps_levels_floor(self):
        """Test jittered designs still generate finite data."""
        data, _ = gen_community(CommunitySimSpec(n=10, v=6, r=2, G=2, jitter=0.5, sigma_xi=0.1, seed=2))
        assert np.all(np.isfinite(data.X))

    def test_too_many_groups(self):
        """Test G > v is rejected."""
        with pytest.raises(pydantic.ValidationError):
            CommunitySimSpec(n=10, v=3, G=4)
