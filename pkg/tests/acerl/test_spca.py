import numpy as np
import pytest

from src.acerl.core.dataset import NetworkDataset
from src.acerl.errors import DegenerateModelError, DimensionMismatchError
from src.acerl.estimator.gram import centered_gram
from src.acerl.metrics import subspace_distance
from src.acerl.spca import SpcaResult, fit_spca, spca_embed, spca_subject_embeddings


class TestFitSpca:
    """Tests for the sparse PCA baseline."""

    def test_orthonormal_and_sparse(self, small_dataset):
        """Test U has orthonormal columns and at most s non-zero rows."""
        result = fit_spca(small_dataset, r=2, s=6)
        assert np.allclose(result.U_x.T @ result.U_x, np.eye(2), atol=1e-10)
        assert np.count_nonzero(np.linalg.norm(result.U_x, axis=1)) <= 6
        assert result.support.size <= 6
        assert len(result.objective) == result.iterations

    def test_planted_support(self, planted_sparse):
        """Test noiseless data keeps the support on important edges."""
        data, truth = planted_sparse
        result = fit_spca(data, r=3, s=10)
        assert result.converged
        assert set(result.support.tolist()) <= set(truth.support.tolist())
        assert np.all(result.lambda_r > 0)

    def test_dense_matches_pca(self, rng):
        """Test s = d reproduces the leading eigenvalues of the covariance."""
        data = NetworkDataset(X=rng.standard_normal((5, 40)))
        result = fit_spca(data, r=2, s=5)
        top = np.sort(np.linalg.eigvalsh(centered_gram(data).M))[::-1][:2]
        assert np.allclose(result.lambda_r, top, rtol=1e-6)

    @pytest.mark.parametrize("r,s", [(0, 5), (13, 15), (3, 2), (2, 16)])
    def test_invalid_arguments(self, small_dataset, r, s):
        """Test r must be in [1, min(d, n)] and s in [r, d]."""
        with pytest.raises(ValueError):
            fit_spca(small_dataset, r=r, s=s)

    def test_truncated_rows_exactly_zero(self, small_dataset):
        """Test rows outside the kept set carry no roundoff after orthonormalization."""
        result = fit_spca(small_dataset, r=2, s=6)
        outside = np.setdiff1d(np.arange(small_dataset.d), result.support)
        assert result.support.size == 6
        assert np.all(result.U_x[outside] == 0.0)

    def test_planted_converges_quickly(self, planted_sparse):
        """Test noiseless data reaches a fixed point well before the iteration cap."""
        data, _ = planted_sparse
        result = fit_spca(data, r=3, s=10)
        assert result.converged
        assert result.iterations < 10
        top = np.sort(np.linalg.eigvalsh(centered_gram(data).M))[::-1][:3]
        assert np.isclose(result.objective[-1], top.sum(), rtol=1e-8)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_objective_non_decreasing(self, seed):
        """Test tr(U^T Sigma U) never decreases across recorded iterations."""
        rng = np.random.default_rng(seed)
        data = NetworkDataset(X=rng.standard_normal((30, 50)) * np.linspace(0.5, 3.0, 30)[:, None])
        result = fit_spca(data, r=3, s=8)
        objective = np.asarray(result.objective)
        assert objective.size == result.iterations >= 1
        assert np.all(np.diff(objective) >= -1e-10 * np.abs(objective[:-1]))

    def test_heteroscedastic_noise_misleads(self):
        """Test loud off-support noise pulls the sparse subspace away from the signal rows."""
        rng = np.random.default_rng(11)
        n, d = 2000, 20
        X = 0.3 * rng.standard_normal((d, n))
        X[:2] += rng.standard_normal((2, n))
        X[2:4] = 2.0 * rng.standard_normal((2, n))
        result = fit_spca(NetworkDataset(X=X), r=2, s=2)
        truth = np.eye(d)[:, :2]
        assert sorted(result.support.tolist()) == [2, 3]
        assert subspace_distance(result.U_x, truth) >= 1.0


class TestSpcaEmbed:
    """Tests for the whitened sparse PCA embedding."""

    def test_embed_single_and_batch(self, small_dataset):
        """Test one vector and a batch of columns agree."""
        result = fit_spca(small_dataset, r=2, s=15)
        batch = spca_embed(result, small_dataset.X)
        single = spca_embed(result, small_dataset.X[:, 3])
        assert batch.shape == (2, 12)
        assert np.allclose(batch[:, 3], single)
        assert spca_subject_embeddings(result, small_dataset).Z.shape == (2, 12)

    def test_zero_eigenvalue(self):
        """Test a non-positive eigenvalue cannot be inverted."""
        result = SpcaResult(U_x=np.eye(3)[:, :1], lambda_r=np.array([0.0]), support=np.array([0]))
        with pytest.raises(DegenerateModelError):
            spca_embed(result, np.ones(3))

    def test_length_mismatch(self):
        """Test the edge vector must have d entries."""
        result = SpcaResult(U_x=np.eye(3)[:, :1], lambda_r=np.array([1.0]), support=np.array([0]))
        with pytest.raises(DimensionMismatchError):
            spca_embed(result, np.ones(4))

    def test_as_embedding(self):
        """Test U diag(lambda)^{1/2}."""
        result = SpcaResult(U_x=np.eye(3)[:, :2], lambda_r=np.array([4.0, 1.0]), support=np.array([0, 1]))
        assert np.allclose(result.as_embedding().Q, [[2.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
