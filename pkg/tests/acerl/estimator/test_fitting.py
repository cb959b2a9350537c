import math

import numpy as np
import pytest

from src.acerl.config.models import AcerlConfig
from src.acerl.core.embedding import EmbeddingMatrix
from src.acerl.errors import DimensionMismatchError, DivergenceError
from src.acerl.estimator import fitting
from src.acerl.estimator.fitting import default_iterations, fit, inner_iterations, resolve_config
from src.acerl.estimator.gram import centered_gram, initial_embedding
from src.acerl.estimator.masking import update_masking_params


class TestResolveConfig:
    """Tests for data-dependent defaults."""

    def test_defaults_from_data(self, small_dataset):
        """Test s, T, K and init are filled in."""
        config = resolve_config(AcerlConfig(r=2), small_dataset)
        assert config.s == 15
        assert config.inner_iters == config.outer_iters == math.ceil(math.log(12))
        assert config.init == "fantope"

    def test_explicit_values_kept(self, small_dataset):
        """Test user-provided values win."""
        config = resolve_config(AcerlConfig(r=2, s=5, inner_iters=2, outer_iters=4, init="gram_pca"),
                                small_dataset)
        assert (config.s, config.inner_iters, config.outer_iters, config.init) == (5, 2, 4, "gram_pca")

    @pytest.mark.parametrize("kwargs", [{"r": 13}, {"r": 2, "s": 16}])
    def test_out_of_range(self, small_dataset, kwargs):
        """Test r > min(d, n) and s > d are rejected."""
        with pytest.raises(ValueError):
            resolve_config(AcerlConfig(**kwargs), small_dataset)

    def test_default_iterations(self):
        """Test ceil(ln n) with a floor of 1."""
        assert default_iterations(2) == 1
        assert default_iterations(500) == 7

    def test_growing_schedule(self):
        """Test the growing inner schedule increases with k up to ln n."""
        config = AcerlConfig(r=2, inner_schedule="growing")
        counts = [inner_iterations(config, k, 500, 3) for k in range(1, 6)]
        assert counts == [2, 3, 3, 4, 5]
        assert inner_iterations(AcerlConfig(r=2), 4, 500, 3) == 3


class TestFit:
    """Tests for the two-level estimator."""

    def test_trace_and_shapes(self, small_dataset):
        """Test one trace record per outer iteration and consistent shapes."""
        result = fit(small_dataset, AcerlConfig(r=2, s=6, outer_iters=3, inner_iters=2, seed=4))

        assert (result.q_hat.d, result.q_hat.r) == (15, 2)
        assert result.q_hat.row_sparsity <= 6
        assert [t.k for t in result.trace] == [1, 2, 3]
        assert all(t.surrogate >= 0.0 and 0.0 <= t.mean_p <= 1.0 for t in result.trace)
        assert result.masking.shape == (15,)
        assert result.seed == 4
        assert result.config.s == 6

    def test_deterministic(self, small_dataset):
        """Test equal seeds give bit-identical fits."""
        config = AcerlConfig(r=2, s=8, outer_iters=2, seed=11)
        a, b = fit(small_dataset, config), fit(small_dataset, config)
        assert np.array_equal(a.q_hat.Q, b.q_hat.Q)
        assert a.trace == b.trace

    def test_zero_start_stays_zero(self, small_dataset):
        """Test Q0 = 0 is a stationary point."""
        result = fit(small_dataset, AcerlConfig(r=2, outer_iters=2, inner_iters=2),
                     q0=EmbeddingMatrix.zeros(15, 2))
        assert result.q_hat.row_sparsity == 0
        assert np.all(result.masking == 0.0)

    def test_q0_shape_checked(self, small_dataset):
        """Test a wrongly shaped Q0 is rejected."""
        with pytest.raises(DimensionMismatchError):
            fit(small_dataset, AcerlConfig(r=2), q0=EmbeddingMatrix.zeros(15, 3))

    def test_huge_step_diverges(self, small_dataset, rng):
        """Test an absurd unscaled step raises DivergenceError."""
        config = AcerlConfig(r=2, eta=1e200, step_scaling="none", outer_iters=3, inner_iters=3)
        with pytest.raises(DivergenceError) as info:
            fit(small_dataset, config, q0=EmbeddingMatrix(rng.standard_normal((15, 2))))
        assert info.value.k >= 1

    def test_recovers_planted_support(self, planted_sparse):
        """Test the noiseless planted support is recovered with s = s*."""
        data, truth = planted_sparse
        result = fit(data, AcerlConfig(r=3, s=10, eta=0.5, init="gram_pca", seed=1))
        assert set(result.q_hat.row_support.tolist()) <= set(truth.support.tolist())

    def test_improves_on_zero(self, planted_sparse):
        """Test the fitted Gram is closer to the truth than the zero estimate."""
        data, truth = planted_sparse
        result = fit(data, AcerlConfig(r=3, s=10, eta=0.5, init="gram_pca", seed=2))
        target = truth.q_star.Q @ truth.q_star.Q.T
        error = np.linalg.norm(result.q_hat.Q @ result.q_hat.Q.T - target)
        assert error < np.linalg.norm(target)

    def test_loss_divergence_reports_last_step(self, small_dataset, monkeypatch):
        """Test a non-finite surrogate names the inner step that produced it."""
        monkeypatch.setattr(fitting, "expected_loss_surrogate", lambda *args, **kwargs: float("nan"))
        config = AcerlConfig(r=2, inner_iters=5, outer_iters=2, inner_schedule="growing")
        with pytest.raises(DivergenceError) as info:
            fit(small_dataset, config)
        assert (info.value.k, info.value.t, info.value.what) == (1, 2, "loss")

    def test_squared_weighting_draws_with_squared_p(self, small_dataset, rng, monkeypatch):
        """Test squared diagonal weighting samples masks with p**2."""
        q0 = EmbeddingMatrix(rng.standard_normal((15, 2)))
        drawn = []
        original = fitting.sample_mask

        def recording(params, generator):
            drawn.append(params.p.copy())
            return original(params, generator)

        monkeypatch.setattr(fitting, "sample_mask", recording)
        fit(small_dataset, AcerlConfig(r=2, outer_iters=1, inner_iters=1, diag_weight="squared"), q0=q0)
        assert np.allclose(drawn[0], update_masking_params(q0, small_dataset).p ** 2)

    @pytest.mark.parametrize("diag_weight", ["enumerated", "squared"])
    def test_moves_toward_exact_fit(self, planted_sparse, diag_weight):
        """Test noiseless data ends closer to the sample Gram matrix than the initial estimate."""
        data, _ = planted_sparse
        M = centered_gram(data).M
        start = initial_embedding(data, 3, 10, "gram_pca")
        result = fit(data, AcerlConfig(r=3, s=10, eta=0.5, init="gram_pca", diag_weight=diag_weight, seed=3))
        assert np.linalg.norm(result.q_hat.Q @ result.q_hat.Q.T - M) < 0.5 * np.linalg.norm(start.Q @ start.Q.T - M)
