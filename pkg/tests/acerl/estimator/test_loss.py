import itertools

import numpy as np
import pytest

from src.acerl.core.dataset import NetworkDataset
from src.acerl.core.embedding import EmbeddingMatrix
from src.acerl.errors import DimensionMismatchError
from src.acerl.estimator.gram import centered_gram
from src.acerl.estimator.loss import (
    ContrastiveObjective,
    empirical_loss,
    expected_loss_surrogate,
    loss_gradient,
)
from src.acerl.estimator.masking import MaskDiagonal, MaskingParams, sample_mask


def _dense_loss(Q, data, a):
    """Loss from the explicit d x d formula."""
    M = centered_gram(data).M
    A = np.diag(a)
    QQt = Q @ Q.T
    return -np.trace(QQt @ (np.eye(len(a)) - A) @ M @ A) + np.sum(QQt ** 2) / 8.0


def _exact_expectation(Q, data, p):
    """Mask-averaged loss by enumerating all 3^d masks."""
    values = np.array([0.0, 0.5, 1.0])
    total = 0.0
    for choice in itertools.product(range(3), repeat=len(p)):
        choice = np.array(choice)
        probs = np.where(choice == 1, p, (1.0 - p) / 2.0)
        total += np.prod(probs) * _dense_loss(Q, data, values[choice])
    return total


class TestEmpiricalLoss:
    """Tests for the masked contrastive loss."""

    def test_matches_dense_formula(self, rng):
        """Test the X_c evaluation agrees with -tr(QQ^T (I-A) M A) + ||QQ^T||^2/8."""
        data = NetworkDataset(X=rng.standard_normal((6, 9)))
        Q = rng.standard_normal((6, 2))
        mask = sample_mask(MaskingParams.constant(6, 0.4), rng)

        assert empirical_loss(Q, data, mask) == pytest.approx(_dense_loss(Q, data, mask.a), rel=1e-10)

    def test_full_mask_leaves_regulariser(self, rng):
        """Test A = I gives only the ||QQ^T||^2/8 term."""
        data = NetworkDataset(X=rng.standard_normal((4, 5)))
        Q = rng.standard_normal((4, 2))
        expected = np.sum((Q @ Q.T) ** 2) / 8.0
        assert empirical_loss(Q, data, MaskDiagonal.constant(4, 1.0)) == pytest.approx(expected)

    def test_accepts_embedding_matrix(self, rng):
        """Test EmbeddingMatrix and raw arrays give the same value."""
        data = NetworkDataset(X=rng.standard_normal((4, 5)))
        Q = rng.standard_normal((4, 1))
        mask = MaskDiagonal.constant(4, 0.5)
        assert empirical_loss(EmbeddingMatrix(Q), data, mask) == empirical_loss(Q, data, mask)

    def test_dimension_mismatch(self, small_dataset):
        """Test Q and mask must match d."""
        with pytest.raises(DimensionMismatchError):
            empirical_loss(np.zeros((3, 1)), small_dataset, MaskDiagonal.constant(15, 0.5))
        with pytest.raises(DimensionMismatchError):
            empirical_loss(np.zeros((15, 1)), small_dataset, MaskDiagonal.constant(3, 0.5))

    def test_rotation_invariant(self, rng):
        """Test L(Q O) = L(Q) for an orthogonal r x r matrix O."""
        data = NetworkDataset(X=rng.standard_normal((8, 11)))
        Q = rng.standard_normal((8, 3))
        O, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        mask = sample_mask(MaskingParams.constant(8, 0.6), rng)
        assert empirical_loss(Q @ O, data, mask) == pytest.approx(empirical_loss(Q, data, mask), rel=1e-10)


class TestLossGradient:
    """Tests for the analytic gradient."""

    def test_finite_differences(self):
        """Test analytic and central-difference gradients agree to 1e-5 on 20 instances."""
        rng = np.random.default_rng(5)
        h = 1e-6
        for _ in range(20):
            d, n, r = 6, 8, 2
            data = NetworkDataset(X=rng.standard_normal((d, n)))
            Q = rng.standard_normal((d, r))
            mask = sample_mask(MaskingParams(rng.uniform(0, 1, d)), rng)
            objective = ContrastiveObjective(data)

            numeric = np.zeros_like(Q)
            for i in range(d):
                for j in range(r):
                    step = np.zeros_like(Q)
                    step[i, j] = h
                    numeric[i, j] = (objective.loss(Q + step, mask) - objective.loss(Q - step, mask)) / (2 * h)
            analytic = loss_gradient(Q, data, mask)

            assert np.linalg.norm(analytic - numeric) <= 1e-5 * max(np.linalg.norm(analytic), 1.0)

    def test_gradient_shape(self, small_dataset, rng):
        """Test the gradient is d x r."""
        grad = loss_gradient(rng.standard_normal((15, 3)), small_dataset, MaskDiagonal.constant(15, 0.5))
        assert grad.shape == (15, 3)


class TestExpectedLossSurrogate:
    """Tests for the closed-form mask average."""

    def test_matches_exhaustive_expectation(self):
        """Test surrogate differences equal exact expected-loss differences."""
        rng = np.random.default_rng(9)
        for _ in range(5):
            d, n, r = 5, 7, 2
            data = NetworkDataset(X=rng.standard_normal((d, n)))
            p = rng.uniform(0.0, 1.0, d)
            params = MaskingParams(p)
            Q1, Q2 = rng.standard_normal((d, r)), rng.standard_normal((d, r))

            exact = _exact_expectation(Q1, data, p) - _exact_expectation(Q2, data, p)
            closed = expected_loss_surrogate(Q1, data, params) - expected_loss_surrogate(Q2, data, params)

            assert closed == pytest.approx(exact, rel=1e-8, abs=1e-10)

    def test_monte_carlo_agreement(self):
        """Test 10^4 sampled masks reproduce the surrogate difference within sampling error."""
        rng = np.random.default_rng(21)
        for _ in range(5):
            d, n, r = 20, 15, 3
            data = NetworkDataset(X=rng.standard_normal((d, n)))
            params = MaskingParams(rng.uniform(0.0, 1.0, d))
            Q1, Q2 = rng.standard_normal((d, r)), rng.standard_normal((d, r))
            objective = ContrastiveObjective(data)

            diffs = []
            for _ in range(10_000):
                mask = sample_mask(params, rng)
                diffs.append(objective.loss(Q1, mask) - objective.loss(Q2, mask))
            diffs = np.asarray(diffs)
            se = diffs.std(ddof=1) / np.sqrt(diffs.size)

            closed = expected_loss_surrogate(Q1, data, params) - expected_loss_surrogate(Q2, data, params)

            assert abs(diffs.mean() - closed) <= 5 * se + 1e-9

    def test_zero_at_exact_fit(self):
        """Test Q Q^T = N gives a zero surrogate."""
        # one edge with p = 1: N = M, and M = var(x) is rank one
        data = NetworkDataset(X=np.array([[1.0, -1.0, 2.0, 0.0]]))
        M = centered_gram(data).M
        Q = np.sqrt(M)
        assert expected_loss_surrogate(Q, data, MaskingParams.constant(1, 1.0)) == pytest.approx(0.0, abs=1e-12)

    def test_non_negative(self, small_dataset, rng):
        """Test the surrogate is never negative."""
        value = expected_loss_surrogate(rng.standard_normal((15, 2)), small_dataset,
                                        MaskingParams.constant(15, 0.3))
        assert value >= 0.0

    def test_squared_weighting_differs(self, small_dataset, rng):
        """Test the squared diagonal weighting changes the value for p in (0, 1)."""
        Q = rng.standard_normal((15, 2))
        params = MaskingParams.constant(15, 0.5)
        assert expected_loss_surrogate(Q, small_dataset, params, "enumerated") != pytest.approx(
            expected_loss_surrogate(Q, small_dataset, params, "squared"))

    @pytest.mark.parametrize("mode", ["enumerated", "squared"])
    def test_matches_dense_norm(self, rng, mode):
        """Test the expansion equals ||Q Q^T - N||_F^2 / 8 formed densely."""
        data = NetworkDataset(X=rng.standard_normal((7, 10)))
        M = centered_gram(data).M
        p = rng.uniform(0.0, 1.0, 7)
        w = p if mode == "enumerated" else p ** 2
        N = M - np.diag(np.diag(M)) + np.diag(w * np.diag(M))
        Q = rng.standard_normal((7, 2))
        expected = np.sum((Q @ Q.T - N) ** 2) / 8.0
        assert expected_loss_surrogate(Q, data, MaskingParams(p), mode) == pytest.approx(expected, rel=1e-10)

    def test_zero_embedding_value(self, small_dataset):
        """Test Q = 0 gives ||N||_F^2 / 8 with N = Delta(M) + diag(p) D(M)."""
        M = centered_gram(small_dataset).M
        N = M - np.diag(np.diag(M)) + 0.25 * np.diag(np.diag(M))
        value = expected_loss_surrogate(np.zeros((15, 2)), small_dataset, MaskingParams.constant(15, 0.25))
        assert value == pytest.approx(np.sum(N ** 2) / 8.0, rel=1e-12)
