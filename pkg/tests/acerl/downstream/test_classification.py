import numpy as np
import pytest

from src.acerl.core.embedding import EmbeddingMatrix, SubjectEmbedding
from src.acerl.downstream.classification import (
    classify,
    fit_classifier,
    fit_regressor,
    predict_labels,
    predict_proba,
    predict_trait,
    predict_values,
)
from src.acerl.errors import DimensionMismatchError


class TestClassifier:
    """Tests for the logistic classifier on subject embeddings."""

    def test_learns_linear_rule(self, rng):
        """Test a noisy linear rule is learned well above chance."""
        Z = rng.standard_normal((2, 300))
        y = (Z[0] - Z[1] + 0.3 * rng.standard_normal(300) > 0).astype(int)
        clf = fit_classifier(SubjectEmbedding(Z), y)

        accuracy = np.mean(predict_labels(clf, SubjectEmbedding(Z)) == y)

        assert accuracy > 0.85
        assert clf.w[0] > 0 > clf.w[1]

    def test_separable_stays_finite(self):
        """Test perfectly separable labels give finite coefficients."""
        Z = SubjectEmbedding(np.array([[-2.0, -1.0, 1.0, 2.0]]))
        clf = fit_classifier(Z, np.array([0, 0, 1, 1]))
        assert np.all(np.isfinite(clf.w))
        assert predict_labels(clf, Z).tolist() == [0, 0, 1, 1]

    def test_probabilities_in_unit_interval(self, rng):
        """Test predicted probabilities lie in [0, 1]."""
        Z = SubjectEmbedding(rng.standard_normal((3, 50)))
        clf = fit_classifier(Z, (rng.uniform(size=50) > 0.5).astype(int))
        proba = predict_proba(clf, Z)
        assert np.all((proba >= 0) & (proba <= 1))

    def test_single_class_rejected(self):
        """Test training needs both classes."""
        with pytest.raises(ValueError):
            fit_classifier(SubjectEmbedding(np.ones((1, 4))), np.zeros(4))

    def test_label_length_checked(self):
        """Test the label count must equal n."""
        with pytest.raises(DimensionMismatchError):
            fit_classifier(SubjectEmbedding(np.ones((1, 4))), np.array([0, 1]))

    def test_classify_edge_vector(self, rng):
        """Test classification of a raw edge vector goes through the embedding."""
        Q = rng.standard_normal((6, 1))
        Z = np.array([[-2.0, -1.0, 1.0, 2.0]])
        clf = fit_classifier(SubjectEmbedding(Z), np.array([0, 0, 1, 1]))
        q_hat = EmbeddingMatrix(Q)
        assert classify(clf, q_hat, Q[:, 0] * 3.0) == 1
        assert classify(clf, q_hat, Q[:, 0] * -3.0) == 0


class TestRegressor:
    """Tests for ridge regression of a continuous trait."""

    def test_recovers_coefficients(self, rng):
        """Test an exact linear trait is recovered."""
        Z = rng.standard_normal((2, 100))
        trait = 2.0 * Z[0] - Z[1] + 3.0
        reg = fit_regressor(SubjectEmbedding(Z), trait)
        assert np.allclose(reg.w, [2.0, -1.0], atol=1e-3)
        assert reg.intercept == pytest.approx(3.0, abs=1e-3)
        assert np.allclose(predict_values(reg, SubjectEmbedding(Z)), trait, atol=1e-2)

    def test_predict_trait(self, rng):
        """Test prediction from a raw edge vector."""
        Q = rng.standard_normal((5, 1))
        Z = rng.standard_normal((1, 30))
        reg = fit_regressor(SubjectEmbedding(Z), 4.0 * Z[0])
        assert predict_trait(reg, EmbeddingMatrix(Q), Q[:, 0]) == pytest.approx(4.0, abs=1e-3)

    def test_length_checked(self):
        """Test the trait length must equal n."""
        with pytest.raises(DimensionMismatchError):
            fit_regressor(SubjectEmbedding(np.ones((1, 4))), np.ones(3))
