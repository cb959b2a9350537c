import pytest

from src.acerl.errors import DimensionMismatchError
from src.acerl.metrics.tasks import (
    classification_accuracy,
    mean_squared_error,
    rand_index,
    selection_recall,
)


class TestTaskMetrics:
    """Tests for the downstream task metrics."""

    def test_accuracy(self):
        """Test the fraction of matching labels."""
        assert classification_accuracy([0, 1, 1, 0], [0, 1, 0, 0]) == 0.75

    def test_accuracy_length_mismatch(self):
        """Test unequal lengths are rejected."""
        with pytest.raises(DimensionMismatchError):
            classification_accuracy([0, 1], [0])

    def test_recall(self):
        """Test |selected & C*| / |C*|."""
        assert selection_recall([1, 2, 3], [2, 3, 4, 5]) == 0.5

    def test_recall_empty_truth(self):
        """Test an empty true support is rejected."""
        with pytest.raises(ValueError):
            selection_recall([1], [])

    def test_mse(self):
        assert mean_squared_error([1.0, 2.0], [1.0, 4.0]) == 2.0

    def test_rand_index(self):
        """Test (0,0,1,1) against (0,1,0,1) agrees on a third of the pairs."""
        assert rand_index([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(1.0 / 3.0)
        assert rand_index([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0

    def test_rand_index_single_node(self):
        """Test fewer than two nodes are rejected."""
        with pytest.raises(ValueError):
            rand_index([0], [0])
