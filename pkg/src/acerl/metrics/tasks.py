from typing import Iterable

import numpy as np
from sklearn import metrics as sk_metrics

from ..errors import DimensionMismatchError


def _paired(pred, truth) -> tuple[np.ndarray, np.ndarray]:
    pred, truth = np.asarray(pred).ravel(), np.asarray(truth).ravel()
    if pred.shape != truth.shape:
        raise DimensionMismatchError(f"length mismatch: {pred.size} vs {truth.size}")
    if truth.size == 0:
        raise ValueError("truth must not be empty")
    return pred, truth


def classification_accuracy(pred, truth) -> float:
    """Fraction of matching labels."""
    pred, truth = _paired(pred, truth)
    return float(np.mean(pred == truth))


def selection_recall(selected: Iterable[int], true_support: Iterable[int]) -> float:
    """``|selected & C*| / |C*|``."""
    truth = {int(e) for e in true_support}
    if not truth:
        raise ValueError("true support must not be empty")
    chosen = {int(e) for e in selected}
    return len(chosen & truth) / len(truth)


def mean_squared_error(pred, truth) -> float:
    pred, truth = _paired(pred, truth)
    return float(sk_metrics.mean_squared_error(truth, pred))


def rand_index(labels_a, labels_b) -> float:
    """
    Fraction of node pairs on which two partitions agree.

    :raises DimensionMismatchError: On unequal lengths.
    :raises ValueError: With fewer than two nodes.
    """
    a, b = _paired(labels_a, labels_b)
    if a.size < 2:
        raise ValueError("rand index needs at least two nodes")
    return float(sk_metrics.rand_score(b, a))
