"""
Permutation-minimised misclustering losses.

For membership matrices ``Theta_hat`` and ``Theta`` the overall loss is
``L = min_J ||Theta_hat J - Theta||_0 / v`` and the worst-community loss is
``L~ = min_J max_g ||(Theta_hat J)_g - Theta_g||_0 / v_g``. A misplaced node
changes two entries of its row, so both losses lie in ``[0, 2]``.
"""
import itertools
import logging
from typing import Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..downstream.community import CommunityAssignment
from ..errors import DimensionMismatchError

logger = logging.getLogger(__name__)

EXHAUSTIVE_MAX_G = 8
MAX_G = 12

AssignmentLike = Union[CommunityAssignment, np.ndarray]


def _theta(value: AssignmentLike) -> np.ndarray:
    if isinstance(value, CommunityAssignment):
        return value.theta
    return CommunityAssignment(np.asarray(value)).theta


def _losses(hat_labels: np.ndarray, true_labels: np.ndarray, perm: np.ndarray, G: int) -> tuple[float, float]:
    wrong = perm[hat_labels] != true_labels
    v = true_labels.size
    overall = 2.0 * wrong.sum() / v
    worst = 0.0
    for g in range(G):
        members = true_labels == g
        size = members.sum()
        if size:
            worst = max(worst, 2.0 * wrong[members].sum() / size)
    return float(overall), float(worst)


def misclustering_losses(theta_hat: AssignmentLike, theta: AssignmentLike) -> tuple[float, float]:
    """
    Overall and worst-community misclustering losses ``(L, L~)``.

    Permutations are enumerated exhaustively for ``G <= 8``. Beyond that the
    overall loss is minimised by linear assignment and ``L~`` is evaluated at
    that same permutation, which can overestimate the true minimum.

    :raises DimensionMismatchError: If the shapes differ.
    :raises ValueError: If ``G > 12``.
    """
    hat, true = _theta(theta_hat), _theta(theta)
    if hat.shape != true.shape:
        raise DimensionMismatchError(f"membership shapes differ: {hat.shape} vs {true.shape}")
    G = true.shape[1]
    if G > MAX_G:
        raise ValueError(f"misclustering losses support at most {MAX_G} communities, got {G}")

    hat_labels = np.argmax(hat, axis=1)
    true_labels = np.argmax(true, axis=1)

    if G <= EXHAUSTIVE_MAX_G:
        best_overall, best_worst = np.inf, np.inf
        for perm in itertools.permutations(range(G)):
            overall, worst = _losses(hat_labels, true_labels, np.asarray(perm), G)
            best_overall = min(best_overall, overall)
            best_worst = min(best_worst, worst)
        return best_overall, best_worst

    # agreement counts between estimated column a and true column b
    agreement = hat.T @ true
    rows, cols = linear_sum_assignment(-agreement)
    perm = np.empty(G, dtype=np.int64)
    perm[rows] = cols
    logger.debug("Hungarian matching used for G=%d", G)
    return _losses(hat_labels, true_labels, perm, G)
