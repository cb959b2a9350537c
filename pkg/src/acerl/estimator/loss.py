"""
Masked contrastive loss

    L(Q; D, A) = -tr(Q Q^T (I - A) M A) + ||Q Q^T||_F^2 / 8

and its gradient ``-(B + B^T) Q + Q (Q^T Q) / 2`` with ``B = (I - A) M A``.

Everything is evaluated through the centred data ``X_c`` (``M = X_c X_c^T / n``)
so a step costs O(ndr + dr^2) and no ``d x d`` product is formed.
"""
import logging
from typing import Optional, Union

import numpy as np

from .gram import CenteredGram, centered_data, centered_gram
from .masking import MaskDiagonal, MaskingParams, diagonal_weights
from ..config.models import DiagWeight
from ..core.dataset import NetworkDataset
from ..core.embedding import EmbeddingMatrix
from ..errors import DimensionMismatchError

logger = logging.getLogger(__name__)

QLike = Union[EmbeddingMatrix, np.ndarray]


def _as_array(q: QLike) -> np.ndarray:
    if isinstance(q, EmbeddingMatrix):
        return q.Q
    return np.asarray(q, dtype=np.float64)


class ContrastiveObjective:
    """Loss and gradient over one dataset, with the centring done once."""

    def __init__(self, data: NetworkDataset) -> None:
        self.d = data.d
        self.n = data.n
        self._Xc = centered_data(data)

    def _check(self, Q: np.ndarray, mask: MaskDiagonal) -> None:
        if Q.ndim != 2 or Q.shape[0] != self.d:
            raise DimensionMismatchError(f"Q of shape {Q.shape} does not match d={self.d}")
        if mask.d != self.d:
            raise DimensionMismatchError(f"mask of length {mask.d} does not match d={self.d}")

    def loss(self, q: QLike, mask: MaskDiagonal) -> float:
        Q = _as_array(q)
        self._check(Q, mask)
        a = mask.a[:, None]
        kept = self._Xc.T @ (a * Q)
        dropped = self._Xc.T @ ((1.0 - a) * Q)
        gram = Q.T @ Q
        return float(-np.sum(kept * dropped) / self.n + np.sum(gram * gram) / 8.0)

    def gradient(self, q: QLike, mask: MaskDiagonal) -> np.ndarray:
        Q = _as_array(q)
        self._check(Q, mask)
        a = mask.a[:, None]
        BQ = (1.0 - a) * (self._Xc @ (self._Xc.T @ (a * Q)))
        BtQ = a * (self._Xc @ (self._Xc.T @ ((1.0 - a) * Q)))
        return -(BQ + BtQ) / self.n + 0.5 * Q @ (Q.T @ Q)


def empirical_loss(q: QLike, data: NetworkDataset, mask: MaskDiagonal) -> float:
    """Contrastive loss of ``Q`` under one sampled mask."""
    return ContrastiveObjective(data).loss(q, mask)


def loss_gradient(q: QLike, data: NetworkDataset, mask: MaskDiagonal) -> np.ndarray:
    """Analytic ``d x r`` gradient of :func:`empirical_loss` with respect to ``Q``."""
    return ContrastiveObjective(data).gradient(q, mask)


def expected_loss_surrogate(
        q: QLike,
        data: NetworkDataset,
        params: MaskingParams,
        diag_weight: DiagWeight = "enumerated",
        gram: Optional[CenteredGram] = None
) -> float:
    """
    ``||Q Q^T - N||_F^2 / 8`` with ``N = Delta(M) + W D(M)``.

    Up to a constant independent of ``Q`` this is the loss averaged over masks.
    """
    Q = _as_array(q)
    gram = gram if gram is not None else centered_gram(data)
    if Q.ndim != 2 or Q.shape[0] != gram.d:
        raise DimensionMismatchError(f"Q of shape {Q.shape} does not match d={gram.d}")
    if params.d != gram.d:
        raise DimensionMismatchError(f"p of length {params.d} does not match d={gram.d}")

    w = diagonal_weights(params, diag_weight)
    diag = gram.diagonal
    NQ = gram.M @ Q - ((1.0 - w) * diag)[:, None] * Q
    N_sq = float(np.sum(gram.M * gram.M) - np.sum(diag ** 2) + np.sum((w * diag) ** 2))
    QtQ = Q.T @ Q
    value = (float(np.sum(QtQ * QtQ)) - 2.0 * float(np.sum(Q * NQ)) + N_sq) / 8.0
    if value < 0.0:
        logger.debug("Expected-loss surrogate is negative (%.3g); expanded terms cancelled", value)
    return value
