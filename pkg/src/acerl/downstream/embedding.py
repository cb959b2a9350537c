import logging
from typing import Literal, Optional, Union

import numpy as np
from scipy import linalg

from ..core.dataset import NetworkDataset
from ..core.embedding import EmbeddingMatrix, SubjectEmbedding
from ..errors import DegenerateModelError, DimensionMismatchError

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12
RIDGE_FACTOR = 1e-10
RESIDUAL_FLOOR = 0.05
VARIANCE_FLOOR = 1e-12

SubjectWeighting = Literal["least_squares", "precision_weighted"]


def _edge_matrix(data: Union[NetworkDataset, np.ndarray]) -> np.ndarray:
    X = data.X if isinstance(data, NetworkDataset) else np.asarray(data, dtype=np.float64)
    return X[:, None] if X.ndim == 1 else X


def edge_precision(
        q_hat: EmbeddingMatrix,
        data: Union[NetworkDataset, np.ndarray],
        floor: float = RESIDUAL_FLOOR
) -> np.ndarray:
    """
    Per-edge weights ``1 / max(Var(x_e) - ||q_e||^2, floor * Var(x_e))``.

    ``Var(x_e) - ||q_e||^2`` is the noise variance the embedding leaves on
    edge ``e`` (biased sample variance across subjects). The floor bounds the
    weight of edges the embedding explains completely.

    :raises ValueError: If ``floor`` is outside ``(0, 1]``.
    """
    X = _edge_matrix(data)
    if X.shape[0] != q_hat.d:
        raise DimensionMismatchError(f"data has d={X.shape[0]} but Q has {q_hat.d} rows")
    if not 0.0 < floor <= 1.0:
        raise ValueError(f"floor must lie in (0, 1], got {floor}")
    variance = np.var(X, axis=1)
    residual = np.maximum(variance - q_hat.row_norms ** 2, floor * variance)
    return 1.0 / np.maximum(residual, VARIANCE_FLOOR)


def embed_edges(q_hat: EmbeddingMatrix, X: np.ndarray, weights: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Least-squares coordinates ``(Q^T W Q + eps I)^{-1} Q^T W X`` for edge vectors in columns of ``X``.

    ``W = diag(weights)`` defaults to the identity. ``eps`` is 0 unless
    ``Q^T W Q`` has condition number above 1e12, in which case
    ``eps = 1e-10 tr(Q^T W Q) / r``.

    :raises DegenerateModelError: If ``Q`` is identically zero.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.shape[0] != q_hat.d:
        raise DimensionMismatchError(f"edge vectors of length {X.shape[0]} do not match d={q_hat.d}")
    Q = q_hat.Q
    if not np.any(Q):
        raise DegenerateModelError("cannot embed subjects with an all-zero edge embedding")

    WQ = Q
    if weights is not None:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (q_hat.d,):
            raise DimensionMismatchError(f"{weights.shape} weights for d={q_hat.d} edges")
        if not np.all(np.isfinite(weights) & (weights > 0)):
            raise ValueError("edge weights must be positive and finite")
        WQ = weights[:, None] * Q

    gram = WQ.T @ Q
    gram = (gram + gram.T) / 2.0
    if np.linalg.cond(gram) > CONDITION_LIMIT:
        ridge = RIDGE_FACTOR * float(np.trace(gram)) / q_hat.r
        logger.warning("Q^T W Q is near-singular; applying ridge %.3g", ridge)
        gram = gram + ridge * np.eye(q_hat.r)

    return linalg.solve(gram, WQ.T @ X, assume_a="pos")


def subject_embeddings(
        q_hat: EmbeddingMatrix,
        data: Union[NetworkDataset, np.ndarray],
        weights: Optional[np.ndarray] = None
) -> SubjectEmbedding:
    return SubjectEmbedding(embed_edges(q_hat, _edge_matrix(data), weights))
