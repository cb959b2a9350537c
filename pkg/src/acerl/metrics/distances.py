"""Rotation-aware distances between embeddings."""
from typing import Union

import numpy as np
from scipy import linalg

from ..core.embedding import EmbeddingMatrix
from ..errors import DimensionMismatchError

MatrixLike = Union[EmbeddingMatrix, np.ndarray]


def _matrix(value: MatrixLike) -> np.ndarray:
    if isinstance(value, EmbeddingMatrix):
        return value.Q
    return np.asarray(value, dtype=np.float64)


def _same_shape(A: np.ndarray, B: np.ndarray) -> None:
    if A.shape != B.shape:
        raise DimensionMismatchError(f"shape mismatch: {A.shape} vs {B.shape}")


def procrustes_dist(A: MatrixLike, B: MatrixLike) -> float:
    """
    ``min_O ||A O - B||_F`` over orthogonal ``O``.

    :param A: ``d x r`` matrix.
    :param B: ``d x r`` matrix.
    :return: The distance.
    :raises DimensionMismatchError: If the shapes differ.
    """
    A, B = _matrix(A), _matrix(B)
    _same_shape(A, B)
    O, _ = linalg.orthogonal_procrustes(A, B)
    return float(np.linalg.norm(A @ O - B))


def gram_error(q_hat: MatrixLike, q_star: MatrixLike) -> float:
    """``||Q_hat Q_hat^T - Q* Q*^T||_F``; ranks may differ, row counts may not."""
    A, B = _matrix(q_hat), _matrix(q_star)
    if A.shape[0] != B.shape[0]:
        raise DimensionMismatchError(f"row count mismatch: {A.shape[0]} vs {B.shape[0]}")
    return float(np.linalg.norm(A @ A.T - B @ B.T))


def subspace_distance(U: np.ndarray, V: np.ndarray) -> float:
    """``||U U^T - V V^T||_F`` for orthonormal bases of equal shape."""
    U, V = _matrix(U), _matrix(V)
    _same_shape(U, V)
    return float(np.linalg.norm(U @ U.T - V @ V.T))
