"""Diagnostics for choosing the latent dimension ``r`` and sparsity ``s``."""
import numpy as np
from scipy import linalg

from ..core.dataset import NetworkDataset
from ..core.embedding import EmbeddingMatrix
from ..estimator.gram import centered_data


def explained_variance_profile(data: NetworkDataset, r_max: int) -> np.ndarray:
    """
    Leading ``r_max`` eigenvalues of the sample covariance over its trace.

    :raises ValueError: If ``r_max`` is not in ``[1, min(d, n)]``.
    """
    limit = min(data.d, data.n)
    if not 1 <= r_max <= limit:
        raise ValueError(f"r_max must lie in [1, {limit}], got {r_max}")
    singular = linalg.svdvals(centered_data(data) / np.sqrt(data.n))
    eigenvalues = np.maximum(singular ** 2, 0.0)
    total = eigenvalues.sum()
    if total <= 0.0:
        return np.zeros(r_max)
    return eigenvalues[:r_max] / total


def edge_norm_profile(q_hat: EmbeddingMatrix) -> np.ndarray:
    """Row norms of ``Q_hat`` in descending order."""
    return np.sort(q_hat.row_norms)[::-1].copy()
