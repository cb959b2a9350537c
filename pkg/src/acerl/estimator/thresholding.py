import numpy as np

from ..core.embedding import EmbeddingMatrix
from ..utils import top_rows_order


def hard_threshold(q: EmbeddingMatrix, s: int) -> EmbeddingMatrix:
    """
    ``HT(Q, s)``: keep the ``s`` rows with the largest l2 norms verbatim, zero the rest.

    Ties are broken in favour of the smaller edge index.
    """
    if s < 0:
        raise ValueError(f"sparsity level must be non-negative, got {s}")
    if s >= q.d:
        return q
    keep = top_rows_order(q.row_norms)[:s]
    out = np.zeros_like(q.Q)
    out[keep] = q.Q[keep]
    return EmbeddingMatrix(out)
