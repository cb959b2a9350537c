"""
Sparse PCA baseline: row-truncated orthogonal power iteration on the
sample covariance, enforcing ``||U||_{2,0} <= s``.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .core.dataset import NetworkDataset
from .core.embedding import EmbeddingMatrix, SubjectEmbedding
from .errors import DegenerateModelError, DimensionMismatchError
from .estimator.gram import centered_gram
from .utils import fix_signs, frozen, top_rows_order

logger = logging.getLogger(__name__)

MAX_ITER = 500
TOL = 1e-8
OBJECTIVE_SLACK = 1e-10


@dataclass(frozen=True)
class SpcaResult:
    U_x: np.ndarray
    lambda_r: np.ndarray
    support: np.ndarray
    converged: bool = True
    iterations: int = 0
    objective: tuple[float, ...] = ()
    method: str = "spca"

    def __post_init__(self):
        object.__setattr__(self, "U_x", frozen(self.U_x))
        object.__setattr__(self, "lambda_r", frozen(self.lambda_r))
        support = np.asarray(self.support, dtype=np.int64).copy()
        support.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "objective", tuple(float(v) for v in self.objective))
        if self.lambda_r.shape != (self.U_x.shape[1],):
            raise DimensionMismatchError(
                f"{self.lambda_r.shape[0]} eigenvalues for {self.U_x.shape[1]} components"
            )

    @property
    def d(self) -> int:
        return self.U_x.shape[0]

    @property
    def r(self) -> int:
        return self.U_x.shape[1]

    def as_embedding(self) -> EmbeddingMatrix:
        """``U_x diag(lambda)^{1/2}``, the edge-embedding analogue used by downstream tasks."""
        return EmbeddingMatrix(self.U_x * np.sqrt(np.maximum(self.lambda_r, 0.0)))


def _kept_rows(V: np.ndarray, s: int) -> np.ndarray:
    if s >= V.shape[0]:
        return np.arange(V.shape[0])
    return np.sort(top_rows_order(np.linalg.norm(V, axis=1))[:s])


def _orthonormalize(V: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """QR of the kept rows only, scattered back so every other row is exactly zero."""
    Q, _ = linalg.qr(V[keep], mode="economic")
    out = np.zeros_like(V)
    out[keep] = fix_signs(Q)
    return out


def _projector_change(U: np.ndarray, V: np.ndarray) -> float:
    """``||U U^T - V V^T||_F`` as ``sqrt(2) ||V - U U^T V||_F``, which stays accurate near zero."""
    residual = V - U @ (U.T @ V)
    return float(np.sqrt(2.0) * np.linalg.norm(residual))


def fit_spca(
        data: NetworkDataset,
        r: int,
        s: int,
        max_iter: int = MAX_ITER,
        tol: float = TOL
) -> SpcaResult:
    """
    Sparse principal subspace of the sample covariance.

    Starts from the top-``r`` eigenvectors and repeats {multiply by the
    covariance, keep the ``s`` heaviest rows, QR} until the projector moves
    by at most ``tol`` in Frobenius norm. Non-convergence is logged and
    flagged on the result; the last iterate is kept.

    An iterate whose objective ``tr(U^T Sigma U)`` falls below the previous
    one is rejected and the iteration stops at the previous iterate, so the
    recorded objective never decreases.
    """
    d = data.d
    if not 1 <= r <= min(d, data.n):
        raise ValueError(f"r must lie in [1, min(d, n)] = [1, {min(d, data.n)}], got {r}")
    if not r <= s <= d:
        raise ValueError(f"s must lie in [r, d] = [{r}, {d}], got {s}")

    sigma = centered_gram(data).M
    _, vectors = linalg.eigh(sigma, subset_by_index=[d - r, d - 1])
    U = fix_signs(vectors[:, ::-1])

    objective: list[float] = []
    converged = False
    stalled = False
    support = np.arange(d)
    for _ in range(max_iter):
        V = sigma @ U
        keep = _kept_rows(V, s)
        U_new = _orthonormalize(V, keep)
        value = float(np.trace(U_new.T @ sigma @ U_new))
        if objective and value < objective[-1] - OBJECTIVE_SLACK * abs(objective[-1]):
            stalled = True
            break
        change = _projector_change(U, U_new)
        U, support = U_new, keep
        objective.append(value)
        if change <= tol:
            converged = True
            break

    iterations = len(objective)
    if stalled:
        logger.warning("Sparse PCA objective decreased at iteration %d; keeping the previous iterate",
                       iterations + 1)
    elif not converged:
        logger.warning("Sparse PCA did not converge after %d iterations", max_iter)

    lambda_r = np.einsum("ij,ij->j", U, sigma @ U)
    logger.debug("Sparse PCA: %d iterations, support=%d, eigenvalues %s",
                 iterations, support.size, np.array2string(lambda_r, precision=3))
    return SpcaResult(U_x=U, lambda_r=lambda_r, support=support, converged=converged,
                      iterations=iterations, objective=tuple(objective))


def spca_embed(res: SpcaResult, x: np.ndarray) -> np.ndarray:
    """
    ``diag(lambda)^{-1/2} U_x^T x`` for one edge vector ``x``.

    :raises DegenerateModelError: If an eigenvalue is not positive.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != res.d:
        raise DimensionMismatchError(f"edge vector of length {x.shape[0]} does not match d={res.d}")
    if np.any(res.lambda_r <= 0):
        raise DegenerateModelError("sparse PCA eigenvalues must be positive to embed")
    scale = np.sqrt(res.lambda_r)
    return (res.U_x.T @ x) / (scale if x.ndim == 1 else scale[:, None])


def spca_subject_embeddings(res: SpcaResult, data: NetworkDataset) -> SubjectEmbedding:
    return SubjectEmbedding(spca_embed(res, data.X))
