"""Centred Gram matrix and the initial edge embedding built from it."""
import logging
import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from scipy import linalg

from .thresholding import hard_threshold
from ..config.models import AdmmConfig
from ..core.dataset import NetworkDataset
from ..core.embedding import EmbeddingMatrix
from ..errors import ConvergenceError, DimensionMismatchError, NumericalError
from ..utils import fix_signs, frozen

logger = logging.getLogger(__name__)

TRACE_TOL = 1e-10
FANTOPE_AUTO_MAX_D = 1500


@dataclass(frozen=True)
class CenteredGram:
    """``M = X X^T / n - X 1 1^T X^T / n^2``, the biased sample covariance of subjects."""
    M: np.ndarray
    n: int

    def __post_init__(self):
        object.__setattr__(self, "M", frozen(self.M))

    @property
    def d(self) -> int:
        return self.M.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        """Diagonal entries of ``M`` (the diagonal of ``D(M)``)."""
        return np.diag(self.M).copy()

    @property
    def off_diagonal(self) -> np.ndarray:
        """``Delta(M) = M - D(M)``."""
        delta = np.array(self.M, copy=True)
        np.fill_diagonal(delta, 0.0)
        return delta

    def spectral_norm(self) -> float:
        """Largest eigenvalue of ``M`` (``M`` is positive semi-definite)."""
        values, _ = _eigh(self.M, top=1)
        return max(float(values[0]), 0.0)


def centered_data(data: NetworkDataset) -> np.ndarray:
    """``X`` with each edge (row) centred across subjects."""
    return data.X - data.X.mean(axis=1, keepdims=True)


def centered_gram(data: NetworkDataset) -> CenteredGram:
    Xc = centered_data(data)
    M = Xc @ Xc.T / data.n
    return CenteredGram(M=(M + M.T) / 2.0, n=data.n)


def _eigh(matrix: np.ndarray, top: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs in descending order, optionally only the ``top`` largest."""
    d = matrix.shape[0]
    if not np.all(np.isfinite(matrix)):
        raise NumericalError("eigendecomposition of a matrix with non-finite entries")
    try:
        if top is None or top >= d:
            values, vectors = linalg.eigh(matrix)
        else:
            values, vectors = linalg.eigh(matrix, subset_by_index=[d - top, d - 1])
    except linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    return values[::-1], vectors[:, ::-1]


def fantope_project(A: np.ndarray, r: int) -> np.ndarray:
    """
    Frobenius projection onto ``{0 <= H <= I, tr H = r}``.

    Eigenvalues are shifted by a common ``theta`` and clamped to ``[0, 1]``.
    The clamped sum is piecewise linear in ``theta`` with knots at ``gamma_i``
    and ``gamma_i - 1``, so ``theta`` is located by binary search over the
    knots and solved exactly on the bracketing segment.

    :raises ConvergenceError: If the clamped trace misses ``r`` by more than
        1e-10 relative to the eigenvalue scale.
    """
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {A.shape}")
    d = A.shape[0]
    if not 1 <= r <= d:
        raise ValueError(f"r must lie in [1, {d}], got {r}")

    gamma, U = _eigh((A + A.T) / 2.0)

    knots = np.unique(np.concatenate([gamma - 1.0, gamma]))
    sums = np.clip(gamma[None, :] - knots[:, None], 0.0, 1.0).sum(axis=1)
    # sums falls from d at the first knot to 0 at the last
    j = int(np.searchsorted(-sums, -float(r), side="left"))
    if j == 0 or sums[j] == r:
        theta = float(knots[j])
    else:
        drop = sums[j - 1] - sums[j]
        theta = float(knots[j - 1] + (sums[j - 1] - r) / drop * (knots[j] - knots[j - 1]))

    clamped = np.clip(gamma - theta, 0.0, 1.0)
    gap = float(clamped.sum()) - r
    if abs(gap) > TRACE_TOL * d * max(1.0, float(np.abs(gamma).max())):
        raise ConvergenceError("Fantope projection", int(np.ceil(np.log2(knots.size))) + 1,
                               f"trace gap {gap:.3g}")

    H = (U * clamped) @ U.T
    return (H + H.T) / 2.0


def _soft_threshold(matrix: np.ndarray, level: float) -> np.ndarray:
    return np.sign(matrix) * np.maximum(np.abs(matrix) - level, 0.0)


def fantope_admm(
        S: np.ndarray,
        r: int,
        n: int,
        config: AdmmConfig,
        scale: float
) -> np.ndarray:
    """
    Sparse Fantope estimate ``argmax <S, H> - lam ||H||_1`` over the Fantope.

    Three blocks: ``H`` projected onto the Fantope, split copy ``Z``
    soft-thresholded at ``lam / rho``, scaled dual ``U``.

    :param scale: Entry scale used for the default ``lam``.
    :return: The Fantope iterate ``H``.
    """
    d = S.shape[0]
    lam = config.lam
    if lam is None:
        lam = math.sqrt(math.log(d) / n) * scale
    rho = config.rho

    Z = np.zeros_like(S)
    U = np.zeros_like(S)
    H = Z
    for it in range(1, config.max_iter + 1):
        H = fantope_project(Z - U + S / rho, r)
        Z_old = Z
        Z = _soft_threshold(H + U, lam / rho)
        U = U + H - Z

        primal = float(np.linalg.norm(H - Z))
        dual = rho * float(np.linalg.norm(Z - Z_old))
        logger.debug("ADMM iteration %d: primal=%.3g dual=%.3g", it, primal, dual)
        if primal <= config.tol and dual <= config.tol:
            logger.debug("ADMM converged after %d iterations", it)
            break
    else:
        logger.warning("Fantope ADMM stopped at max_iter=%d before reaching tol=%g",
                       config.max_iter, config.tol)
    return H


def resolve_init_method(method: str, d: int) -> Literal["fantope", "gram_pca"]:
    if method == "auto":
        return "fantope" if d <= FANTOPE_AUTO_MAX_D else "gram_pca"
    if method not in ("fantope", "gram_pca"):
        raise ValueError(f"Unknown initialisation method: {method}")
    return method


def initial_embedding(
        data: NetworkDataset,
        r: int,
        s: Optional[int] = None,
        method: str = "auto",
        admm: Optional[AdmmConfig] = None,
        gram: Optional[CenteredGram] = None
) -> EmbeddingMatrix:
    """
    Initial estimate ``Q^(0)`` from the off-diagonal part of ``M``.

    ``gram_pca`` takes the top-``r`` eigenpairs of ``Delta(M)`` directly;
    ``fantope`` first solves the sparse Fantope problem on ``Delta(M)`` and
    rescales within the span of its top-``r`` eigenvectors. Negative
    eigen-scales are clamped at 0 and the result is hard-thresholded to ``s`` rows.
    """
    gram = gram if gram is not None else centered_gram(data)
    d = gram.d
    if not 1 <= r <= min(d, data.n):
        raise ValueError(f"r must lie in [1, min(d, n)] = [1, {min(d, data.n)}], got {r}")
    s = d if s is None else s
    method = resolve_init_method(method, d)
    delta = gram.off_diagonal

    if method == "gram_pca":
        values, vectors = _eigh(delta, top=r)
        basis = fix_signs(vectors)
    else:
        admm = admm or AdmmConfig()
        scale = float(np.median(gram.diagonal))
        H = fantope_admm(delta, r, data.n, admm, scale)
        _, span = _eigh(H, top=r)
        restricted = span.T @ delta @ span
        values, rotation = _eigh((restricted + restricted.T) / 2.0)
        basis = fix_signs(span @ rotation)

    q0 = basis * np.sqrt(np.maximum(values, 0.0))
    logger.debug("Initial embedding via %s: leading scales %s", method,
                 np.array2string(np.maximum(values[:3], 0.0), precision=3))
    return hard_threshold(EmbeddingMatrix(q0), s)
