from dataclasses import dataclass, field

import numpy as np

from ..config.models import AcerlConfig
from ..errors import DimensionMismatchError
from ..utils import frozen


@dataclass(frozen=True)
class EmbeddingMatrix:
    """``d x r`` edge embedding matrix; row ``e`` is ``q_e``."""
    Q: np.ndarray

    def __post_init__(self):
        Q = frozen(self.Q)
        if Q.ndim != 2:
            raise DimensionMismatchError(f"Q must be 2-D (d x r), got shape {Q.shape}")
        if not np.all(np.isfinite(Q)):
            raise ValueError("Q contains non-finite entries")
        object.__setattr__(self, "Q", Q)

    @classmethod
    def zeros(cls, d: int, r: int) -> "EmbeddingMatrix":
        return cls(np.zeros((d, r)))

    @property
    def d(self) -> int:
        return self.Q.shape[0]

    @property
    def r(self) -> int:
        return self.Q.shape[1]

    @property
    def row_norms(self) -> np.ndarray:
        return np.linalg.norm(self.Q, axis=1)

    @property
    def row_support(self) -> np.ndarray:
        """Sorted indices of the non-zero rows."""
        return np.flatnonzero(self.row_norms > 0)

    @property
    def row_sparsity(self) -> int:
        """``||Q||_{2,0}``."""
        return int(np.count_nonzero(self.row_norms > 0))

    def spectral(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Eigen-view ``U diag(lam) U^T`` of ``Q Q^T`` without forming it.

        :return: ``(U, lam)`` with ``U`` ``d x r`` orthonormal and ``lam`` descending.
        """
        U, singular, _ = np.linalg.svd(self.Q, full_matrices=False)
        return U, singular ** 2


@dataclass(frozen=True)
class SubjectEmbedding:
    """``r x n`` subject embeddings; column ``i`` is ``z_i``."""
    Z: np.ndarray

    def __post_init__(self):
        Z = frozen(self.Z)
        if Z.ndim != 2:
            raise DimensionMismatchError(f"Z must be 2-D (r x n), got shape {Z.shape}")
        if not np.all(np.isfinite(Z)):
            raise ValueError("Z contains non-finite entries")
        object.__setattr__(self, "Z", Z)

    @property
    def r(self) -> int:
        return self.Z.shape[0]

    @property
    def n(self) -> int:
        return self.Z.shape[1]


@dataclass(frozen=True)
class TraceRecord:
    k: int
    mean_p: float
    surrogate: float
    support_size: int


@dataclass(frozen=True)
class FitResult:
    q_hat: EmbeddingMatrix
    masking: np.ndarray
    trace: tuple[TraceRecord, ...]
    config: AcerlConfig
    seed: int
    method: str = field(default="acerl")

    def __post_init__(self):
        masking = frozen(self.masking)
        if masking.shape != (self.q_hat.d,):
            raise DimensionMismatchError(
                f"masking vector of shape {masking.shape} does not match d={self.q_hat.d}"
            )
        object.__setattr__(self, "masking", masking)
        object.__setattr__(self, "trace", tuple(self.trace))
