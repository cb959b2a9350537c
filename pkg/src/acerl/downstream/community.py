"""Node communities from the edge embedding by normalised spectral clustering."""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg
from sklearn.cluster import KMeans

from ..config.models import KMeansConfig
from ..core.edges import EdgeIndexMap, devectorize_edges
from ..core.embedding import EmbeddingMatrix
from ..errors import DegenerateModelError, DimensionMismatchError
from ..utils import fix_signs

logger = logging.getLogger(__name__)

DEGREE_FLOOR = 1e-12
_SKLEARN_SEED_SPACE = 1 << 32


@dataclass(frozen=True)
class CommunityAssignment:
    """
    One-hot ``v x G`` membership matrix.

    When produced by :func:`spectral_communities` it also carries the
    normalised Laplacian, the spectral embedding and every restart's
    within-cluster sum of squares.
    """
    theta: np.ndarray
    laplacian: Optional[np.ndarray] = None
    spectral_embedding: Optional[np.ndarray] = None
    restart_inertia: tuple[float, ...] = ()

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=np.int64).copy()
        if theta.ndim != 2 or not np.all(np.isin(theta, (0, 1))) or np.any(theta.sum(axis=1) != 1):
            raise ValueError("membership matrix must have exactly one 1 per row")
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def from_labels(cls, labels: np.ndarray, G: Optional[int] = None) -> "CommunityAssignment":
        labels = np.asarray(labels, dtype=np.int64)
        G = int(labels.max()) + 1 if G is None else G
        theta = np.zeros((labels.shape[0], G), dtype=np.int64)
        theta[np.arange(labels.shape[0]), labels] = 1
        return cls(theta)

    @property
    def v(self) -> int:
        return self.theta.shape[0]

    @property
    def G(self) -> int:
        return self.theta.shape[1]

    @property
    def labels(self) -> np.ndarray:
        return np.argmax(self.theta, axis=1)

    @property
    def sizes(self) -> np.ndarray:
        return self.theta.sum(axis=0)


def build_similarity(q_hat: EmbeddingMatrix, edge_map: Optional[EdgeIndexMap]) -> np.ndarray:
    """``S[u, u'] = ||q_e||`` for ``e = (u, u')``, zero diagonal."""
    if edge_map is None:
        raise ValueError("community detection needs the node-pair edge map of the data")
    if edge_map.edge_count != q_hat.d:
        raise DimensionMismatchError(
            f"edge map describes {edge_map.edge_count} edges but Q has {q_hat.d} rows"
        )
    return devectorize_edges(q_hat.row_norms, edge_map)


def normalized_laplacian(similarity: np.ndarray) -> np.ndarray:
    """
    ``D^{-1/2} S D^{-1/2}``.

    :raises DegenerateModelError: If some node has degree <= 1e-12.
    """
    similarity = np.asarray(similarity, dtype=np.float64)
    degrees = similarity.sum(axis=1)
    isolated = np.flatnonzero(degrees <= DEGREE_FLOOR)
    if isolated.size:
        raise DegenerateModelError(f"isolated nodes with zero degree: {isolated.tolist()}")
    scale = 1.0 / np.sqrt(degrees)
    L = similarity * scale[:, None] * scale[None, :]
    return (L + L.T) / 2.0


def spectral_communities(
        similarity: np.ndarray,
        G: int,
        kmeans: Optional[KMeansConfig] = None
) -> CommunityAssignment:
    """
    Spectral clustering of a node similarity matrix into ``G`` communities.

    Rows of the leading ``G`` eigenvectors of the normalised Laplacian
    (ordered by absolute eigenvalue) are clustered by Lloyd's k-means with
    k-means++ seeding; restart ``i`` is seeded with ``seed + i`` and the run
    with the lowest within-cluster sum of squares wins, ties by restart index.

    :raises DegenerateModelError: On isolated nodes or an empty cluster.
    """
    kmeans = kmeans or KMeansConfig()
    v = similarity.shape[0]
    if not 1 <= G <= v:
        raise ValueError(f"G must lie in [1, {v}], got {G}")

    L = normalized_laplacian(similarity)
    values, vectors = linalg.eigh(L)
    order = np.lexsort((np.arange(v), -np.abs(values)))[:G]
    gamma = fix_signs(vectors[:, order])

    best_labels: Optional[np.ndarray] = None
    best_inertia = np.inf
    inertias: list[float] = []
    for restart in range(kmeans.restarts):
        model = KMeans(
            n_clusters=G,
            init="k-means++",
            n_init=1,
            max_iter=kmeans.max_iter,
            algorithm="lloyd",
            random_state=(kmeans.seed + restart) % _SKLEARN_SEED_SPACE,
        ).fit(gamma)
        inertia = float(model.inertia_)
        inertias.append(inertia)
        if inertia < best_inertia:
            best_inertia, best_labels = inertia, model.labels_.copy()

    sizes = np.bincount(best_labels, minlength=G)
    if np.any(sizes == 0):
        raise DegenerateModelError(f"k-means produced an empty cluster (sizes {sizes.tolist()})")
    logger.debug("Spectral clustering: best inertia %.6g over %d restarts, sizes %s",
                 best_inertia, kmeans.restarts, sizes.tolist())

    theta = np.zeros((v, G), dtype=np.int64)
    theta[np.arange(v), best_labels] = 1
    return CommunityAssignment(theta=theta, laplacian=L, spectral_embedding=gamma,
                               restart_inertia=tuple(inertias))
