"""
Seeded synthetic designs.

Sparse design: ``x_{i,e} = 1.25 c_e q_e^T z_i + sigma_xi xi_{i,e}`` with exactly
``s_star`` important edges and noise standard deviation ``(e+1)/d``.

Community design: ``x_{i,e} = 5 sqrt(c_u c_u') 10^{-|c_u - c_u'|} q_e^T z_i + sigma_xi xi_{i,e}``
where every node of a community shares one level ``c``, stratified across communities.
"""
import logging
from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np
import pydantic

from ..config.models import SCHEMA_VERSION
from ..core.dataset import NetworkDataset
from ..core.edges import EdgeIndexMap
from ..core.embedding import EmbeddingMatrix

logger = logging.getLogger(__name__)

SPARSE_SIGNAL_SCALE = 1.25
COMMUNITY_SIGNAL_SCALE = 5.0
LEVEL_LOW, LEVEL_HIGH = 0.1, 1.1


class SparseSimSpec(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    schema_version: str = SCHEMA_VERSION
    kind: Literal["sparse"] = "sparse"
    n: int = pydantic.Field(ge=2)
    v: int = pydantic.Field(ge=2)
    r: int = pydantic.Field(default=10, ge=1)
    s_star: int = pydantic.Field(default=50, ge=1)
    sigma_xi: float = pydantic.Field(default=0.0, ge=0.0)
    seed: int = pydantic.Field(default=0, ge=0)

    @property
    def d(self) -> int:
        return self.v * (self.v - 1) // 2

    @pydantic.model_validator(mode="after")
    def _check_sparsity(self):
        if self.s_star > self.d:
            raise ValueError(f"s_star={self.s_star} exceeds d={self.d}")
        return self


class CommunitySimSpec(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    schema_version: str = SCHEMA_VERSION
    kind: Literal["community"] = "community"
    n: int = pydantic.Field(ge=2)
    v: int = pydantic.Field(ge=2)
    r: int = pydantic.Field(default=10, ge=1)
    G: int = pydantic.Field(default=2, ge=1)
    sigma_xi: float = pydantic.Field(default=0.0, ge=0.0)
    jitter: float = pydantic.Field(default=0.0, ge=0.0, description="Per-node noise on the community level")
    seed: int = pydantic.Field(default=0, ge=0)

    @property
    def d(self) -> int:
        return self.v * (self.v - 1) // 2

    @pydantic.model_validator(mode="after")
    def _check_communities(self):
        if self.G > self.v:
            raise ValueError(f"G={self.G} exceeds the node count v={self.v}")
        return self


SimSpec = Union[SparseSimSpec, CommunitySimSpec]


@dataclass(frozen=True)
class SparseTruth:
    q_star: EmbeddingMatrix
    Z: np.ndarray
    support: np.ndarray
    labels: Optional[np.ndarray]


@dataclass(frozen=True)
class CommunityTruth:
    q_star: EmbeddingMatrix
    Z: np.ndarray
    node_labels: np.ndarray
    levels: np.ndarray


def _noise(rng: np.random.Generator, d: int, n: int) -> np.ndarray:
    sd = np.arange(1, d + 1, dtype=np.float64) / d
    return rng.standard_normal((d, n)) * sd[:, None]


def gen_sparse(spec: SparseSimSpec) -> tuple[NetworkDataset, SparseTruth]:
    """
    Sparse heteroscedastic design.

    Labels are ``1{z_1 > z_2}`` when ``r >= 2``, otherwise absent.
    """
    rng = np.random.default_rng(spec.seed)
    edge_map = EdgeIndexMap(spec.v)
    d, n, r = edge_map.edge_count, spec.n, spec.r

    Z = rng.standard_normal((r, n))
    Q = rng.standard_normal((d, r))
    support = np.sort(rng.choice(d, size=spec.s_star, replace=False))
    c = np.zeros(d)
    c[support] = 1.0
    xi = _noise(rng, d, n)

    q_star = SPARSE_SIGNAL_SCALE * c[:, None] * Q
    X = q_star @ Z + spec.sigma_xi * xi
    labels = (Z[0] > Z[1]).astype(np.int64) if r >= 2 else None

    logger.debug("Generated sparse design n=%d d=%d r=%d s*=%d sigma=%g seed=%d",
                 n, d, r, spec.s_star, spec.sigma_xi, spec.seed)
    data = NetworkDataset(X=X, edge_map=edge_map, labels=labels)
    truth = SparseTruth(q_star=EmbeddingMatrix(q_star), Z=Z, support=support, labels=labels)
    return data, truth


def community_labels(rng: np.random.Generator, v: int, G: int) -> np.ndarray:
    """Random node labels with community sizes differing by at most one."""
    labels = np.empty(v, dtype=np.int64)
    labels[rng.permutation(v)] = np.arange(v) % G
    return labels


def community_levels(rng: np.random.Generator, G: int) -> np.ndarray:
    """
    One level per community, stratified over ``[0.1, 1.1)``.

    Community ``g`` takes a uniform point of a randomly assigned stratum of
    width ``1/G``, so each level is marginally ``Uniform(0.1, 1.1)`` and no
    two communities share a stratum.
    """
    strata = rng.permutation(G)
    return LEVEL_LOW + (strata + rng.random(G)) * (LEVEL_HIGH - LEVEL_LOW) / G


def gen_community(spec: CommunitySimSpec) -> tuple[NetworkDataset, CommunityTruth]:
    """Block-structured design; every edge carries signal."""
    rng = np.random.default_rng(spec.seed)
    edge_map = EdgeIndexMap(spec.v)
    d, n, r = edge_map.edge_count, spec.n, spec.r

    node_labels = community_labels(rng, spec.v, spec.G)
    levels = community_levels(rng, spec.G)
    node_levels = levels[node_labels]
    if spec.jitter > 0:
        node_levels = np.maximum(
            node_levels + rng.uniform(-spec.jitter, spec.jitter, size=spec.v), LEVEL_LOW
        )

    Z = rng.standard_normal((r, n))
    Q = rng.standard_normal((d, r))
    xi = _noise(rng, d, n)

    rows, cols = edge_map.pairs
    cu, cw = node_levels[rows], node_levels[cols]
    scale = COMMUNITY_SIGNAL_SCALE * np.sqrt(cu * cw) * 10.0 ** (-np.abs(cu - cw))

    q_star = scale[:, None] * Q
    X = q_star @ Z + spec.sigma_xi * xi

    logger.debug("Generated community design n=%d v=%d G=%d sigma=%g seed=%d",
                 n, spec.v, spec.G, spec.sigma_xi, spec.seed)
    data = NetworkDataset(X=X, edge_map=edge_map)
    truth = CommunityTruth(q_star=EmbeddingMatrix(q_star), Z=Z,
                           node_labels=node_labels, levels=levels)
    return data, truth
