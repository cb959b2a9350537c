from .designs import (
    SparseSimSpec,
    CommunitySimSpec,
    SimSpec,
    SparseTruth,
    CommunityTruth,
    gen_sparse,
    gen_community,
)
from .splits import split_indices, split_train_test

__all__ = [
    "SparseSimSpec",
    "CommunitySimSpec",
    "SimSpec",
    "SparseTruth",
    "CommunityTruth",
    "gen_sparse",
    "gen_community",
    "split_indices",
    "split_train_test",
]
