from .edges import EdgeIndexMap, vectorize_adjacency, devectorize_edges
from .dataset import (
    NetworkDataset,
    apply_transform,
    read_dataset_csv,
    write_dataset_csv,
    read_adjacency_folder,
)
from .embedding import (
    EmbeddingMatrix,
    SubjectEmbedding,
    TraceRecord,
    FitResult,
)

__all__ = [
    "EdgeIndexMap",
    "vectorize_adjacency",
    "devectorize_edges",
    "NetworkDataset",
    "apply_transform",
    "read_dataset_csv",
    "write_dataset_csv",
    "read_adjacency_folder",
    "EmbeddingMatrix",
    "SubjectEmbedding",
    "TraceRecord",
    "FitResult",
]
