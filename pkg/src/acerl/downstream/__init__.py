from .embedding import SubjectWeighting, edge_precision, embed_edges, subject_embeddings
from .classification import (
    LinearClassifier,
    LinearRegressor,
    fit_classifier,
    predict_proba,
    predict_labels,
    classify,
    fit_regressor,
    predict_values,
    predict_trait,
)
from .selection import select_edges, sparse_edge_graph, node_degrees, hub_nodes
from .community import (
    CommunityAssignment,
    build_similarity,
    normalized_laplacian,
    spectral_communities,
)

__all__ = [
    "SubjectWeighting",
    "edge_precision",
    "embed_edges",
    "subject_embeddings",
    "LinearClassifier",
    "LinearRegressor",
    "fit_classifier",
    "predict_proba",
    "predict_labels",
    "classify",
    "fit_regressor",
    "predict_values",
    "predict_trait",
    "select_edges",
    "sparse_edge_graph",
    "node_degrees",
    "hub_nodes",
    "CommunityAssignment",
    "build_similarity",
    "normalized_laplacian",
    "spectral_communities",
]
