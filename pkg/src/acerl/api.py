"""
Public API for ACERL.

This module exports all public interfaces for consumers to use.
Import only from this module for stable API access.
"""

from .config.base import Settings, resolve_settings
from .config.loaders import load_file
from .config.models import AcerlConfig, AdmmConfig, KMeansConfig
from .config.registry import register_configuration, clear_configurations
from .config.setup import setup_logging
from .core import (
    EdgeIndexMap,
    NetworkDataset,
    EmbeddingMatrix,
    SubjectEmbedding,
    TraceRecord,
    FitResult,
    vectorize_adjacency,
    devectorize_edges,
    apply_transform,
    read_dataset_csv,
    write_dataset_csv,
    read_adjacency_folder,
)
from .downstream import (
    LinearClassifier,
    LinearRegressor,
    CommunityAssignment,
    edge_precision,
    embed_edges,
    subject_embeddings,
    fit_classifier,
    predict_proba,
    predict_labels,
    classify,
    fit_regressor,
    predict_values,
    predict_trait,
    select_edges,
    sparse_edge_graph,
    node_degrees,
    hub_nodes,
    build_similarity,
    normalized_laplacian,
    spectral_communities,
)
from .errors import (
    AcerlError,
    DimensionMismatchError,
    SchemaError,
    NumericalError,
    DivergenceError,
    ConvergenceError,
    DegenerateModelError,
)
from .estimator import (
    MaskingParams,
    MaskDiagonal,
    CenteredGram,
    sample_mask,
    mask_moment,
    update_masking_params,
    hard_threshold,
    centered_gram,
    fantope_project,
    initial_embedding,
    empirical_loss,
    loss_gradient,
    expected_loss_surrogate,
    fit,
)
from .harness import ExperimentPlan, run_plan, write_results
from .metrics import (
    ExperimentRecord,
    procrustes_dist,
    gram_error,
    subspace_distance,
    classification_accuracy,
    selection_recall,
    mean_squared_error,
    rand_index,
    misclustering_losses,
    explained_variance_profile,
    edge_norm_profile,
    summarize,
    format_mean_se,
)
from .persistence import save_model, load_model
from .simulation import (
    SparseSimSpec,
    CommunitySimSpec,
    gen_sparse,
    gen_community,
    split_train_test,
)
from .spca import SpcaResult, fit_spca, spca_embed, spca_subject_embeddings

__all__ = [
    # Config
    "Settings",
    "resolve_settings",
    "load_file",
    "register_configuration",
    "clear_configurations",
    "AcerlConfig",
    "AdmmConfig",
    "KMeansConfig",
    # Logging
    "setup_logging",
    # Core
    "EdgeIndexMap",
    "NetworkDataset",
    "EmbeddingMatrix",
    "SubjectEmbedding",
    "TraceRecord",
    "FitResult",
    "vectorize_adjacency",
    "devectorize_edges",
    "apply_transform",
    "read_dataset_csv",
    "write_dataset_csv",
    "read_adjacency_folder",
    "save_model",
    "load_model",
    # Errors
    "AcerlError",
    "DimensionMismatchError",
    "SchemaError",
    "NumericalError",
    "DivergenceError",
    "ConvergenceError",
    "DegenerateModelError",
    # Estimator
    "MaskingParams",
    "MaskDiagonal",
    "CenteredGram",
    "sample_mask",
    "mask_moment",
    "update_masking_params",
    "hard_threshold",
    "centered_gram",
    "fantope_project",
    "initial_embedding",
    "empirical_loss",
    "loss_gradient",
    "expected_loss_surrogate",
    "fit",
    # Sparse PCA
    "SpcaResult",
    "fit_spca",
    "spca_embed",
    "spca_subject_embeddings",
    # Downstream
    "LinearClassifier",
    "LinearRegressor",
    "CommunityAssignment",
    "edge_precision",
    "embed_edges",
    "subject_embeddings",
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
    "build_similarity",
    "normalized_laplacian",
    "spectral_communities",
    # Simulation
    "SparseSimSpec",
    "CommunitySimSpec",
    "gen_sparse",
    "gen_community",
    "split_train_test",
    # Metrics
    "ExperimentRecord",
    "procrustes_dist",
    "gram_error",
    "subspace_distance",
    "classification_accuracy",
    "selection_recall",
    "mean_squared_error",
    "rand_index",
    "misclustering_losses",
    "explained_variance_profile",
    "edge_norm_profile",
    "summarize",
    "format_mean_se",
    # Harness
    "ExperimentPlan",
    "run_plan",
    "write_results",
]
