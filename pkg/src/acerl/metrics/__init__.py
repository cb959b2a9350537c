from .distances import procrustes_dist, gram_error, subspace_distance
from .tasks import classification_accuracy, selection_recall, mean_squared_error, rand_index
from .clustering import misclustering_losses
from .profiles import explained_variance_profile, edge_norm_profile
from .records import ExperimentRecord, summarize, format_mean_se

__all__ = [
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
    "ExperimentRecord",
    "summarize",
    "format_mean_se",
]
