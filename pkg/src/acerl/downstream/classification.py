"""Generalised linear models on subject embeddings."""
import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import linalg
from scipy.special import expit

from .embedding import embed_edges
from ..core.embedding import EmbeddingMatrix, SubjectEmbedding
from ..errors import DimensionMismatchError

logger = logging.getLogger(__name__)

NEWTON_MAX_ITER = 100
NEWTON_TOL = 1e-8
RIDGE = 1e-6
ARMIJO = 1e-4
MAX_HALVINGS = 40


@dataclass(frozen=True)
class LinearClassifier:
    w: np.ndarray
    intercept: float
    link: Literal["logistic"] = "logistic"

    def __post_init__(self):
        w = np.array(self.w, dtype=np.float64)
        if not (np.all(np.isfinite(w)) and np.isfinite(self.intercept)):
            raise ValueError("classifier coefficients must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "intercept", float(self.intercept))


@dataclass(frozen=True)
class LinearRegressor:
    w: np.ndarray
    intercept: float

    def __post_init__(self):
        w = np.array(self.w, dtype=np.float64)
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "intercept", float(self.intercept))


def _design(Z: SubjectEmbedding) -> np.ndarray:
    return np.column_stack([Z.Z.T, np.ones(Z.n)])


def _penalized_log_loss(D: np.ndarray, y: np.ndarray, beta: np.ndarray, ridge: float) -> float:
    eta = D @ beta
    return float(np.mean(np.logaddexp(0.0, eta) - y * eta) + 0.5 * ridge * beta @ beta)


def fit_classifier(
        Z: SubjectEmbedding,
        y: np.ndarray,
        ridge: float = RIDGE,
        max_iter: int = NEWTON_MAX_ITER,
        tol: float = NEWTON_TOL
) -> LinearClassifier:
    """
    Ridge-stabilised logistic regression by damped Newton steps.

    The ridge term bounds the coefficients on separable data; each Newton
    step is halved until the penalised log-loss decreases sufficiently.

    :raises ValueError: If only one class is present.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (Z.n,):
        raise DimensionMismatchError(f"{y.shape[0]} labels for {Z.n} subjects")
    if np.unique(y).size < 2:
        raise ValueError("classifier needs both classes in the training labels")

    D = _design(Z)
    beta = np.zeros(D.shape[1])
    objective = _penalized_log_loss(D, y, beta, ridge)
    for it in range(1, max_iter + 1):
        mu = expit(D @ beta)
        grad = D.T @ (mu - y) / Z.n + ridge * beta
        if np.linalg.norm(grad) <= tol:
            logger.debug("Newton converged after %d iterations", it - 1)
            break
        weights = mu * (1.0 - mu)
        hessian = (D.T * weights) @ D / Z.n + ridge * np.eye(D.shape[1])
        direction = linalg.solve(hessian, grad, assume_a="pos")

        step = 1.0
        for _ in range(MAX_HALVINGS):
            candidate = beta - step * direction
            value = _penalized_log_loss(D, y, candidate, ridge)
            if value <= objective - ARMIJO * step * float(grad @ direction):
                break
            step /= 2.0
        beta, objective = candidate, value
    else:
        logger.debug("Newton stopped at max_iter=%d (objective %.6g)", max_iter, objective)

    return LinearClassifier(w=beta[:-1], intercept=beta[-1])


def predict_proba(clf: LinearClassifier, Z: SubjectEmbedding) -> np.ndarray:
    return expit(clf.w @ Z.Z + clf.intercept)


def predict_labels(clf: LinearClassifier, Z: SubjectEmbedding) -> np.ndarray:
    """1 where ``F(w^T z + b) >= 1/2``, else 0."""
    return (predict_proba(clf, Z) >= 0.5).astype(np.int64)


def classify(clf: LinearClassifier, q_hat: EmbeddingMatrix, x0: np.ndarray) -> int:
    """Label of one edge vector; exact ties at 1/2 go to class 1."""
    z0 = embed_edges(q_hat, np.asarray(x0, dtype=np.float64)[:, None])
    return int(predict_labels(clf, SubjectEmbedding(z0))[0])


def fit_regressor(Z: SubjectEmbedding, trait: np.ndarray, ridge: float = RIDGE) -> LinearRegressor:
    """Ridge least squares of a continuous trait on subject embeddings (intercept unpenalised)."""
    trait = np.asarray(trait, dtype=np.float64)
    if trait.shape != (Z.n,):
        raise DimensionMismatchError(f"{trait.shape[0]} trait values for {Z.n} subjects")
    D = _design(Z)
    penalty = ridge * np.eye(D.shape[1])
    penalty[-1, -1] = 0.0
    beta = linalg.solve(D.T @ D / Z.n + penalty, D.T @ trait / Z.n, assume_a="sym")
    return LinearRegressor(w=beta[:-1], intercept=beta[-1])


def predict_values(reg: LinearRegressor, Z: SubjectEmbedding) -> np.ndarray:
    return reg.w @ Z.Z + reg.intercept


def predict_trait(reg: LinearRegressor, q_hat: EmbeddingMatrix, x0: np.ndarray) -> float:
    z0 = embed_edges(q_hat, np.asarray(x0, dtype=np.float64)[:, None])
    return float(predict_values(reg, SubjectEmbedding(z0))[0])
