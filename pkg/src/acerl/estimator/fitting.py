import logging
import math
from typing import Optional

import numpy as np

from .gram import centered_gram, initial_embedding, resolve_init_method
from .loss import ContrastiveObjective, expected_loss_surrogate
from .masking import sample_mask, sampling_params, update_masking_params
from .thresholding import hard_threshold
from ..config.models import AcerlConfig, AdmmConfig
from ..core.dataset import NetworkDataset
from ..core.embedding import EmbeddingMatrix, FitResult, TraceRecord
from ..errors import DimensionMismatchError, DivergenceError

logger = logging.getLogger(__name__)


def default_iterations(n: int) -> int:
    """ceil(ln n), at least 1."""
    return max(1, math.ceil(math.log(n)))


def inner_iterations(config: AcerlConfig, k: int, n: int, base: int) -> int:
    if config.inner_schedule == "constant":
        return base
    return max(1, math.ceil(min(math.log(n), k * math.log(2.0) + math.log(config.r))))


def resolve_config(config: AcerlConfig, data: NetworkDataset) -> AcerlConfig:
    """
    Fill data-dependent defaults (``s``, ``T``, ``K``, ``init``) and validate ranges.

    :raises ValueError: If ``r`` or ``s`` are out of range for ``data``.
    """
    d, n = data.d, data.n
    if not 1 <= config.r <= min(d, n):
        raise ValueError(f"r must lie in [1, min(d, n)] = [1, {min(d, n)}], got {config.r}")
    s = d if config.s is None else config.s
    if not 1 <= s <= d:
        raise ValueError(f"s must lie in [1, d] = [1, {d}], got {s}")
    return config.model_copy(update={
        "s": s,
        "inner_iters": config.inner_iters or default_iterations(n),
        "outer_iters": config.outer_iters or default_iterations(n),
        "init": resolve_init_method(config.init, d),
    })


def fit(
        data: NetworkDataset,
        config: AcerlConfig,
        q0: Optional[EmbeddingMatrix] = None,
        admm: Optional[AdmmConfig] = None
) -> FitResult:
    """
    Two-level contrastive estimation of the edge embedding matrix.

    Outer iteration ``k`` runs ``T`` inner steps of {draw a mask, gradient
    step, hard-threshold to ``s`` rows}, then refreshes the masking
    parameters from the current estimate. The first masking parameters are
    derived from the initial estimate the same way. With ``diag_weight="squared"``
    masks are drawn with ``p**2`` so the sampled loss matches its surrogate.

    :param q0: Initial estimate; built from the centred Gram matrix when omitted.
    :raises DivergenceError: On a non-finite gradient, iterate or loss.
    """
    config = resolve_config(config, data)
    d, n = data.d, data.n
    if q0 is not None and (q0.d, q0.r) != (d, config.r):
        raise DimensionMismatchError(f"q0 has shape {(q0.d, q0.r)}, expected {(d, config.r)}")

    logger.info("Fitting d=%d n=%d r=%d s=%d (T=%d, K=%d, eta=%g, init=%s, seed=%d)",
                d, n, config.r, config.s, config.inner_iters, config.outer_iters,
                config.eta, config.init, config.seed)

    rng = np.random.default_rng(config.seed)
    gram = centered_gram(data)
    objective = ContrastiveObjective(data)

    if q0 is None:
        q0 = initial_embedding(data, config.r, config.s, config.init, admm, gram)
    Q = hard_threshold(q0, config.s).Q

    step = config.eta
    if config.step_scaling == "spectral":
        top = gram.spectral_norm()
        if top > 0.0:
            step = config.eta / top
    logger.debug("Effective step size %.6g", step)

    params = update_masking_params(EmbeddingMatrix(Q), data)
    trace: list[TraceRecord] = []

    for k in range(1, config.outer_iters + 1):
        mean_p = float(params.p.mean())
        draw = sampling_params(params, config.diag_weight)
        steps = inner_iterations(config, k, n, config.inner_iters)
        for t in range(1, steps + 1):
            mask = sample_mask(draw, rng)
            grad = objective.gradient(Q, mask)
            if not np.all(np.isfinite(grad)):
                raise DivergenceError(k, t, "gradient")
            Q = Q - step * grad
            if not np.all(np.isfinite(Q)):
                raise DivergenceError(k, t, "iterate")
            Q = hard_threshold(EmbeddingMatrix(Q), config.s).Q
            if logger.isEnabledFor(logging.DEBUG):
                logger.debug("k=%d t=%d loss=%.6g", k, t, objective.loss(Q, mask))

        q_k = EmbeddingMatrix(Q)
        surrogate = expected_loss_surrogate(q_k, data, params, config.diag_weight, gram)
        if not math.isfinite(surrogate):
            raise DivergenceError(k, steps, "loss")
        trace.append(TraceRecord(k=k, mean_p=mean_p, surrogate=surrogate,
                                 support_size=q_k.row_sparsity))
        logger.info("Outer iteration %d/%d: surrogate=%.6g mean p=%.4f support=%d",
                    k, config.outer_iters, surrogate, mean_p, q_k.row_sparsity)
        params = update_masking_params(q_k, data)

    return FitResult(
        q_hat=EmbeddingMatrix(Q),
        masking=params.p,
        trace=tuple(trace),
        config=config,
        seed=config.seed,
    )
