"""
Model container: a JSON metadata document plus the embedding matrix as CSV.

Both estimators share the layout; ``method`` tells them apart::

    <dir>/model.json   schema_version, method, d, r, fit details
    <dir>/q_hat.csv    d rows x r columns, shortest round-trip floats
"""
import logging
from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np
import pandas as pd
import pydantic
from packaging.version import InvalidVersion, Version

from .config.models import SCHEMA_VERSION, AcerlConfig
from .core.embedding import EmbeddingMatrix, FitResult, TraceRecord
from .errors import SchemaError
from .spca import SpcaResult
from .utils import expanded_path

logger = logging.getLogger(__name__)

METADATA_FILE = "model.json"
MATRIX_FILE = "q_hat.csv"

Model = Union[FitResult, SpcaResult]


class TraceEntry(pydantic.BaseModel):
    k: int
    mean_p: float
    surrogate: float
    support_size: int


class ModelMetadata(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(extra="forbid")

    schema_version: str
    method: Literal["acerl", "spca"]
    d: int = pydantic.Field(ge=1)
    r: int = pydantic.Field(ge=1)

    # acerl
    seed: Optional[int] = None
    config: Optional[AcerlConfig] = None
    masking: Optional[list[float]] = None
    trace: list[TraceEntry] = []

    # spca
    lambda_r: Optional[list[float]] = None
    support: Optional[list[int]] = None
    converged: Optional[bool] = None
    iterations: Optional[int] = None
    objective: list[float] = []

    @pydantic.field_validator("schema_version")
    @classmethod
    def _compatible(cls, value: str) -> str:
        try:
            found, current = Version(value), Version(SCHEMA_VERSION)
        except InvalidVersion as exc:
            raise ValueError(f"invalid schema version {value!r}") from exc
        if found.major != current.major:
            raise ValueError(f"schema version {value} is incompatible with {SCHEMA_VERSION}")
        return value


def _metadata(model: Model) -> ModelMetadata:
    if isinstance(model, FitResult):
        return ModelMetadata(
            schema_version=SCHEMA_VERSION,
            method="acerl",
            d=model.q_hat.d,
            r=model.q_hat.r,
            seed=model.seed,
            config=model.config,
            masking=model.masking.tolist(),
            trace=[TraceEntry(k=t.k, mean_p=t.mean_p, surrogate=t.surrogate,
                              support_size=t.support_size) for t in model.trace],
        )
    return ModelMetadata(
        schema_version=SCHEMA_VERSION,
        method="spca",
        d=model.d,
        r=model.r,
        lambda_r=model.lambda_r.tolist(),
        support=model.support.tolist(),
        converged=model.converged,
        iterations=model.iterations,
        objective=list(model.objective),
    )


def save_model(model: Model, path: Union[str, Path]) -> Path:
    """
    Persist a fitted model into directory ``path`` (created if missing).

    :return: The directory written to.
    """
    directory = expanded_path(path)
    directory.mkdir(parents=True, exist_ok=True)
    matrix = model.q_hat.Q if isinstance(model, FitResult) else model.U_x

    (directory / METADATA_FILE).write_text(_metadata(model).model_dump_json(indent=2), encoding="utf-8")
    pd.DataFrame(matrix).to_csv(directory / MATRIX_FILE, header=False, index=False)
    logger.info("Saved %s model (d=%d, r=%d) to %s", model.method, matrix.shape[0], matrix.shape[1], directory)
    return directory


def _read_matrix(path: Path, meta: ModelMetadata) -> np.ndarray:
    try:
        frame = pd.read_csv(path, header=None, float_precision="round_trip")
        matrix = frame.to_numpy(dtype=np.float64)
    except (ValueError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise SchemaError(f"corrupt matrix file {path}: {exc}") from exc
    if matrix.shape != (meta.d, meta.r):
        raise SchemaError(f"matrix file {path} has shape {matrix.shape}, metadata says {(meta.d, meta.r)}")
    return matrix


def load_model(path: Union[str, Path]) -> Model:
    """
    Load a model written by :func:`save_model`.

    :raises FileNotFoundError: If the directory or one of its files is missing.
    :raises SchemaError: On corrupt files or an incompatible schema version.
    """
    directory = expanded_path(path)
    meta_path = directory / METADATA_FILE
    if not meta_path.exists():
        logger.error("Model metadata %s does not exist", meta_path)
        raise FileNotFoundError(f"Model metadata {meta_path} does not exist")
    try:
        meta = ModelMetadata.model_validate_json(meta_path.read_text(encoding="utf-8"))
    except pydantic.ValidationError as exc:
        raise SchemaError(f"invalid model metadata {meta_path}: {exc}") from exc
    matrix_path = directory / MATRIX_FILE
    if not matrix_path.exists():
        raise FileNotFoundError(f"Model matrix {matrix_path} does not exist")
    matrix = _read_matrix(matrix_path, meta)

    try:
        if meta.method == "acerl":
            if meta.config is None or meta.masking is None or meta.seed is None:
                raise SchemaError(f"{meta_path} lacks the config, masking or seed of an acerl model")
            return FitResult(
                q_hat=EmbeddingMatrix(matrix),
                masking=np.asarray(meta.masking, dtype=np.float64),
                trace=tuple(TraceRecord(**t.model_dump()) for t in meta.trace),
                config=meta.config,
                seed=meta.seed,
            )
        if meta.lambda_r is None or meta.support is None:
            raise SchemaError(f"{meta_path} lacks the eigenvalues or support of an spca model")
        return SpcaResult(
            U_x=matrix,
            lambda_r=np.asarray(meta.lambda_r, dtype=np.float64),
            support=np.asarray(meta.support, dtype=np.int64),
            converged=bool(meta.converged),
            iterations=meta.iterations or 0,
            objective=tuple(meta.objective),
        )
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(f"inconsistent model in {directory}: {exc}") from exc
