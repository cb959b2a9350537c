import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional, Sequence

import numpy as np
import pandas as pd

from .edges import EdgeIndexMap, vectorize_adjacency
from ..errors import DimensionMismatchError
from ..utils import frozen

logger = logging.getLogger(__name__)

Transform = Literal["none", "square", "reciprocal", "log1p"]

SUBJECT_COLUMN = "subject_id"
LABEL_COLUMN = "label"
TRAIT_COLUMN = "trait"


def apply_transform(values: np.ndarray, transform: Transform = "none") -> np.ndarray:
    """
    Element-wise edge-weight transform.

    ``square`` suits mutual-information weights, ``reciprocal`` maps fibre
    counts ``a`` to ``1/(1+a)``, ``log1p`` maps ``a`` to ``log(1+a)``.
    """
    values = np.asarray(values, dtype=np.float64)
    if transform == "none":
        return values.copy()
    if transform == "square":
        return np.square(values)
    if transform == "reciprocal":
        if np.any(values <= -1.0):
            raise ValueError("reciprocal transform requires entries > -1")
        return 1.0 / (1.0 + values)
    if transform == "log1p":
        if np.any(values <= -1.0):
            raise ValueError("log1p transform requires entries > -1")
        return np.log1p(values)
    raise ValueError(f"Unknown transform: {transform}")


@dataclass(frozen=True)
class NetworkDataset:
    """
    Vectorised edge weights of ``n`` subjects.

    ``X`` is ``d x n``: one row per edge, one column per subject.
    """
    X: np.ndarray
    edge_map: Optional[EdgeIndexMap] = None
    labels: Optional[np.ndarray] = None
    trait: Optional[np.ndarray] = None
    subject_ids: Optional[tuple[str, ...]] = field(default=None)

    def __post_init__(self):
        X = frozen(self.X)
        if X.ndim != 2:
            raise DimensionMismatchError(f"X must be 2-D (d x n), got shape {X.shape}")
        d, n = X.shape
        if n < 2:
            raise ValueError(f"a dataset needs at least 2 subjects, got {n}")
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains non-finite entries")
        if self.edge_map is not None and self.edge_map.edge_count != d:
            raise DimensionMismatchError(
                f"X has {d} rows but the edge map describes {self.edge_map.edge_count} edges"
            )
        object.__setattr__(self, "X", X)

        if self.labels is not None:
            labels = np.asarray(self.labels)
            if labels.shape != (n,):
                raise DimensionMismatchError(f"labels shape {labels.shape} != ({n},)")
            if not np.all(np.isin(labels, (0, 1))):
                raise ValueError("labels must be binary (0/1)")
            labels = labels.astype(np.int64)
            labels.setflags(write=False)
            object.__setattr__(self, "labels", labels)

        if self.trait is not None:
            trait = frozen(self.trait)
            if trait.shape != (n,):
                raise DimensionMismatchError(f"trait shape {trait.shape} != ({n},)")
            if not np.all(np.isfinite(trait)):
                raise ValueError("trait contains non-finite entries")
            object.__setattr__(self, "trait", trait)

        if self.subject_ids is not None:
            ids = tuple(str(s) for s in self.subject_ids)
            if len(ids) != n:
                raise DimensionMismatchError(f"{len(ids)} subject ids for {n} subjects")
            object.__setattr__(self, "subject_ids", ids)

    @property
    def d(self) -> int:
        return self.X.shape[0]

    @property
    def n(self) -> int:
        return self.X.shape[1]

    def subset(self, columns: Sequence[int]) -> "NetworkDataset":
        """Dataset restricted to the given subject columns, in that order."""
        columns = np.asarray(columns, dtype=np.int64)
        return NetworkDataset(
            X=self.X[:, columns],
            edge_map=self.edge_map,
            labels=None if self.labels is None else self.labels[columns],
            trait=None if self.trait is None else self.trait[columns],
            subject_ids=None if self.subject_ids is None
            else tuple(self.subject_ids[i] for i in columns),
        )


def read_dataset_csv(path: Path, transform: Transform = "none") -> NetworkDataset:
    """
    Read a subjects-as-rows CSV (``subject_id,e0,e1,...``) and transpose it.

    Optional ``label`` and ``trait`` columns are picked up. The edge map is
    inferred whenever the edge count is triangular.

    :raises FileNotFoundError: If ``path`` does not exist.
    :raises ValueError: If no edge columns are present.
    """
    path = Path(path)
    if not path.is_file():
        logger.error("Dataset not found: %s", path.absolute())
        raise FileNotFoundError(f"Dataset not found: {path.absolute()}")

    frame = pd.read_csv(path, float_precision="round_trip")
    edge_columns = [c for c in frame.columns if c.startswith("e") and c[1:].isdigit()]
    if not edge_columns:
        raise ValueError(f"{path} has no edge columns (e0, e1, ...)")
    edge_columns.sort(key=lambda c: int(c[1:]))

    X = apply_transform(frame[edge_columns].to_numpy(dtype=np.float64).T, transform)
    ids = frame[SUBJECT_COLUMN].astype(str).tolist() if SUBJECT_COLUMN in frame else None
    labels = frame[LABEL_COLUMN].to_numpy() if LABEL_COLUMN in frame else None
    trait = frame[TRAIT_COLUMN].to_numpy(dtype=np.float64) if TRAIT_COLUMN in frame else None

    logger.info("Loaded %d subjects x %d edges from %s", X.shape[1], X.shape[0], path)
    return NetworkDataset(
        X=X,
        edge_map=EdgeIndexMap.from_edge_count(X.shape[0]),
        labels=labels,
        trait=trait,
        subject_ids=ids,
    )


def write_dataset_csv(data: NetworkDataset, path: Path) -> Path:
    """Write ``data`` subjects-as-rows, with ``label``/``trait`` columns when present."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ids = data.subject_ids or tuple(f"s{i}" for i in range(data.n))
    frame = pd.DataFrame(data.X.T, columns=[f"e{e}" for e in range(data.d)])
    frame.insert(0, SUBJECT_COLUMN, list(ids))
    if data.labels is not None:
        frame[LABEL_COLUMN] = data.labels
    if data.trait is not None:
        frame[TRAIT_COLUMN] = data.trait
    frame.to_csv(path, index=False, float_format=None, lineterminator="\n")
    logger.debug("Wrote dataset %s (%d x %d)", path, data.n, data.d)
    return path


def read_adjacency_folder(directory: Path, transform: Transform = "none") -> NetworkDataset:
    """
    Build a dataset from one headerless ``v x v`` CSV matrix per subject.

    Files are taken in sorted name order; subject ids are the file stems.
    """
    directory = Path(directory)
    if not directory.is_dir():
        logger.error("Adjacency folder not found: %s", directory.absolute())
        raise FileNotFoundError(f"Adjacency folder not found: {directory.absolute()}")

    files = sorted(directory.glob("*.csv"))
    if not files:
        raise ValueError(f"{directory} contains no CSV matrices")

    columns = []
    edge_map: Optional[EdgeIndexMap] = None
    for file in files:
        matrix = pd.read_csv(file, header=None, float_precision="round_trip").to_numpy(np.float64)
        if edge_map is None:
            edge_map = EdgeIndexMap(matrix.shape[0])
        columns.append(vectorize_adjacency(matrix, edge_map))

    X = apply_transform(np.column_stack(columns), transform)
    logger.info("Loaded %d adjacency matrices (v=%d) from %s", len(files), edge_map.node_count, directory)
    return NetworkDataset(X=X, edge_map=edge_map, subject_ids=tuple(f.stem for f in files))
