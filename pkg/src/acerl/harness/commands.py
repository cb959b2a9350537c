"""Implementations behind the ``acerl`` sub-commands."""
import json
import logging
from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Sequence, Union

import numpy as np
import pandas as pd
import pydantic

from .plan import ExperimentPlan
from .runner import run_plan, write_results
from ..config import AcerlConfig, AdmmConfig, KMeansConfig, Settings, load_file
from ..config.models import SCHEMA_VERSION
from ..core.dataset import NetworkDataset, read_dataset_csv, write_dataset_csv
from ..core.embedding import FitResult
from ..downstream import (
    SubjectWeighting,
    build_similarity,
    edge_precision,
    fit_classifier,
    fit_regressor,
    hub_nodes,
    predict_labels,
    predict_values,
    select_edges,
    spectral_communities,
    subject_embeddings,
)
from ..errors import DimensionMismatchError, SchemaError
from ..estimator import fit
from ..metrics import (
    classification_accuracy,
    edge_norm_profile,
    explained_variance_profile,
    mean_squared_error,
    rand_index,
    selection_recall,
)
from ..persistence import Model, load_model, save_model
from ..simulation import CommunitySimSpec, SparseSimSpec, gen_community, gen_sparse, split_indices
from ..spca import SpcaResult, fit_spca, spca_subject_embeddings
from ..utils import expanded_path

logger = logging.getLogger(__name__)

TaskName = Literal["classify", "select", "community", "regress", "hubs"]

_SPEC_ADAPTER = pydantic.TypeAdapter(
    Annotated[Union[SparseSimSpec, CommunitySimSpec], pydantic.Field(discriminator="kind")]
)


class GroundTruth(pydantic.BaseModel):
    """Sidecar written next to a simulated dataset."""
    schema_version: str = SCHEMA_VERSION
    spec: dict[str, Any]
    q_star: str
    support: Optional[list[int]] = None
    labels: Optional[list[int]] = None
    node_labels: Optional[list[int]] = None


def _document(path: Path) -> dict:
    return load_file(expanded_path(path))


def cmd_simulate(spec_path: Path, output_dir: Path) -> list[Path]:
    """
    Generate a synthetic dataset from a spec document.

    :return: Paths of the dataset CSV, the ground-truth sidecar and the ``Q*`` matrix.
    """
    spec = _SPEC_ADAPTER.validate_python(_document(spec_path))
    output_dir = expanded_path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    stem = f"{spec.kind}_n{spec.n}_v{spec.v}_seed{spec.seed}"

    if isinstance(spec, SparseSimSpec):
        data, truth = gen_sparse(spec)
        sidecar = GroundTruth(spec=spec.model_dump(), q_star=f"{stem}_q_star.csv",
                              support=truth.support.tolist(),
                              labels=None if truth.labels is None else truth.labels.tolist())
    else:
        data, truth = gen_community(spec)
        sidecar = GroundTruth(spec=spec.model_dump(), q_star=f"{stem}_q_star.csv",
                              node_labels=truth.node_labels.tolist())

    dataset_path = write_dataset_csv(data, output_dir / f"{stem}.csv")
    q_star_path = output_dir / sidecar.q_star
    pd.DataFrame(truth.q_star.Q).to_csv(q_star_path, header=False, index=False, lineterminator="\n")
    truth_path = output_dir / f"{stem}_truth.json"
    truth_path.write_text(sidecar.model_dump_json(indent=2), encoding="utf-8")
    logger.info("Simulated %s design into %s", spec.kind, output_dir)
    return [dataset_path, truth_path, q_star_path]


def fit_model(data: NetworkDataset, settings: Settings, method: str) -> Model:
    config = settings.get_config(AcerlConfig)
    if method == "spca":
        s = config.s if config.s is not None else data.d
        return fit_spca(data, config.r, s)
    return fit(data, config, admm=settings.get_config(AdmmConfig))


def trace_summary(model: Model) -> list[str]:
    if isinstance(model, SpcaResult):
        return [f"spca: {model.iterations} iterations, converged={model.converged}, "
                f"support={model.support.size}"]
    return [f"k={t.k} surrogate={t.surrogate:.6g} mean_p={t.mean_p:.4f} support={t.support_size}"
            for t in model.trace]


def cmd_fit(dataset_path: Path, output_dir: Path, settings: Settings, method: str = "acerl") -> tuple[Path, list[str]]:
    data = read_dataset_csv(expanded_path(dataset_path))
    model = fit_model(data, settings, method)
    return save_model(model, output_dir), trace_summary(model)


def _subject_weights(model: Model, train: NetworkDataset, embedding: SubjectWeighting) -> Optional[np.ndarray]:
    if isinstance(model, SpcaResult) or embedding == "least_squares":
        return None
    return edge_precision(model.q_hat, train)


def _subjects(model: Model, data: NetworkDataset, weights: Optional[np.ndarray] = None):
    if isinstance(model, SpcaResult):
        return spca_subject_embeddings(model, data)
    return subject_embeddings(model.q_hat, data, weights)


def _embedding(model: Model):
    return model.as_embedding() if isinstance(model, SpcaResult) else model.q_hat


def _load_truth(path: Optional[Path]) -> Optional[GroundTruth]:
    if path is None:
        return None
    try:
        return GroundTruth.model_validate(_document(path))
    except pydantic.ValidationError as exc:
        raise SchemaError(f"invalid ground-truth sidecar {path}: {exc}") from exc


def cmd_tasks(
        model_path: Path,
        dataset_path: Path,
        tasks: Sequence[TaskName],
        truth_path: Optional[Path] = None,
        s: Optional[int] = None,
        G: int = 2,
        top: int = 5,
        frac: float = 0.6,
        seed: int = 0,
        kmeans: Optional[KMeansConfig] = None,
        embedding: SubjectWeighting = "precision_weighted"
) -> dict[str, Any]:
    """
    Run downstream tasks with a fitted model.

    Supervised tasks fit on a ``frac`` training split and report on the rest.
    Subject coordinates of an ACERL model are weighted by the edge precisions
    of the training split unless ``embedding="least_squares"``.

    :return: JSON-serialisable metrics keyed by task.
    """
    model = load_model(model_path)
    data = read_dataset_csv(expanded_path(dataset_path))
    q_hat = _embedding(model)
    if q_hat.d != data.d:
        raise DimensionMismatchError(f"model has d={q_hat.d} but the dataset has d={data.d}")
    truth = _load_truth(truth_path)
    s = s if s is not None else (model.config.s if isinstance(model, FitResult) else model.support.size)
    s = min(s, data.d)

    report: dict[str, Any] = {}
    if {"classify", "regress"} & set(tasks):
        train_idx, test_idx = split_indices(data.n, frac, seed)
        train, test = data.subset(train_idx), data.subset(test_idx)
        weights = _subject_weights(model, train, embedding)

    for task in tasks:
        if task == "classify":
            if data.labels is None:
                raise ValueError("classification needs a label column in the dataset")
            clf = fit_classifier(_subjects(model, train, weights), train.labels)
            pred = predict_labels(clf, _subjects(model, test, weights))
            report[task] = {"accuracy": classification_accuracy(pred, test.labels),
                            "n_train": train.n, "n_test": test.n}
        elif task == "regress":
            if data.trait is None:
                raise ValueError("trait prediction needs a trait column in the dataset")
            reg = fit_regressor(_subjects(model, train, weights), train.trait)
            pred = predict_values(reg, _subjects(model, test, weights))
            report[task] = {"mse": mean_squared_error(pred, test.trait),
                            "n_train": train.n, "n_test": test.n}
        elif task == "select":
            chosen = select_edges(q_hat, s)
            report[task] = {"s": s, "edges": chosen.tolist()}
            if truth is not None and truth.support is not None:
                report[task]["recall"] = selection_recall(chosen, truth.support)
        elif task == "hubs":
            if data.edge_map is None:
                raise ValueError("hub detection needs node-pair data (d = v(v-1)/2)")
            report[task] = {"s": s, "hubs": [{"node": u, "degree": k}
                                             for u, k in hub_nodes(q_hat, data.edge_map, s, top)]}
        elif task == "community":
            assignment = spectral_communities(build_similarity(q_hat, data.edge_map), G, kmeans)
            report[task] = {"G": G, "labels": assignment.labels.tolist()}
            if truth is not None and truth.node_labels is not None:
                report[task]["rand_index"] = rand_index(assignment.labels, truth.node_labels)
        else:
            raise ValueError(f"Unknown task: {task}")
        logger.info("Task %s done", task)
    return report


def cmd_experiment(plan_path: Path, workers: Optional[int] = None,
                   output_dir: Optional[Path] = None) -> tuple[Path, Path]:
    document = _document(plan_path)
    if workers is not None:
        document["workers"] = workers
    if output_dir is not None:
        document["output_dir"] = str(output_dir)
    plan = ExperimentPlan.model_validate(document)
    records = run_plan(plan)
    return write_results(plan, records)


def cmd_tune(dataset_path: Path, r_max: int, output_dir: Path,
             model_path: Optional[Path] = None) -> list[Path]:
    """Write the explained-variance profile and, given a model, the edge-norm profile as CSV."""
    data = read_dataset_csv(expanded_path(dataset_path))
    output_dir = expanded_path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    fractions = explained_variance_profile(data, r_max)
    variance_path = output_dir / "explained_variance.csv"
    pd.DataFrame({"component": np.arange(1, r_max + 1), "fraction": fractions}).to_csv(
        variance_path, index=False, lineterminator="\n")
    written = [variance_path]

    if model_path is not None:
        norms = edge_norm_profile(_embedding(load_model(model_path)))
        norms_path = output_dir / "edge_norms.csv"
        pd.DataFrame({"rank": np.arange(1, norms.size + 1), "norm": norms}).to_csv(
            norms_path, index=False, lineterminator="\n")
        written.append(norms_path)
    return written


def dump_report(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
