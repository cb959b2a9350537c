"""
Replication runner.

Every (cell, rep) unit derives its own seed from the plan's base seed and a
stable hash of the cell parameters, so editing the grid never shifts the
streams of other cells. Finished cells are checkpointed as JSON under
``<output>/checkpoints/`` together with a fingerprint of the plan settings,
and skipped on the next run while the fingerprint still matches.
"""
import json
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd
from filelock import FileLock

from .plan import DesignCell, ExperimentPlan
from ..core.dataset import NetworkDataset
from ..core.embedding import EmbeddingMatrix, SubjectEmbedding
from ..downstream import (
    build_similarity,
    edge_precision,
    fit_classifier,
    predict_labels,
    select_edges,
    spectral_communities,
    subject_embeddings,
)
from ..errors import AcerlError
from ..estimator import fit
from ..metrics import (
    ExperimentRecord,
    classification_accuracy,
    format_mean_se,
    gram_error,
    misclustering_losses,
    procrustes_dist,
    rand_index,
    selection_recall,
)
from ..simulation import CommunitySimSpec, SparseSimSpec, gen_community, gen_sparse, split_indices
from ..spca import SpcaResult, fit_spca, spca_subject_embeddings
from ..utils import derive_seed

logger = logging.getLogger(__name__)

CHECKPOINT_DIR = "checkpoints"
RESULTS_FILE = "results.csv"
TABLE_FILE = "results.txt"
RESULT_COLUMNS = ["n", "v", "d", "r", "sigma_xi", "method", "task", "metric",
                  "mean", "se", "reps", "values_json", "status"]
PERCENT_METRICS = {"accuracy", "recall", "rand_index", "misclustering", "worst_misclustering"}

_SEED_32 = 1 << 32

# (method, task, metric) -> value
Outcome = dict[tuple[str, str, str], float]
# (method, task) -> error message
Failures = dict[tuple[str, str], str]


def _fit_method(method: str, plan: ExperimentPlan, train: NetworkDataset, r: int,
                s: Optional[int], seed: int) -> Union[EmbeddingMatrix, SpcaResult]:
    if method == "acerl":
        config = plan.estimator.model_copy(update={"r": r, "s": s, "seed": seed})
        return fit(train, config, admm=plan.admm).q_hat
    return fit_spca(train, r, s if s is not None else train.d)


def _embedding(model: Union[EmbeddingMatrix, SpcaResult]) -> EmbeddingMatrix:
    return model.as_embedding() if isinstance(model, SpcaResult) else model


def _subject_weights(plan: ExperimentPlan, model: Union[EmbeddingMatrix, SpcaResult],
                     train: NetworkDataset) -> Optional[np.ndarray]:
    if isinstance(model, SpcaResult) or plan.embedding == "least_squares":
        return None
    return edge_precision(model, train)


def _subjects(model: Union[EmbeddingMatrix, SpcaResult], data: NetworkDataset,
              weights: Optional[np.ndarray] = None) -> SubjectEmbedding:
    if isinstance(model, SpcaResult):
        return spca_subject_embeddings(model, data)
    return subject_embeddings(model, data, weights)


def _sparse_tasks(plan: ExperimentPlan, cell: DesignCell, seed: int, outcome: Outcome, failures: Failures) -> None:
    tasks = [t for t in plan.tasks if t != "community"]
    data, truth = gen_sparse(SparseSimSpec(n=cell.n, v=cell.v, r=cell.r, s_star=plan.s_star,
                                           sigma_xi=cell.sigma_xi, seed=seed))
    train_idx, test_idx = split_indices(data.n, plan.train_frac, derive_seed(seed, "split"))
    train, test = data.subset(train_idx), data.subset(test_idx)
    s = None if plan.s is None else min(plan.s, data.d)

    for method in plan.methods:
        try:
            model = _fit_method(method, plan, train, cell.r, s, derive_seed(seed, "fit"))
        except (AcerlError, ValueError, ArithmeticError) as exc:
            for task in tasks:
                failures[(method, task)] = f"{type(exc).__name__}: {exc}"
            continue
        q_hat = _embedding(model)

        for task in tasks:
            try:
                if task == "classify":
                    weights = _subject_weights(plan, model, train)
                    clf = fit_classifier(_subjects(model, train, weights), train.labels)
                    pred = predict_labels(clf, _subjects(model, test, weights))
                    outcome[(method, task, "accuracy")] = classification_accuracy(pred, test.labels)
                elif task == "select":
                    chosen = select_edges(q_hat, s if s is not None else q_hat.d)
                    outcome[(method, task, "recall")] = selection_recall(chosen, truth.support)
                elif task == "error":
                    outcome[(method, task, "gram_error")] = gram_error(q_hat, truth.q_star)
                    outcome[(method, task, "procrustes")] = procrustes_dist(q_hat, truth.q_star)
            except (AcerlError, ValueError, ArithmeticError) as exc:
                failures[(method, task)] = f"{type(exc).__name__}: {exc}"


def _community_task(plan: ExperimentPlan, cell: DesignCell, seed: int, outcome: Outcome, failures: Failures) -> None:
    data, truth = gen_community(CommunitySimSpec(n=cell.n, v=cell.v, r=cell.r, G=plan.G,
                                                 sigma_xi=cell.sigma_xi, seed=seed))
    train_idx, _ = split_indices(data.n, plan.train_frac, derive_seed(seed, "split"))
    train = data.subset(train_idx)
    kmeans = plan.kmeans.model_copy(update={"seed": derive_seed(seed, "kmeans") % _SEED_32})

    for method in plan.methods:
        try:
            model = _fit_method(method, plan, train, cell.r, None, derive_seed(seed, "fit"))
            assignment = spectral_communities(build_similarity(_embedding(model), data.edge_map),
                                              plan.G, kmeans)
            outcome[(method, "community", "rand_index")] = rand_index(assignment.labels, truth.node_labels)
            overall, worst = misclustering_losses(assignment.theta,
                                                  _one_hot(truth.node_labels, plan.G))
            outcome[(method, "community", "misclustering")] = overall
            outcome[(method, "community", "worst_misclustering")] = worst
        except (AcerlError, ValueError, ArithmeticError) as exc:
            failures[(method, "community")] = f"{type(exc).__name__}: {exc}"


def _one_hot(labels: np.ndarray, G: int) -> np.ndarray:
    theta = np.zeros((labels.size, G), dtype=np.int64)
    theta[np.arange(labels.size), labels] = 1
    return theta


def run_replication(plan: ExperimentPlan, cell: DesignCell, rep: int) -> tuple[Outcome, Failures]:
    """Generate, split, fit and evaluate one replication of one cell."""
    seed = derive_seed(plan.base_seed, cell.as_dict(), rep)
    outcome: Outcome = {}
    failures: Failures = {}
    sparse_tasks = [t for t in plan.tasks if t != "community"]
    stages = [(sparse_tasks, _sparse_tasks)] if sparse_tasks else []
    if "community" in plan.tasks:
        stages.append((["community"], _community_task))

    for tasks, stage in stages:
        try:
            stage(plan, cell, seed, outcome, failures)
        except (AcerlError, ValueError, ArithmeticError) as exc:
            logger.warning("Cell %s rep %d: %s", cell.key, rep, exc)
            for method in plan.methods:
                for task in tasks:
                    failures.setdefault((method, task), f"{type(exc).__name__}: {exc}")
    logger.debug("Cell %s rep %d: %d values, %d failures", cell.key, rep, len(outcome), len(failures))
    return outcome, failures


def _metrics_for(task: str) -> tuple[str, ...]:
    return {
        "classify": ("accuracy",),
        "select": ("recall",),
        "error": ("gram_error", "procrustes"),
        "community": ("rand_index", "misclustering", "worst_misclustering"),
    }[task]


def aggregate_cell(plan: ExperimentPlan, cell: DesignCell,
                   replications: list[tuple[Outcome, Failures]]) -> list[ExperimentRecord]:
    records = []
    for method in plan.methods:
        for task in plan.tasks:
            errors = [f for _, fails in replications if (f := fails.get((method, task)))]
            status = "ok" if not errors else f"failed {len(errors)}/{len(replications)}: {errors[0]}"
            for metric in _metrics_for(task):
                values = tuple(out[(method, task, metric)] for out, _ in replications
                               if (method, task, metric) in out)
                records.append(ExperimentRecord(n=cell.n, v=cell.v, d=cell.d, r=cell.r,
                                                sigma_xi=cell.sigma_xi, method=method, task=task,
                                                metric=metric, values=values, status=status))
    return records


def _checkpoint_path(plan: ExperimentPlan, cell: DesignCell) -> Path:
    return Path(plan.output_dir) / CHECKPOINT_DIR / f"{cell.key}.json"


def load_checkpoint(plan: ExperimentPlan, cell: DesignCell) -> Optional[list[ExperimentRecord]]:
    """
    Records of a finished cell, or ``None`` when the cell must be recomputed.

    A checkpoint only counts when its fingerprint matches ``plan.fingerprint(cell)``.
    """
    path = _checkpoint_path(plan, cell)
    if not path.exists():
        return None
    with FileLock(f"{path}.lock"):
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
            if not isinstance(payload, dict):
                raise ValueError("expected an object with a fingerprint and records")
            fingerprint = payload.get("fingerprint")
            records = [ExperimentRecord.model_validate(row) for row in payload.get("records", [])]
        except ValueError as exc:
            logger.warning("Ignoring unreadable checkpoint %s: %s", path, exc)
            return None
    if fingerprint != plan.fingerprint(cell):
        logger.info("Checkpoint %s was written with different plan settings; recomputing", path)
        return None
    expected = {(m, t, x) for m in plan.methods for t in plan.tasks for x in _metrics_for(t)}
    if {(r.method, r.task, r.metric) for r in records} != expected:
        logger.info("Checkpoint %s was written for different methods or tasks; recomputing", path)
        return None
    return records


def write_checkpoint(plan: ExperimentPlan, cell: DesignCell, records: list[ExperimentRecord]) -> Path:
    path = _checkpoint_path(plan, cell)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = json.dumps({
        "fingerprint": plan.fingerprint(cell),
        "records": [r.model_dump(include=set(ExperimentRecord.model_fields)) for r in records],
    }, indent=2)
    with FileLock(f"{path}.lock"):
        tmp = path.with_suffix(".tmp")
        tmp.write_text(payload, encoding="utf-8")
        tmp.replace(path)
    return path


def run_plan(plan: ExperimentPlan) -> list[ExperimentRecord]:
    """
    Run every pending cell of ``plan``; cells with a checkpoint are reused.

    :return: All records, sorted by cell then method, task and metric.
    """
    records: list[ExperimentRecord] = []
    pending: list[DesignCell] = []
    for cell in plan.cells():
        cached = load_checkpoint(plan, cell)
        if cached is None:
            pending.append(cell)
        else:
            logger.info("Reusing checkpoint for cell %s", cell.key)
            records.extend(cached)

    logger.info("Running %d of %d cells x %d reps with %d worker(s)",
                len(pending), len(plan.cells()), plan.reps, plan.workers)

    results: dict[DesignCell, list] = defaultdict(lambda: [None] * plan.reps)
    remaining = {cell: plan.reps for cell in pending}

    def finish(cell: DesignCell) -> None:
        cell_records = aggregate_cell(plan, cell, results.pop(cell))
        write_checkpoint(plan, cell, cell_records)
        records.extend(cell_records)
        logger.info("Finished cell %s", cell.key)

    if plan.workers == 1:
        for cell in pending:
            for rep in range(plan.reps):
                results[cell][rep] = run_replication(plan, cell, rep)
            finish(cell)
    else:
        with ProcessPoolExecutor(max_workers=plan.workers) as pool:
            futures = {
                pool.submit(run_replication, plan, cell, rep): (cell, rep)
                for cell in pending for rep in range(plan.reps)
            }
            for future in as_completed(futures):
                cell, rep = futures[future]
                results[cell][rep] = future.result()
                remaining[cell] -= 1
                if remaining[cell] == 0:
                    finish(cell)

    return sorted(records, key=lambda r: r.sort_key)


def _formatted(record: ExperimentRecord) -> str:
    if record.mean is None:
        return "failed"
    if record.metric in PERCENT_METRICS:
        return format_mean_se(record.mean, record.se, percent=True)
    return format_mean_se(record.mean, record.se, percent=False, digits=3)


def results_frame(records: list[ExperimentRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in records], columns=RESULT_COLUMNS)


def results_table(records: list[ExperimentRecord]) -> str:
    """Human-readable ``mean(se)`` table: one row per design, one column per metric and method."""
    if not records:
        return ""
    frame = pd.DataFrame([
        {"n": r.n, "v": r.v, "d": r.d, "r": r.r, "sigma_xi": r.sigma_xi,
         "column": f"{r.metric}[{r.method}]", "value": _formatted(r)}
        for r in records
    ])
    table = frame.pivot(index=["n", "v", "d", "r", "sigma_xi"], columns="column", values="value")
    table.columns.name = None
    return table.to_string()


def write_results(plan: ExperimentPlan, records: list[ExperimentRecord]) -> tuple[Path, Path]:
    output = Path(plan.output_dir)
    output.mkdir(parents=True, exist_ok=True)
    csv_path = output / RESULTS_FILE
    table_path = output / TABLE_FILE
    results_frame(records).to_csv(csv_path, index=False, lineterminator="\n")
    table_path.write_text(results_table(records) + "\n", encoding="utf-8")
    logger.info("Wrote %s and %s", csv_path, table_path)
    return csv_path, table_path
