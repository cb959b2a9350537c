from .plan import DesignCell, ExperimentPlan
from .runner import (
    run_replication,
    aggregate_cell,
    run_plan,
    results_frame,
    results_table,
    write_results,
)
from .commands import (
    GroundTruth,
    cmd_simulate,
    cmd_fit,
    cmd_tasks,
    cmd_experiment,
    cmd_tune,
)

__all__ = [
    "DesignCell",
    "ExperimentPlan",
    "run_replication",
    "aggregate_cell",
    "run_plan",
    "results_frame",
    "results_table",
    "write_results",
    "GroundTruth",
    "cmd_simulate",
    "cmd_fit",
    "cmd_tasks",
    "cmd_experiment",
    "cmd_tune",
]
