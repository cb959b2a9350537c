from pathlib import Path

import pytest

from src.acerl.config import AcerlConfig, KMeansConfig, load_file, resolve_settings
from src.acerl.harness import ExperimentPlan
from src.acerl.harness.commands import _SPEC_ADAPTER

SAMPLES = Path(__file__).resolve().parents[2] / "samples" / "simulation"


class TestSamples:
    """The shipped sample documents stay valid."""

    @pytest.mark.parametrize("name, kind", [("sparse_spec.yaml", "sparse"),
                                            ("community_spec.yaml", "community")])
    def test_simulation_specs(self, name, kind):
        """Test each simulation spec parses to its design."""
        assert _SPEC_ADAPTER.validate_python(load_file(SAMPLES / name)).kind == kind

    def test_estimator_config(self):
        """Test the estimator config resolves."""
        settings = resolve_settings(None, SAMPLES / "estimator.yaml")
        assert settings.get_config(AcerlConfig).s == 150
        assert settings.get_config(KMeansConfig).restarts == 20

    def test_plan(self):
        """Test the plan expands to its grid."""
        plan = ExperimentPlan.model_validate(load_file(SAMPLES / "plan.yaml"))
        assert len(plan.cells()) == 8
        assert plan.estimator.init == "gram_pca"
        assert (plan.estimator.eta, plan.estimator.diag_weight) == (0.5, "squared")
