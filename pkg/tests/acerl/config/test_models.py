import pydantic
import pytest

from src.acerl.config.models import AcerlConfig, AdmmConfig, KMeansConfig


class TestAcerlConfig:
    """Tests for the estimator configuration."""

    def test_defaults(self):
        """Test default tuning values."""
        config = AcerlConfig()
        assert config.r == 10
        assert config.s is None
        assert config.eta == 0.1
        assert config.inner_iters is None and config.outer_iters is None
        assert config.init == "auto"
        assert config.diag_weight == "enumerated"
        assert config.step_scaling == "spectral"
        assert config.inner_schedule == "constant"

    @pytest.mark.parametrize("field,value", [
        ("r", 0),
        ("s", 0),
        ("eta", 0.0),
        ("inner_iters", 0),
        ("seed", -1),
        ("init", "random"),
    ])
    def test_invalid_values_rejected(self, field, value):
        """Test out-of-range values fail validation."""
        with pytest.raises(pydantic.ValidationError):
            AcerlConfig(**{field: value})

    def test_unknown_field_rejected(self):
        """Test extra fields are forbidden."""
        with pytest.raises(pydantic.ValidationError):
            AcerlConfig(step=0.1)

    def test_frozen(self):
        """Test configurations are immutable."""
        config = AcerlConfig()
        with pytest.raises(pydantic.ValidationError):
            config.r = 3


class TestSolverConfigs:
    """Tests for the ADMM and k-means sections."""

    def test_admm_defaults(self):
        """Test ADMM defaults."""
        config = AdmmConfig()
        assert (config.rho, config.lam, config.max_iter, config.tol) == (1.0, None, 50, 1e-4)

    def test_kmeans_seed_bounded(self):
        """Test the k-means seed must fit in 32 bits."""
        with pytest.raises(pydantic.ValidationError):
            KMeansConfig(seed=1 << 32)
