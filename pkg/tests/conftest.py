import os
import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from src.acerl.config.registry import _CONFIGURATIONS  # noqa: E402
from src.acerl.core.dataset import NetworkDataset  # noqa: E402
from src.acerl.core.edges import EdgeIndexMap  # noqa: E402
from src.acerl.simulation import SparseSimSpec, gen_sparse  # noqa: E402

settings.register_profile("acerl", suppress_health_check=[HealthCheck.function_scoped_fixture], deadline=None)
settings.load_profile("acerl")


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def rng():
    """Seeded generator for test data."""
    return np.random.default_rng(20240611)


@pytest.fixture
def small_dataset(rng):
    """Random dataset on v=6 nodes (d=15) with 12 subjects and binary labels."""
    X = rng.standard_normal((15, 12))
    labels = np.array([0, 1] * 6)
    return NetworkDataset(X=X, edge_map=EdgeIndexMap(6), labels=labels)


@pytest.fixture
def planted_sparse():
    """Noiseless sparse design: v=12 (d=66), r=3, 10 important edges, 240 subjects."""
    return gen_sparse(SparseSimSpec(n=240, v=12, r=3, s_star=10, sigma_xi=0.0, seed=3))


@pytest.fixture
def empty_config_file(temp_dir):
    """Create an empty config file."""
    config_path = temp_dir / "empty.yaml"
    config_path.write_text("")
    return config_path


@pytest.fixture(autouse=True)
def preserve_configurations():
    """Restore the configuration registry after each test."""
    snapshot = dict(_CONFIGURATIONS)
    yield
    _CONFIGURATIONS.clear()
    _CONFIGURATIONS.update(snapshot)


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, temp_dir):
    """Run every test from an empty directory without ACERL_* variables."""
    for key in list(os.environ):
        if key.startswith("ACERL_"):
            monkeypatch.delenv(key)
    monkeypatch.chdir(temp_dir)
