import numpy as np
import pytest

from copula_cda import ConfigError, EstimatorConfig, ExperimentSpec, run_experiment, run_experiment1, run_experiment2
from copula_cda.experiments import EXPERIMENT_PARAMETERS, derive_seeds, experiment1_dataset, experiment2_dataset


def test_experiment1_layout():
    ds = experiment1_dataset(1)
    assert ds.feature_names == ("x1", "x2", "x3")
    assert ds.domain_sizes == (200, 300)
    X = ds.features.values
    # second domain is shifted by (1, 1)
    assert np.all(np.abs(X[:200, :2].mean(axis=0)) < 0.25)
    assert np.all(np.abs(X[200:, :2].mean(axis=0) - 1) < 0.2)
    assert np.corrcoef(X[200:, :2].T)[0, 1] > np.corrcoef(X[:200, :2].T)[0, 1]
    s = 1 - 0.8**2
    expected = np.exp(-(X[:, 0] ** 2 - 2 * 0.8 * X[:, 0] * X[:, 1] + X[:, 1] ** 2) / (2 * s)) / (2 * np.pi * np.sqrt(s))
    np.testing.assert_allclose(ds.outcome, expected, rtol=1e-12)


def test_experiment2_layout():
    ds = experiment2_dataset(1)
    assert ds.domain_sizes == (300, 500)
    X = ds.features.values
    assert np.all((X > 0) & (X < 1))
    assert len(ds) == 800
    assert np.all((ds.outcome >= 0) & (ds.outcome <= np.minimum(X[:, 0], X[:, 1])))


@pytest.mark.parametrize("exp_id", ["exp1", "exp2"])
def test_ordering_and_determinism(exp_id):
    spec = ExperimentSpec(exp_id, master_seed=4)
    a = run_experiment(spec)
    assert a.names == ["x1", "x2", "x3"]
    h = a.h_ci
    assert h["x1"] > h["x3"] and h["x2"] > h["x3"]
    assert a == run_experiment(spec)


def test_seeds_change_data():
    a = experiment1_dataset(1).features.values
    b = experiment1_dataset(2).features.values
    assert not np.array_equal(a, b)


def test_derive_seeds_stable():
    assert derive_seeds(3)["perm"] == derive_seeds(3)["perm"]
    assert derive_seeds(3)["perm"] != derive_seeds(4)["perm"]


def test_with_permutations():
    rep = run_experiment1(ExperimentSpec("exp1", 2, EstimatorConfig(tie_seed=2), B=50))
    assert rep.B == 50
    assert rep["x1"].p_value <= 0.05
    assert rep["x1"].h_ci == run_experiment1(ExperimentSpec("exp1", 2, EstimatorConfig(tie_seed=2))).h_ci["x1"]


def test_spec_errors():
    with pytest.raises(ConfigError):
        ExperimentSpec("exp3")
    with pytest.raises(ConfigError):
        run_experiment2(ExperimentSpec("exp1"))


def test_parameter_record():
    p = EXPERIMENT_PARAMETERS
    assert [d["rho"] for d in p["exp1"]["domains"]] == [0.5, 0.9]
    assert [d["n"] for d in p["exp1"]["domains"]] == [200, 300]
    assert p["exp1"]["outcome"]["rho"] == 0.8
    assert [d["theta"] for d in p["exp2"]["domains"]] == [0.3, 3.0]
    assert [d["n"] for d in p["exp2"]["domains"]] == [300, 500]
    assert p["exp2"]["outcome"]["theta"] == 0.5
    assert p["exp2"]["x3"]["n"] == 800
