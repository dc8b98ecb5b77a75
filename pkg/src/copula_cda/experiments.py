"""The two two-domain simulation studies.

Experiment 1 pools a bivariate Gaussian with correlation 0.5 (200 rows) and
one with correlation 0.9 shifted by (1, 1) (300 rows); the outcome is the
standard bivariate normal density with correlation 0.8 evaluated at
``(x1, x2)``; ``x3`` is independent N(0, 1) noise.

Experiment 2 pools Clayton samples with theta 0.3 (300 rows) and 3.0
(500 rows); the outcome is the Frank copula CDF with theta 0.5 at
``(x1, x2)``; ``x3`` is independent U(0, 1) noise.

In both, ``x1`` and ``x2`` should be conditionally dependent with the outcome
given the domain and ``x3`` conditionally independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .causal_da import CiReport, DomainDataset, augment_domains, ci_strengths, permutation_pvalues
from .copulas import frank_cdf, gaussian_pdf2, sample_bivariate_gaussian, sample_clayton
from .errors import ConfigError
from .estimator import EstimatorConfig, SampleMatrix

__all__ = [
    "EXPERIMENT_PARAMETERS",
    "ExperimentSpec",
    "derive_seeds",
    "experiment1_dataset",
    "experiment2_dataset",
    "run_experiment",
    "run_experiment1",
    "run_experiment2",
]

EXPERIMENT_PARAMETERS = {
    "exp1": {
        "domains": [
            {"family": "gaussian", "rho": 0.5, "n": 200, "mean": [0.0, 0.0]},
            {"family": "gaussian", "rho": 0.9, "n": 300, "mean": [1.0, 1.0]},
        ],
        "outcome": {"function": "bivariate_normal_pdf", "rho": 0.8},
        "x3": {"distribution": "normal", "mean": 0.0, "variance": 1.0, "n": 500},
    },
    "exp2": {
        "domains": [
            {"family": "clayton", "theta": 0.3, "n": 300},
            {"family": "clayton", "theta": 3.0, "n": 500},
        ],
        "outcome": {"function": "frank_cdf", "theta": 0.5},
        "x3": {"distribution": "uniform", "low": 0.0, "high": 1.0, "n": 800},
    },
}

FEATURES = ("x1", "x2", "x3")


@dataclass(frozen=True)
class ExperimentSpec:
    id: str
    master_seed: int = 1
    cfg: EstimatorConfig = field(default_factory=EstimatorConfig)
    B: int = 0

    def __post_init__(self):
        if self.id not in EXPERIMENT_PARAMETERS:
            raise ConfigError(f"unknown experiment {self.id!r}; expected exp1 or exp2")
        if self.B < 0:
            raise ConfigError(f"B must be >= 0, got {self.B}")


def derive_seeds(master_seed: int) -> dict:
    """Sub-seeds for every random stage, all spawned from ``master_seed``."""
    data, x3, perm = np.random.SeedSequence(master_seed).spawn(3)
    return {
        "domains": data,
        "x3": x3,
        "perm": int(perm.generate_state(1, np.uint32)[0]),
    }


def _finish(pairs, outcome_fn, x3) -> DomainDataset:
    pooled = augment_domains([(p, outcome_fn(p.values[:, 0], p.values[:, 1])) for p in pairs])
    feats = np.column_stack([pooled.features.values, x3])
    return DomainDataset(SampleMatrix(feats, FEATURES), pooled.outcome, pooled.context, pooled.domain_sizes)


def experiment1_dataset(master_seed: int = 1) -> DomainDataset:
    p = EXPERIMENT_PARAMETERS["exp1"]
    seeds = derive_seeds(master_seed)
    rngs = [np.random.default_rng(s) for s in seeds["domains"].spawn(len(p["domains"]))]
    pairs = [
        sample_bivariate_gaussian(d["n"], d["mean"], d["rho"], rng) for d, rng in zip(p["domains"], rngs)
    ]
    n = sum(d["n"] for d in p["domains"])
    x3 = np.random.default_rng(seeds["x3"]).normal(p["x3"]["mean"], np.sqrt(p["x3"]["variance"]), n)
    rho = p["outcome"]["rho"]
    return _finish(pairs, lambda a, b: gaussian_pdf2(a, b, rho), x3)


def experiment2_dataset(master_seed: int = 1) -> DomainDataset:
    p = EXPERIMENT_PARAMETERS["exp2"]
    seeds = derive_seeds(master_seed)
    rngs = [np.random.default_rng(s) for s in seeds["domains"].spawn(len(p["domains"]))]
    pairs = [sample_clayton(d["n"], d["theta"], rng) for d, rng in zip(p["domains"], rngs)]
    n = sum(d["n"] for d in p["domains"])
    x3 = np.random.default_rng(seeds["x3"]).uniform(p["x3"]["low"], p["x3"]["high"], n)
    theta = p["outcome"]["theta"]
    return _finish(pairs, lambda a, b: frank_cdf(a, b, theta), x3)


def _run(ds: DomainDataset, spec: ExperimentSpec) -> CiReport:
    if spec.B > 0:
        report = permutation_pvalues(ds, spec.cfg, spec.B, derive_seeds(spec.master_seed)["perm"])
    else:
        report = ci_strengths(ds, spec.cfg)
    report.extra.update(experiment=spec.id, master_seed=spec.master_seed)
    return report


def run_experiment1(spec: ExperimentSpec) -> CiReport:
    if spec.id != "exp1":
        raise ConfigError(f"run_experiment1 got spec for {spec.id!r}")
    return _run(experiment1_dataset(spec.master_seed), spec)


def run_experiment2(spec: ExperimentSpec) -> CiReport:
    if spec.id != "exp2":
        raise ConfigError(f"run_experiment2 got spec for {spec.id!r}")
    return _run(experiment2_dataset(spec.master_seed), spec)


def run_experiment(spec: ExperimentSpec) -> CiReport:
    return {"exp1": run_experiment1, "exp2": run_experiment2}[spec.id](spec)
