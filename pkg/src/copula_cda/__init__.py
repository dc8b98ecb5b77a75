"""Copula entropy estimation, conditional independence testing and causal
domain adaptation."""

from .causal_da import (
    CiReport,
    DomainDataset,
    FeatureCI,
    augment_domains,
    ci_strengths,
    permutation_pvalues,
    select_features,
)
from .copulas import (
    CopulaSpec,
    clayton_cdf,
    frank_cdf,
    gaussian_pdf2,
    sample_bivariate_gaussian,
    sample_clayton,
    sample_frank,
)
from .errors import (
    ConfigError,
    CopulaCDAError,
    DimensionError,
    DomainError,
    InvalidDataError,
    InvalidSampleError,
    ParameterError,
    ParseError,
    SchemaError,
    ShapeError,
    UsageError,
)
from .estimator import (
    EstimatorConfig,
    SampleMatrix,
    ci_measure,
    copula_entropy,
    knn_entropy,
    rank_transform,
    transfer_entropy,
)
from .experiments import ExperimentSpec, run_experiment, run_experiment1, run_experiment2

__version__ = "0.1.0"
