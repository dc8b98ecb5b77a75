"""Causal domain adaptation by conditional independence screening.

Samples from several domains are pooled and augmented with a context column
holding the 1-based domain index. Every feature is then scored by its
conditional dependence with the outcome given the context; features that are
conditionally dependent form the invariant predictive subset.

The method assumes the context is exogenous (no feature causes it), is not
confounded with any feature, and that multiple context variables, if any,
are confounded with each other. These are preconditions on the data
collection and are not checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigError, CopulaCDAError, InvalidSampleError, SchemaError, ShapeError
from .estimator import EstimatorConfig, SampleMatrix, _ci_terms, _rank_column, ci_measure, knn_entropy, rank_transform

__all__ = [
    "CiReport",
    "DomainDataset",
    "FeatureCI",
    "augment_domains",
    "ci_strengths",
    "permutation_pvalues",
    "select_features",
]


@dataclass(frozen=True)
class DomainDataset:
    """Pooled multi-domain data.

    ``context`` is the intervention variable; when ``domain_sizes`` is given
    it must read ``1`` for the first block of rows, ``2`` for the next, and so
    on. A continuous context may be supplied with ``domain_sizes=None``.
    """

    features: SampleMatrix
    outcome: np.ndarray
    context: np.ndarray
    domain_sizes: Optional[tuple] = None

    def __post_init__(self):
        features = self.features
        if not isinstance(features, SampleMatrix):
            features = SampleMatrix(features)
        outcome = np.asarray(self.outcome, dtype=np.float64).ravel()
        context = np.asarray(self.context, dtype=np.float64).ravel()
        n = len(features)
        if outcome.shape[0] != n or context.shape[0] != n:
            raise ShapeError(
                f"rows are not aligned: features={n}, outcome={outcome.shape[0]}, context={context.shape[0]}"
            )
        if not (np.all(np.isfinite(outcome)) and np.all(np.isfinite(context))):
            raise SchemaError("outcome and context must be finite")
        sizes = self.domain_sizes
        if sizes is not None:
            sizes = tuple(int(s) for s in sizes)
            if sum(sizes) != n or any(s < 1 for s in sizes):
                raise SchemaError(f"domain sizes {sizes} do not partition {n} rows")
            expected = np.repeat(np.arange(1, len(sizes) + 1, dtype=np.float64), sizes)
            if not np.array_equal(context, expected):
                raise SchemaError("context must be 1..D in contiguous domain blocks")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "outcome", outcome)
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "domain_sizes", sizes)

    @property
    def feature_names(self) -> tuple:
        return self.features.column_names

    def __len__(self):
        return len(self.features)


@dataclass(frozen=True)
class FeatureCI:
    name: str
    h_ci: float
    p_value: Optional[float] = None


@dataclass(frozen=True)
class CiReport:
    """Per-feature conditional dependence with the outcome given the context."""

    entries: tuple
    k: int
    tie_seed: int
    B: int = 0
    perm_seed: Optional[int] = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for e in self.entries:
            if (e.p_value is not None) != (self.B > 0):
                raise ConfigError("p-values must be present exactly when B > 0")

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, name: str) -> FeatureCI:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def names(self) -> list:
        return [e.name for e in self.entries]

    @property
    def h_ci(self) -> dict:
        return {e.name: e.h_ci for e in self.entries}

    @property
    def p_values(self) -> Optional[dict]:
        if self.B == 0:
            return None
        return {e.name: e.p_value for e in self.entries}

    def ranked(self) -> list:
        """Entries sorted by descending ``h_ci``; ties keep column order."""
        return sorted(self.entries, key=lambda e: -e.h_ci)


def augment_domains(domains: Sequence) -> DomainDataset:
    """Pool ``(features, outcome)`` pairs and attach the domain index as context.

    >>> ds = augment_domains([(np.zeros((2, 1)), [0, 0]), (np.ones((3, 1)), [1, 1, 1])])
    >>> ds.context.tolist()
    [1.0, 1.0, 2.0, 2.0, 2.0]
    """
    if len(domains) < 1:
        raise InvalidSampleError("need at least one domain")
    blocks, outcomes, sizes = [], [], []
    names = None
    for i, (feats, out) in enumerate(domains, start=1):
        feats = feats if isinstance(feats, SampleMatrix) else SampleMatrix(feats)
        out = np.asarray(out, dtype=np.float64).ravel()
        if names is None:
            names = feats.column_names
        elif feats.column_names != names:
            raise SchemaError(f"domain {i} has columns {feats.column_names}, expected {names}")
        if out.shape[0] != len(feats):
            raise SchemaError(f"domain {i}: {out.shape[0]} outcomes for {len(feats)} rows")
        blocks.append(feats.values)
        outcomes.append(out)
        sizes.append(len(feats))
    context = np.repeat(np.arange(1, len(sizes) + 1, dtype=np.float64), sizes)
    return DomainDataset(
        SampleMatrix(np.vstack(blocks), names), np.concatenate(outcomes), context, tuple(sizes)
    )


def _check_dataset(ds: DomainDataset, cfg: EstimatorConfig):
    if ds.features.shape[1] < 1:
        raise SchemaError("dataset has no features")
    if len(ds) < cfg.k + 2:
        raise ConfigError(f"need N >= k + 2 = {cfg.k + 2} rows, got {len(ds)}")


def _feature_error(name, exc):
    err = type(exc)(f"feature {name!r}: {exc}")
    err.feature = name
    return err


def ci_strengths(ds: DomainDataset, cfg: Optional[EstimatorConfig] = None) -> CiReport:
    """Score every feature by ``ci_measure(feature, outcome, context)``."""
    cfg = cfg or EstimatorConfig()
    _check_dataset(ds, cfg)
    entries = []
    for j, name in enumerate(ds.feature_names):
        try:
            h = ci_measure(ds.features.values[:, j], ds.outcome, ds.context, cfg)
        except CopulaCDAError as exc:
            raise _feature_error(name, exc) from exc
        entries.append(FeatureCI(name, h))
    return CiReport(tuple(entries), cfg.k, cfg.tie_seed)


def _strata(context: np.ndarray) -> list:
    if not np.all(context == np.round(context)):
        raise ConfigError("permutation test needs a discrete context; got non-integer values")
    return [np.flatnonzero(context == c) for c in np.unique(context)]


def permutation_pvalues(
    ds: DomainDataset,
    cfg: Optional[EstimatorConfig] = None,
    B: int = 200,
    perm_seed: int = 0,
) -> CiReport:
    """Permutation p-values for conditional dependence given the context.

    The outcome is shuffled within each context stratum ``B`` times; the
    same shuffles are shared by all features. For each feature
    ``p = (1 + #{permuted h_ci >= observed}) / (B + 1)``.
    """
    cfg = cfg or EstimatorConfig()
    if isinstance(B, bool) or int(B) != B or B < 1:
        raise ConfigError(f"B must be a positive integer, got {B!r}")
    _check_dataset(ds, cfg)
    strata = _strata(ds.context)
    n, m = ds.features.shape

    # Ranks of a feature and of the context do not move when the outcome is
    # shuffled, so H_c(x, z) is computed once per feature. Each permuted
    # score is assembled exactly as ci_measure would on the shuffled data.
    pseudo, h_xz, observed = [], [], []
    for j, name in enumerate(ds.feature_names):
        try:
            p = rank_transform(np.column_stack([ds.features.values[:, j], ds.outcome, ds.context]), cfg.tie_seed)
            a, b, c = _ci_terms(p, cfg.k)
        except CopulaCDAError as exc:
            raise _feature_error(name, exc) from exc
        pseudo.append(p)
        h_xz.append(a)
        observed.append(a + b - c)
    z_pseudo = pseudo[0][:, 2]

    rng = np.random.default_rng(perm_seed)
    exceed = np.zeros(m, dtype=np.int64)
    y_perm = np.empty(n)
    for _ in range(int(B)):
        for idx in strata:
            y_perm[idx] = ds.outcome[rng.permutation(idx)]
        yp = _rank_column(y_perm, cfg.tie_seed, 1)
        h_yz = knn_entropy(np.column_stack([yp, z_pseudo]), cfg.k)
        for j in range(m):
            p = pseudo[j].copy()
            p[:, 1] = yp
            h = h_xz[j] + h_yz - knn_entropy(p, cfg.k)
            if h >= observed[j]:
                exceed[j] += 1

    entries = tuple(
        FeatureCI(name, observed[j], float((1 + exceed[j]) / (B + 1)))
        for j, name in enumerate(ds.feature_names)
    )
    return CiReport(entries, cfg.k, cfg.tie_seed, int(B), perm_seed)


def select_features(
    report: CiReport,
    threshold: Optional[float] = None,
    top_m: Optional[int] = None,
    alpha: Optional[float] = None,
) -> list:
    """Pick the conditionally dependent features from ``report``.

    Exactly one criterion must be given:

    * ``threshold``: features with ``h_ci > threshold``, in column order;
    * ``top_m``: the ``m`` largest ``h_ci``, descending, ties by column order;
    * ``alpha``: features with ``p_value <= alpha``, in column order.
    """
    given = [c is not None for c in (threshold, top_m, alpha)]
    if sum(given) != 1:
        raise ConfigError("give exactly one of threshold, top_m, alpha")
    if len(report) == 0:
        raise ConfigError("report is empty")
    if threshold is not None:
        return [e.name for e in report.entries if e.h_ci > threshold]
    if top_m is not None:
        if int(top_m) != top_m or top_m < 0:
            raise ConfigError(f"top_m must be a non-negative integer, got {top_m!r}")
        return [e.name for e in report.ranked()[: int(top_m)]]
    if report.B == 0:
        raise ConfigError("alpha selection needs p-values; run permutation_pvalues first")
    if not 0 <= alpha <= 1:
        raise ConfigError(f"alpha must lie in [0, 1], got {alpha}")
    return [e.name for e in report.entries if e.p_value <= alpha]
