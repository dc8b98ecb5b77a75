"""Nonparametric copula entropy estimation.

The estimator works in two steps: the sample is mapped to its empirical
copula through normalized ranks, then the differential entropy of those
pseudo-observations is estimated with a k-nearest-neighbour estimator under
the max-norm. The entropy of the copula is the negative of the total
correlation (multi-information) of the variables, so it is non-positive and
zero only under independence.

Conditional independence of ``x`` and ``y`` given a scalar ``z`` is measured
by combining three copula entropies,

    H_ci(x, y, z) = H_c(x, z) + H_c(y, z) - H_c(x, y, z),

which equals the conditional mutual information I(x; y | z). Transfer
entropy is the same quantity evaluated on lagged series.

All values are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import digamma

from .errors import (
    ConfigError,
    DimensionError,
    InvalidDataError,
    InvalidSampleError,
    ShapeError,
)

__all__ = [
    "EPS_FLOOR",
    "EstimatorConfig",
    "SampleMatrix",
    "ci_measure",
    "copula_entropy",
    "knn_entropy",
    "rank_transform",
    "transfer_entropy",
]

# Lower clamp for neighbour distances before taking logs.
EPS_FLOOR = np.finfo(np.float64).tiny * 10


@dataclass(frozen=True)
class EstimatorConfig:
    """Settings shared by every estimate.

    Parameters
    ----------
    k : int
        Neighbour count of the k-NN entropy estimator.
    tie_seed : int
        Seed for the random tie-breaking done while ranking.
    """

    k: int = 3
    tie_seed: int = 1

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)) or self.k < 1:
            raise ConfigError(f"k must be a positive integer, got {self.k!r}")
        if not isinstance(self.tie_seed, (int, np.integer)) or self.tie_seed < 0:
            raise ConfigError(f"tie_seed must be a non-negative integer, got {self.tie_seed!r}")


@dataclass(frozen=True)
class SampleMatrix:
    """N observations of d named real-valued variables."""

    values: np.ndarray
    column_names: tuple = field(default=())

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise ShapeError(f"expected a non-empty N x d array, got shape {values.shape}")
        names = tuple(self.column_names) or tuple(f"x{j + 1}" for j in range(values.shape[1]))
        if len(names) != values.shape[1]:
            raise ShapeError(f"{len(names)} column names for {values.shape[1]} columns")
        if len(set(names)) != len(names):
            raise ShapeError(f"column names must be unique: {names}")
        bad = ~np.isfinite(values)
        if bad.any():
            j = int(np.nonzero(bad.any(axis=0))[0][0])
            raise InvalidDataError(f"column {names[j]!r} contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "column_names", names)

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __len__(self):
        return self.values.shape[0]

    @property
    def shape(self):
        return self.values.shape

    def column(self, name: str) -> np.ndarray:
        try:
            return self.values[:, self.column_names.index(name)]
        except ValueError:
            raise KeyError(name) from None

    def select(self, names: Sequence[str]) -> "SampleMatrix":
        idx = [self.column_names.index(n) for n in names]
        return SampleMatrix(self.values[:, idx], tuple(names))


def _as_2d(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ShapeError(f"expected a 1-D or 2-D array, got {x.ndim} dimensions")
    return x


def _rank_column(col: np.ndarray, tie_seed: int, j: int) -> np.ndarray:
    # Ties are broken by an independent random key per column, so the
    # tie order of column j depends only on (tie_seed, j) and its values.
    n = col.shape[0]
    order = np.argsort(col, kind="stable")
    srt = col[order]
    if np.any(srt[1:] == srt[:-1]):
        key = np.random.default_rng([tie_seed, j]).random(n)
        order = np.lexsort((key, col))
    ranks = np.empty(n, dtype=np.float64)
    ranks[order] = np.arange(1, n + 1)
    return ranks / n


def rank_transform(x, tie_seed: int = 1) -> np.ndarray:
    """Map a sample to pseudo-observations of its empirical copula.

    Each column is replaced by ``rank / N``; tied entries receive their
    ranks in a random order drawn from ``tie_seed``, so every output column
    is a permutation of ``{1/N, ..., N/N}``.

    Parameters
    ----------
    x : array_like, shape (N,) or (N, d)
    tie_seed : int

    Returns
    -------
    ndarray, shape (N, d)
    """
    x = _as_2d(x)
    n, d = x.shape
    if n < 2:
        raise InvalidSampleError(f"need at least 2 observations, got {n}")
    if not np.all(np.isfinite(x)):
        raise InvalidDataError("sample contains non-finite values")
    out = np.empty_like(x)
    for j in range(d):
        out[:, j] = _rank_column(x[:, j], tie_seed, j)
    return out


def knn_entropy(points, k: int = 3) -> float:
    """k-nearest-neighbour estimate of differential entropy (nats).

    Uses the max-norm with ``eps_i`` equal to twice the distance from point
    ``i`` to its k-th neighbour (self excluded)::

        H = -psi(k) + psi(N) + d/N * sum(log eps_i)

    With this convention the unit-ball volume term vanishes.
    """
    p = _as_2d(points)
    n, d = p.shape
    if n < 2:
        raise InvalidSampleError(f"need at least 2 points, got {n}")
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= n - 1:
        raise ConfigError(f"k must satisfy 1 <= k <= N-1 = {n - 1}, got {k}")
    if not np.all(np.isfinite(p)):
        raise InvalidDataError("points contain non-finite values")
    k = int(k)
    dist, _ = cKDTree(p).query(p, k=k + 1, p=np.inf)
    eps = np.maximum(2.0 * dist[:, k], EPS_FLOOR)
    # fsum makes the result independent of row order
    return float(-digamma(k) + digamma(n) + d * math.fsum(np.log(eps)) / n)


def copula_entropy(x, cfg: EstimatorConfig | None = None) -> float:
    """Estimate the copula entropy of a multivariate sample.

    The returned value estimates the entropy of the copula density itself,
    i.e. minus the total correlation of the columns. It is reported raw and
    may come out slightly positive under independence.

    Parameters
    ----------
    x : array_like, shape (N, d), d >= 2
    cfg : EstimatorConfig, optional

    Returns
    -------
    float
        Copula entropy in nats.
    """
    cfg = cfg or EstimatorConfig()
    x = _as_2d(x)
    if x.shape[1] < 2:
        raise DimensionError("copula entropy needs at least two variables")
    return knn_entropy(rank_transform(x, cfg.tie_seed), cfg.k)


def _column(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.ndim == 2 and v.shape[1] == 1:
        v = v[:, 0]
    if v.ndim != 1:
        raise DimensionError(f"{name} must be a single column, got shape {v.shape}")
    return v


def _ci_terms(pseudo: np.ndarray, k: int) -> tuple[float, float, float]:
    # pseudo holds already-ranked (x, y, z) columns.
    h_xz = knn_entropy(pseudo[:, [0, 2]], k)
    h_yz = knn_entropy(pseudo[:, [1, 2]], k)
    h_xyz = knn_entropy(pseudo, k)
    return h_xz, h_yz, h_xyz


def ci_measure(x, y, z, cfg: EstimatorConfig | None = None) -> float:
    """Conditional independence strength of ``x`` and ``y`` given ``z``.

    Computes ``H_c(x, z) + H_c(y, z) - H_c(x, y, z)``. The three columns are
    ranked once, as the triple ``(x, y, z)``, and each copula entropy term
    is evaluated on the matching pseudo-observation columns. The value
    estimates I(x; y | z); it is near zero under conditional independence
    and can be slightly negative from estimation noise.
    """
    cfg = cfg or EstimatorConfig()
    x, y, z = _column(x, "x"), _column(y, "y"), _column(z, "z")
    n = x.shape[0]
    if y.shape[0] != n or z.shape[0] != n:
        raise ShapeError(f"length mismatch: x={n}, y={y.shape[0]}, z={z.shape[0]}")
    if n < cfg.k + 2:
        raise ConfigError(f"need N >= k + 2 = {cfg.k + 2} observations, got {n}")
    pseudo = rank_transform(np.column_stack([x, y, z]), cfg.tie_seed)
    h_xz, h_yz, h_xyz = _ci_terms(pseudo, cfg.k)
    return h_xz + h_yz - h_xyz


def transfer_entropy(x, y, lag: int = 1, cfg: EstimatorConfig | None = None) -> float:
    """Transfer entropy from series ``x`` to series ``y`` at ``lag``.

    Evaluated as ``ci_measure(y[t], x[t - lag], y[t - lag])`` over the
    ``T - lag`` aligned triples.
    """
    cfg = cfg or EstimatorConfig()
    x, y = _column(x, "x"), _column(y, "y")
    t = x.shape[0]
    if y.shape[0] != t:
        raise ShapeError(f"series lengths differ: {t} vs {y.shape[0]}")
    if isinstance(lag, bool) or int(lag) != lag or lag < 1:
        raise ConfigError(f"lag must be a positive integer, got {lag!r}")
    if lag >= t:
        raise ConfigError(f"lag {lag} must be smaller than the series length {t}")
    if t - lag < cfg.k + 2:
        raise ConfigError(f"only {t - lag} aligned triples for k={cfg.k}")
    lag = int(lag)
    return ci_measure(y[lag:], x[:-lag], y[:-lag], cfg)
